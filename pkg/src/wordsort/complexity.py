"""Complexity functions counting factors up to an equivalence.

Every count here goes through :func:`count_classes`: factors are bucketed
by a key function.  Sorting gives abelian complexity, k-fold tortoise gives
k-tortoise complexity, and the one-short-of-sorted word gives the nearly
abelian variant.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import word_ops
from .factor_enum import DEFAULT_POLICY, StabilizationPolicy, stable_factors
from .sequences import InfiniteWord, paperfolding
from .word_ops import Word, format_word

KINDS = ("factor", "abelian", "tortoise", "nearly_abelian")


def _identity(w: Word) -> Word:
    return w


def key_function(kind: str, k: int = 1) -> Callable[[Word], Word]:
    if kind == "factor":
        return _identity
    if kind == "abelian":
        return word_ops.sort
    if kind == "tortoise":
        if k < 1:
            raise ValueError("k must be positive")
        return lambda w: word_ops.canonical_key(w, k)
    if kind == "nearly_abelian":
        return word_ops.nearly_abelian_key
    raise ValueError(f"unknown complexity kind {kind!r}")


def buckets(
    x: InfiniteWord, n: int, key: Callable[[Word], Word], policy: StabilizationPolicy = DEFAULT_POLICY
) -> dict[Word, list[Word]]:
    groups: dict[Word, list[Word]] = {}
    for w in stable_factors(x, n, policy).sorted_factors():
        groups.setdefault(key(w), []).append(w)
    return groups


def count_classes(
    x: InfiniteWord, n: int, key: Callable[[Word], Word], policy: StabilizationPolicy = DEFAULT_POLICY
) -> int:
    return len(buckets(x, n, key, policy))


def rho(x: InfiniteWord, n: int, policy: StabilizationPolicy = DEFAULT_POLICY) -> int:
    return len(stable_factors(x, n, policy))


def rho_ab(x: InfiniteWord, n: int, policy: StabilizationPolicy = DEFAULT_POLICY) -> int:
    return count_classes(x, n, word_ops.sort, policy)


def rho_tortoise(x: InfiniteWord, n: int, k: int = 1, policy: StabilizationPolicy = DEFAULT_POLICY) -> int:
    return count_classes(x, n, key_function("tortoise", k), policy)


def rho_nearly_ab(x: InfiniteWord, n: int, policy: StabilizationPolicy = DEFAULT_POLICY) -> int:
    return count_classes(x, n, word_ops.nearly_abelian_key, policy)


def complexity(
    x: InfiniteWord, n: int, kind: str, k: int = 1, policy: StabilizationPolicy = DEFAULT_POLICY
) -> int:
    return count_classes(x, n, key_function(kind, k), policy)


@dataclass(frozen=True)
class ComplexityTable:
    sequence: str
    kind: str
    k: int | None
    rows: dict[int, int]
    prefix_lengths: dict[int, int]

    def values(self) -> list[int]:
        return [self.rows[n] for n in sorted(self.rows)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "count", "prefix_length"])
        for n in sorted(self.rows):
            writer.writerow([n, self.rows[n], self.prefix_lengths[n]])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {
                "sequence": self.sequence,
                "kind": self.kind,
                "k": self.k,
                "rows": [
                    {"n": n, "count": self.rows[n], "prefix_length": self.prefix_lengths[n]}
                    for n in sorted(self.rows)
                ],
            },
            indent=2,
        )


def complexity_table(
    x: InfiniteWord,
    kind: str,
    ns: Iterable[int],
    k: int = 1,
    policy: StabilizationPolicy = DEFAULT_POLICY,
) -> ComplexityTable:
    key = key_function(kind, k)
    rows, lengths = {}, {}
    for n in ns:
        rows[n] = count_classes(x, n, key, policy)
        lengths[n] = stable_factors(x, n, policy).prefix_length_used
    return ComplexityTable(x.name, kind, k if kind == "tortoise" else None, rows, lengths)


@dataclass(frozen=True)
class AgreementStat:
    """abel_x(k): the last n up to which k-tortoise and abelian counts agree.

    ``value`` is None when no disagreement was found up to ``n_max``.
    """

    k: int
    value: int | None
    n_max: int

    @property
    def agrees_throughout(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        if self.value is None:
            return f"no disagreement up to {self.n_max}"
        return str(self.value)


def abel_stat(
    x: InfiniteWord, k: int, n_max: int = 40, policy: StabilizationPolicy = DEFAULT_POLICY
) -> AgreementStat:
    if k < 1 or n_max < 1:
        raise ValueError("abel_stat needs k >= 1 and n_max >= 1")
    key = key_function("tortoise", k)
    for n in range(1, n_max + 1):
        if count_classes(x, n, key, policy) != rho_ab(x, n, policy):
            return AgreementStat(k, n - 1, n_max)
    return AgreementStat(k, None, n_max)


class ThresholdNotFound(RuntimeError):
    pass


@dataclass(frozen=True)
class Threshold:
    """s(k) for the paperfolding word, verified only on [value, n_max]."""

    k: int
    value: int
    n_max: int

    def __str__(self) -> str:
        return str(self.value)


def pf_threshold(k: int, n_max: int = 40, policy: StabilizationPolicy = DEFAULT_POLICY) -> Threshold:
    if k < 1:
        raise ValueError("k must be positive")
    f = paperfolding()
    key = key_function("tortoise", k)
    s = None
    for n in range(n_max, 0, -1):
        if count_classes(f, n, key, policy) != 4 * n:
            break
        s = n
    if s is None:
        raise ThresholdNotFound(f"rho_f^t({k}) differs from 4n at n_max={n_max}")
    return Threshold(k, s, n_max)


@dataclass(frozen=True)
class ClassReport:
    n: int
    k: int
    classes: list[list[Word]]
    # nontrivial classes as (word, first position) pairs
    nontrivial_classes: list[list[tuple[Word, int]]] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "k": self.k,
                "class_count": len(self.classes),
                "classes": [[format_word(w) for w in c] for c in self.classes],
                "nontrivial_classes": [
                    [{"word": format_word(w), "first_position": p} for w, p in c]
                    for c in self.nontrivial_classes
                ],
            },
            indent=2,
        )


def class_report(
    x: InfiniteWord, n: int, k: int = 1, policy: StabilizationPolicy = DEFAULT_POLICY
) -> ClassReport:
    if k < 1:
        raise ValueError("k must be positive")
    fs = stable_factors(x, n, policy)
    groups = buckets(x, n, key_function("tortoise", k), policy)
    classes = [groups[key] for key in sorted(groups)]
    nontrivial = [[(w, fs.first_positions[w]) for w in c] for c in classes if len(c) > 1]
    return ClassReport(n, k, classes, nontrivial)


def nontrivial_pairs(x: InfiniteWord, n: int, policy: StabilizationPolicy = DEFAULT_POLICY) -> list[tuple[Word, Word]]:
    """All unordered pairs of distinct tortoise-equivalent length-n factors."""
    pairs = []
    for c in class_report(x, n, 1, policy).classes:
        pairs.extend((c[i], c[j]) for i in range(len(c)) for j in range(i + 1, len(c)))
    return pairs


def longest_common_suffix(a: Sequence[int], b: Sequence[int]) -> Word:
    i = 0
    while i < min(len(a), len(b)) and a[-1 - i] == b[-1 - i]:
        i += 1
    return tuple(a[len(a) - i:])
