"""Distinct factors of sequence prefixes, Parikh vectors, special factors."""

from __future__ import annotations

import json
import threading
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .sequences import InfiniteWord
from .word_ops import Word, format_word


class ResourceCapError(RuntimeError):
    """Raised when a factor set does not stabilize below the prefix-length cap."""


@dataclass(frozen=True)
class StabilizationPolicy:
    """How long a prefix to scan before trusting a factor set.

    The prefix starts at ``max(min_initial, per_symbol * n)`` and doubles
    until the factor count is unchanged across ``window`` consecutive
    doublings.  With ``use_closed_form`` the scan may stop as soon as the
    count reaches a known closed-form value for the sequence.
    """

    min_initial: int = 1024
    per_symbol: int = 64
    window: int = 2
    max_length: int = 1 << 24
    use_closed_form: bool = True

    def initial(self, n: int) -> int:
        return max(self.min_initial, self.per_symbol * n)


DEFAULT_POLICY = StabilizationPolicy()
PURE_DOUBLING = StabilizationPolicy(use_closed_form=False)


@dataclass(frozen=True)
class FactorSet:
    factor_length: int
    prefix_length_used: int
    # factor -> first starting index, in the sequence's own indexing
    first_positions: dict[Word, int] = field(hash=False)

    @property
    def factors(self) -> frozenset[Word]:
        return frozenset(self.first_positions)

    def __len__(self) -> int:
        return len(self.first_positions)

    def __contains__(self, w) -> bool:
        return tuple(w) in self.first_positions

    def sorted_factors(self) -> list[Word]:
        return sorted(self.first_positions)

    def to_text(self) -> str:
        return "".join(format_word(w) + "\n" for w in self.sorted_factors())

    def to_json(self) -> str:
        return json.dumps(
            {
                "factor_length": self.factor_length,
                "prefix_length": self.prefix_length_used,
                "factors": [
                    {"word": format_word(w), "first_position": self.first_positions[w]}
                    for w in self.sorted_factors()
                ],
            },
            indent=2,
        )


@dataclass(frozen=True)
class SpecialFactorReport:
    factor_length: int
    left_special: frozenset[Word]
    right_special: frozenset[Word]


def _scan(symbols: Sequence[int], n: int, offset: int) -> dict[Word, int]:
    if n == 0:
        return {(): offset}
    first: dict[bytes, int] = {}
    if max(symbols, default=0) < 256:
        data = bytes(symbols)
        for i in range(len(data) - n + 1):
            first.setdefault(data[i:i + n], i)
        return {tuple(k): i + offset for k, i in first.items()}
    seen: dict[Word, int] = {}
    for i in range(len(symbols) - n + 1):
        seen.setdefault(tuple(symbols[i:i + n]), i + offset)
    return seen


def factors(x: InfiniteWord, n: int, length: int) -> FactorSet:
    """Distinct length-``n`` windows of the length-``length`` prefix of ``x``."""
    if n < 0:
        raise ValueError("factor length must be non-negative")
    if length < n:
        raise ValueError(f"prefix length {length} shorter than factor length {n}")
    return FactorSet(n, length, _scan(x.prefix(length), n, x.index_base))


def rho_t_recurrence(n: int) -> int:
    """Thue-Morse factor complexity from the Brlek / de Luca-Varricchio recurrences."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n <= 3:
        return (1, 2, 4, 6)[n]
    half, odd = divmod(n, 2)
    if odd:
        return 2 * rho_t_recurrence(half + 1)
    return rho_t_recurrence(half) + rho_t_recurrence(half + 1)


def closed_form_count(x: InfiniteWord, n: int) -> int | None:
    """Known factor count for the built-in sequences, else None."""
    kind = getattr(x, "closed_form", None)
    if kind == "paperfolding" and n >= 7:
        return 4 * n
    if kind == "thue_morse":
        return rho_t_recurrence(n)
    return None


_cache: dict[tuple[int, int, StabilizationPolicy], tuple[InfiniteWord, FactorSet]] = {}
_cache_lock = threading.Lock()


def stable_factors(x: InfiniteWord, n: int, policy: StabilizationPolicy = DEFAULT_POLICY) -> FactorSet:
    """Factor set of length ``n`` from a prefix long enough to have stabilized."""
    key = (id(x), n, policy)
    with _cache_lock:
        hit = _cache.get(key)
    if hit is not None and hit[0] is x:
        return hit[1]

    target = closed_form_count(x, n) if policy.use_closed_form else None
    length = max(policy.initial(n), n)
    fs = factors(x, n, length)
    stable = 0
    while target is None or len(fs) != target:
        if stable >= policy.window:
            break
        length *= 2
        if length > policy.max_length:
            raise ResourceCapError(
                f"{x.name}: length-{n} factors not stable within prefix length {policy.max_length}"
            )
        grown = factors(x, n, length)
        stable = stable + 1 if len(grown) == len(fs) else 0
        fs = grown

    with _cache_lock:
        _cache[key] = (x, fs)
    return fs


def parikh(w: Sequence[int], alphabet_size: int | None = None) -> dict[int, int]:
    """Per-symbol counts; with ``alphabet_size`` every symbol gets an entry."""
    counts = Counter(w)
    if alphabet_size is None:
        return dict(sorted(counts.items()))
    return {a: counts.get(a, 0) for a in range(alphabet_size)}


def special_factors(
    x: InfiniteWord, n: int, policy: StabilizationPolicy = DEFAULT_POLICY
) -> SpecialFactorReport:
    if n < 1:
        raise ValueError("special factors need n >= 1")
    longer = stable_factors(x, n + 1, policy).first_positions
    left: dict[Word, set[int]] = {}
    right: dict[Word, set[int]] = {}
    for w in longer:
        left.setdefault(w[1:], set()).add(w[0])
        right.setdefault(w[:-1], set()).add(w[-1])
    return SpecialFactorReport(
        n,
        frozenset(w for w, ext in left.items() if len(ext) >= 2),
        frozenset(w for w, ext in right.items() if len(ext) >= 2),
    )


def is_left_special(x: InfiniteWord, w: Sequence[int], policy: StabilizationPolicy = DEFAULT_POLICY) -> bool:
    w = tuple(w)
    longer = stable_factors(x, len(w) + 1, policy)
    return sum((a,) + w in longer for a in range(x.alphabet_size)) >= 2


def prefix_occurs_once(x: InfiniteWord, n: int, policy: StabilizationPolicy = DEFAULT_POLICY) -> bool:
    """Whether the length-``n`` prefix of ``x`` occurs only at the start of the scanned prefix."""
    fs = stable_factors(x, n, policy)
    data = x.prefix(fs.prefix_length_used)
    head = data[:n]
    return not any(data[i:i + n] == head for i in range(1, len(data) - n + 1))
