"""Bounded-range checks of the tortoise-complexity theorems by enumeration.

Each verifier scans an explicit range of factor lengths and returns a
:class:`VerificationReport`.  Nothing here proves a statement for all n;
reports always carry the range that was checked.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Any, Sequence

from . import complexity as cx
from .factor_enum import (
    PURE_DOUBLING,
    StabilizationPolicy,
    is_left_special,
    rho_t_recurrence,
    special_factors,
    stable_factors,
)
from .sequences import InfiniteWord, paperfolding, thue_morse
from .word_ops import Word, format_word


@dataclass
class VerificationReport:
    theorem: str
    sequence: str
    n_range: tuple[int, int]
    prefix_lengths: dict[int, int] = field(default_factory=dict)
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    @property
    def outcome(self) -> str:
        return "pass" if self.passed else "fail"

    def fail(self, n: int, reason: str, **details: Any) -> None:
        self.witnesses.append({"n": n, "reason": reason, **details})

    def to_dict(self) -> dict[str, Any]:
        return {
            "theorem": self.theorem,
            "sequence": self.sequence,
            "n_range": list(self.n_range),
            "outcome": self.outcome,
            "prefix_lengths": {str(n): L for n, L in sorted(self.prefix_lengths.items())},
            "witnesses": self.witnesses,
            "summary": self.summary,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lo, hi = self.n_range
        lines = [f"{self.theorem} on {self.sequence}, n={lo}..{hi}: {self.outcome.upper()}"]
        if self.prefix_lengths:
            lines.append(f"  prefix length used: up to {max(self.prefix_lengths.values())}")
        for key, value in self.summary.items():
            lines.append(f"  {key}: {value}")
        for w in self.witnesses:
            extra = ", ".join(f"{k}={v}" for k, v in w.items() if k not in ("n", "reason"))
            lines.append(f"  FAIL n={w['n']}: {w['reason']}" + (f" ({extra})" if extra else ""))
        return "\n".join(lines)


def _positioned(words: Sequence[Word], fs) -> list[dict[str, Any]]:
    return [{"word": format_word(w), "position": fs.first_positions[w]} for w in words]


def verify_pf_injectivity(n_lo: int, n_hi: int, policy: StabilizationPolicy = PURE_DOUBLING) -> VerificationReport:
    """Every tortoise class of length-n paperfolding factors is a singleton."""
    f = paperfolding()
    report = VerificationReport("pf-injectivity", "f", (n_lo, n_hi))
    for n in range(n_lo, n_hi + 1):
        fs = stable_factors(f, n, policy)
        report.prefix_lengths[n] = fs.prefix_length_used
        for c in cx.class_report(f, n, 1, policy).classes:
            if len(c) > 1:
                report.fail(n, "distinct tortoise-equivalent factors", words=_positioned(c, fs))
    return report


def verify_pf_rho_formula(n_lo: int, n_hi: int, policy: StabilizationPolicy = PURE_DOUBLING) -> VerificationReport:
    f = paperfolding()
    report = VerificationReport("pf-rho", "f", (n_lo, n_hi))
    rho_ok = tortoise_ok = True
    for n in range(n_lo, n_hi + 1):
        report.prefix_lengths[n] = stable_factors(f, n, policy).prefix_length_used
        r = cx.rho(f, n, policy)
        rt = cx.rho_tortoise(f, n, 1, policy)
        if r != 4 * n:
            rho_ok = False
            report.fail(n, "rho_f(n) != 4n", half="rho", value=r, expected=4 * n)
        if rt != 4 * n:
            tortoise_ok = False
            report.fail(n, "rho_f^t(n) != 4n", half="tortoise", value=rt, expected=4 * n)
    report.summary["rho half"] = "pass" if rho_ok else "fail"
    report.summary["tortoise half"] = "pass" if tortoise_ok else "fail"
    return report


def _tm_policy(n_hi: int, policy: StabilizationPolicy) -> StabilizationPolicy:
    # keep the named counter positions (< 2^(m+1) + 2^m + n) inside the scanned prefix
    if n_hi < 4:
        return policy
    m = (n_hi - 3).bit_length()
    return replace(policy, min_initial=max(policy.min_initial, 4 * 2 ** (m + 1)))


def verify_tm_class_structure(n_lo: int, n_hi: int, policy: StabilizationPolicy = PURE_DOUBLING) -> VerificationReport:
    """Nontrivial tortoise classes of Thue-Morse factors are {01y, 10y}, y left special."""
    if n_lo < 9:
        raise ValueError("class structure holds from n = 9")
    t = thue_morse()
    policy = _tm_policy(n_hi, policy)
    report = VerificationReport("tm-classes", "t", (n_lo, n_hi))
    counts = {}
    for n in range(n_lo, n_hi + 1):
        fs = stable_factors(t, n, policy)
        report.prefix_lengths[n] = fs.prefix_length_used
        nontrivial = [c for c in cx.class_report(t, n, 1, policy).classes if len(c) > 1]
        counts[n] = len(nontrivial)
        for c in nontrivial:
            if len(c) != 2:
                report.fail(n, "class with more than two members", words=_positioned(c, fs))
                continue
            a, b = c
            y = a[2:]
            if b[2:] != y or {a[:2], b[:2]} != {(0, 1), (1, 0)}:
                report.fail(n, "class not of the form {01y, 10y}", words=_positioned(c, fs))
            elif not is_left_special(t, y, policy):
                report.fail(n, "y not left special", words=_positioned(c, fs), y=format_word(y))
        gap = len(fs) - cx.rho_tortoise(t, n, 1, policy)
        if gap != counts[n]:
            report.fail(n, "merged-word count disagrees with class count", gap=gap, classes=counts[n])
    report.summary["nontrivial classes per n"] = counts
    return report


@dataclass(frozen=True)
class CounterPositions:
    n: int
    m: int
    b1b2: str
    positions: tuple[int, int, int, int]
    words: tuple[Word, Word, Word, Word]

    @property
    def relevant(self) -> tuple[int, ...]:
        """Indices (0-based) of the counter words the theorem names for this n."""
        return (0, 1, 2, 3) if self.b1b2 == "10" else (0, 3)


def tm_counter_words(n: int) -> CounterPositions:
    if n < 11:
        raise ValueError("counter positions are defined for n >= 11")
    bits = bin(n - 3)[2:]
    m = len(bits)
    base = 2 ** (m + 1)
    positions = (
        base - 2,
        base + 2 ** (m - 1) - 2,
        base + 2 ** (m - 1) + 2 ** (m - 2) - 2,
        base + 2 ** m - 2,
    )
    data = thue_morse().prefix(positions[-1] + n)
    words = tuple(data[p:p + n] for p in positions)
    return CounterPositions(n, m, bits[:2], positions, words)  # type: ignore[arg-type]


def verify_tm_counters(n_lo: int, n_hi: int, policy: StabilizationPolicy = PURE_DOUBLING) -> VerificationReport:
    """Each nontrivial tortoise class on t contains one of the named counter words."""
    if n_lo < 11:
        raise ValueError("counter positions are defined for n >= 11")
    t = thue_morse()
    policy = _tm_policy(n_hi, policy)
    report = VerificationReport("tm-counters", "t", (n_lo, n_hi))
    for n in range(n_lo, n_hi + 1):
        fs = stable_factors(t, n, policy)
        report.prefix_lengths[n] = fs.prefix_length_used
        cp = tm_counter_words(n)
        allowed = {cp.words[i] for i in cp.relevant}
        nontrivial = [c for c in cx.class_report(t, n, 1, policy).classes if len(c) > 1]
        for c in nontrivial:
            hits = [w for w in c if w in allowed]
            if len(c) != 2 or not hits:
                report.fail(n, "nontrivial class without a counter word", b1b2=cp.b1b2, words=_positioned(c, fs))
        in_nontrivial = {w for c in nontrivial for w in c}
        for i in cp.relevant:
            if cp.words[i] not in in_nontrivial:
                report.fail(n, f"counter{i + 1} is in a singleton class", position=cp.positions[i])
        # each two-word class lowers the count by one
        expected_classes = 4 if cp.b1b2 == "10" else 2
        if len(nontrivial) != expected_classes:
            report.fail(n, "unexpected number of nontrivial classes", classes=len(nontrivial), b1b2=cp.b1b2)
    return report


def verify_tm_rho_formula(n_lo: int, n_hi: int, policy: StabilizationPolicy = PURE_DOUBLING) -> VerificationReport:
    """rho_t^t(n) = rho_t(n) - 4 when n-3 starts 10 in binary, else rho_t(n) - 2."""
    if n_lo < 10:
        raise ValueError("the formula holds from n = 10")
    t = thue_morse()
    report = VerificationReport("tm-rho", "t", (n_lo, n_hi))
    for n in range(n_lo, n_hi + 1):
        report.prefix_lengths[n] = stable_factors(t, n, policy).prefix_length_used
        r = cx.rho(t, n, policy)
        if r != rho_t_recurrence(n):
            report.fail(n, "enumerated rho_t disagrees with the recurrence", value=r, expected=rho_t_recurrence(n))
        drop = 4 if bin(n - 3)[2:4] == "10" else 2
        rt = cx.rho_tortoise(t, n, 1, policy)
        if rt != r - drop:
            report.fail(n, f"rho_t^t(n) != rho_t(n) - {drop}", value=rt, expected=r - drop)
    return report


def lemma1_suffix(w: Word, v: Word) -> Word:
    """zv for a tortoise-equivalent pair w = u·v, w' = u'·v.

    The split is at the second 1 (both words have it at the same index);
    z is the longest common suffix of the two heads.
    """
    ones = [i for i, s in enumerate(w) if s == 1]
    split = ones[1] if len(ones) > 1 else len(w)
    u, u2, tail = w[:split], v[:split], w[split:]
    return cx.longest_common_suffix(u, u2) + tail


def verify_left_special_lemma(
    x: InfiniteWord, n_lo: int, n_hi: int, policy: StabilizationPolicy = PURE_DOUBLING
) -> VerificationReport:
    report = VerificationReport("lemma1", x.name, (n_lo, n_hi))
    pairs_checked = 0
    for n in range(max(n_lo, 1), n_hi + 1):
        fs = stable_factors(x, n, policy)
        report.prefix_lengths[n] = fs.prefix_length_used
        for w, v in cx.nontrivial_pairs(x, n, policy):
            if 1 not in w or 1 not in v:
                continue
            pairs_checked += 1
            zv = lemma1_suffix(w, v)
            if not is_left_special(x, zv, policy):
                report.fail(n, "zv not left special", words=_positioned((w, v), fs), zv=format_word(zv))
    report.summary["pairs checked"] = pairs_checked
    return report


def verify_sandwich(
    x: InfiniteWord, n_lo: int, n_hi: int, policy: StabilizationPolicy = PURE_DOUBLING
) -> VerificationReport:
    report = VerificationReport("sandwich", x.name, (n_lo, n_hi))
    gaps = {}
    for n in range(n_lo, n_hi + 1):
        report.prefix_lengths[n] = stable_factors(x, n, policy).prefix_length_used
        r, rt, ra = cx.rho(x, n, policy), cx.rho_tortoise(x, n, 1, policy), cx.rho_ab(x, n, policy)
        if not ra <= rt <= r:
            report.fail(n, "rho_ab <= rho_t <= rho violated", rho=r, rho_t=rt, rho_ab=ra)
        gaps[n] = r - rt
    report.summary["gaps"] = gaps
    report.summary["empirical C"] = max(gaps.values(), default=0)
    return report


def verify_tm_left_special_counts(n_lo: int, n_hi: int, policy: StabilizationPolicy = PURE_DOUBLING) -> VerificationReport:
    """Left special factor counts of t against the de Luca-Varricchio formula."""
    t = thue_morse()
    report = VerificationReport("tm-left-special", "t", (n_lo, n_hi))
    for n in range(max(n_lo, 2), n_hi + 1):
        report.prefix_lengths[n] = stable_factors(t, n + 1, policy).prefix_length_used
        count = len(special_factors(t, n, policy).left_special)
        expected = 4 if n <= 3 * 2 ** ((n - 1).bit_length() - 2) else 2
        if count != expected:
            report.fail(n, "left special count", value=count, expected=expected)
    return report


SUITE_MIN_N = {
    "pf-inj": 8,
    "pf-rho": 8,
    "tm-classes": 9,
    "tm-counters": 11,
    "tm-rho": 10,
    "lemma1": 1,
    "sandwich": 1,
}
SUITES = tuple(SUITE_MIN_N)


def run_suite(suite: str, n_lo: int, n_hi: int, policy: StabilizationPolicy = PURE_DOUBLING) -> list[VerificationReport]:
    """Run one named suite over exactly ``n_lo..n_hi``, or every suite with ``all``.

    Under ``all`` each suite's lower bound is raised to its own minimum and
    suites whose range becomes empty are skipped.
    """
    if suite == "all":
        reports = []
        for name in SUITES:
            lo = max(n_lo, SUITE_MIN_N[name])
            if lo <= n_hi:
                reports.extend(run_suite(name, lo, n_hi, policy))
        return reports
    if suite not in SUITE_MIN_N:
        raise ValueError(f"unknown suite {suite!r}")
    lo = n_lo
    if suite == "pf-inj":
        return [verify_pf_injectivity(lo, n_hi, policy)]
    if suite == "pf-rho":
        return [verify_pf_rho_formula(lo, n_hi, policy)]
    if suite == "tm-classes":
        return [verify_tm_class_structure(lo, n_hi, policy)]
    if suite == "tm-counters":
        return [verify_tm_counters(lo, n_hi, policy)]
    if suite == "tm-rho":
        return [verify_tm_rho_formula(lo, n_hi, policy)]
    if suite == "lemma1":
        return [verify_left_special_lemma(x, lo, n_hi, policy) for x in (paperfolding(), thue_morse())]
    return [verify_sandwich(x, lo, n_hi, policy) for x in (paperfolding(), thue_morse())]
