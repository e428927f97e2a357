"""Defant-Kravitz stack-sorting operators on finite words.

Words are tuples of non-negative integers.  Any sequence of ints (or a digit
string, via :func:`parse_word`) is accepted as input; results are tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Word = tuple[int, ...]


class IterationCapError(RuntimeError):
    """Raised when tortoise iteration fails to sort within the ℓ(w)² guard."""


@dataclass(frozen=True)
class BlockDecomposition:
    max_symbol: int
    occurrence_count: int
    blocks: tuple[Word, ...]

    def join(self) -> Word:
        out: list[int] = list(self.blocks[0])
        for block in self.blocks[1:]:
            out.append(self.max_symbol)
            out.extend(block)
        return tuple(out)


def parse_word(text: str) -> Word:
    """Parse a digit string (``"0110"``) or comma-separated ints (``"10,3"``)."""
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        try:
            symbols = tuple(int(part) for part in text.split(","))
        except ValueError:
            raise ValueError(f"not a comma-separated word: {text!r}") from None
        if any(s < 0 for s in symbols):
            raise ValueError(f"negative symbol in {text!r}")
        return symbols
    if not text.isdigit() or not text.isascii():
        raise ValueError(f"not a digit string: {text!r}")
    return tuple(int(ch) for ch in text)


def format_word(w: Sequence[int]) -> str:
    if all(s < 10 for s in w):
        return "".join(map(str, w))
    return ",".join(map(str, w))


def decompose_by_max(w: Sequence[int]) -> BlockDecomposition:
    """Split ``w`` as A_1 n A_2 n ... n A_{k+1} around its largest symbol n."""
    if len(w) == 0:
        raise ValueError("cannot decompose the empty word")
    n = max(w)
    blocks: list[Word] = []
    start = 0
    for i, s in enumerate(w):
        if s == n:
            blocks.append(tuple(w[start:i]))
            start = i + 1
    blocks.append(tuple(w[start:]))
    return BlockDecomposition(n, len(blocks) - 1, tuple(blocks))


# Both operators are a single pass of the word through a stack.  hare lets
# equal symbols pile up; tortoise pops the top when an equal symbol arrives.
# The recursive definitions below are the reference they are tested against.

def _stack_pass(w: Sequence[int], pop_on_equal: bool) -> Word:
    stack: list[int] = []
    out: list[int] = []
    for c in w:
        if pop_on_equal:
            while stack and stack[-1] <= c:
                out.append(stack.pop())
        else:
            while stack and stack[-1] < c:
                out.append(stack.pop())
        stack.append(c)
    out.extend(reversed(stack))
    return tuple(out)


def hare(w: Sequence[int]) -> Word:
    """hare(A_1 n ... n A_{k+1}) = hare(A_1) ... hare(A_{k+1}) n^k."""
    return _stack_pass(w, pop_on_equal=False)


def tortoise(w: Sequence[int]) -> Word:
    """Like hare, but only the first n is moved: A_1 A_2 n A_3 ... n A_{k+1} n, recursively.

    On a binary word containing a 1 this moves the first 1 to the end.
    """
    return _stack_pass(w, pop_on_equal=True)


def hare_recursive(w: Sequence[int]) -> Word:
    if len(w) == 0:
        return ()
    d = decompose_by_max(w)
    out: list[int] = []
    for block in d.blocks:
        out.extend(hare_recursive(block))
    out.extend([d.max_symbol] * d.occurrence_count)
    return tuple(out)


def tortoise_recursive(w: Sequence[int]) -> Word:
    if len(w) == 0:
        return ()
    d = decompose_by_max(w)
    n = d.max_symbol
    out = list(tortoise_recursive(d.blocks[0])) + list(tortoise_recursive(d.blocks[1]))
    for block in d.blocks[2:]:
        out.append(n)
        out.extend(tortoise_recursive(block))
    out.append(n)
    return tuple(out)


def iterate_tortoise(w: Sequence[int], k: int) -> Word:
    if k < 0:
        raise ValueError("iteration count must be non-negative")
    w = tuple(w)
    for _ in range(k):
        w = tortoise(w)
    return w


def sort(w: Sequence[int]) -> Word:
    return tuple(sorted(w))


def tortoise_sort_index(w: Sequence[int]) -> int:
    """Least j >= 0 such that j applications of tortoise sort ``w``."""
    w = tuple(w)
    target = sort(w)
    cap = len(w) ** 2
    for j in range(cap + 1):
        if w == target:
            return j
        w = tortoise(w)
    raise IterationCapError(f"word not sorted after {cap} tortoise steps")


def canonical_key(w: Sequence[int], k: int) -> Word:
    """Representative of the k-tortoise class of ``w``: tortoise applied k times."""
    if k < 1:
        raise ValueError("k must be positive")
    return iterate_tortoise(w, k)


def nearly_abelian_key(w: Sequence[int]) -> Word:
    """The last word before sort(w) on the tortoise orbit of ``w``.

    Sorted words have index 0 and are returned unchanged.
    """
    j = tortoise_sort_index(w)
    if j == 0:
        return tuple(w)
    return iterate_tortoise(w, j - 1)
