"""Infinite words: paperfolding, Thue-Morse, and DFAO-defined sequences."""

from __future__ import annotations

import functools
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping

from .word_ops import Word


class DfaoParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DfaoValidationError(ValueError):
    pass


def paperfolding_at(n: int) -> int:
    """f_n for n >= 1: 0 if the odd part of n is 1 mod 4, else 1."""
    if n < 1:
        raise ValueError("paperfolding sequence is indexed from 1")
    odd = n // (n & -n)
    return 0 if odd % 4 == 1 else 1


def thue_morse_at(n: int) -> int:
    if n < 0:
        raise ValueError("Thue-Morse sequence is indexed from 0")
    return bin(n).count("1") & 1


@dataclass(frozen=True)
class Dfao:
    """Deterministic finite automaton with output, read msd-first in ``base``."""

    base: int
    alphabet_size: int
    initial: str
    transitions: Mapping[tuple[str, int], str]
    outputs: Mapping[str, int]

    def __post_init__(self):
        if self.base < 2:
            raise DfaoValidationError(f"base must be at least 2, got {self.base}")
        if self.initial not in self.outputs:
            raise DfaoValidationError(f"initial state {self.initial!r} has no output")
        for state, sym in self.outputs.items():
            if not 0 <= sym < self.alphabet_size:
                raise DfaoValidationError(
                    f"output {sym} of state {state!r} outside alphabet of size {self.alphabet_size}"
                )
        for state in self.outputs:
            for digit in range(self.base):
                target = self.transitions.get((state, digit))
                if target is None:
                    raise DfaoValidationError(f"missing transition from state {state!r} on digit {digit}")
                if target not in self.outputs:
                    raise DfaoValidationError(
                        f"transition ({state!r}, {digit}) leads to unknown state {target!r}"
                    )
        for state, digit in self.transitions:
            if state not in self.outputs:
                raise DfaoValidationError(f"transition from undeclared state {state!r}")

    @property
    def states(self) -> list[str]:
        return list(self.outputs)


def dfao_eval(d: Dfao, n: int) -> int:
    if n < 0:
        raise ValueError("DFAO input must be non-negative")
    digits = []
    while n:
        n, r = divmod(n, d.base)
        digits.append(r)
    state = d.initial
    for digit in reversed(digits):
        state = d.transitions[state, digit]
    return d.outputs[state]


def parse_dfao(text: str) -> Dfao:
    """Parse the plain-text DFAO format.

    ::

        base 2 alphabet 2 initial a
        state a output 0
        state b output 1
        trans a 0 a
        trans a 1 b
        ...

    Blank lines and ``#`` comments are ignored.
    """
    header = None
    outputs: dict[str, int] = {}
    transitions: dict[tuple[str, int], str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if header is None:
                if len(parts) != 6 or parts[0::2] != ["base", "alphabet", "initial"]:
                    raise DfaoParseError("expected 'base <b> alphabet <A> initial <s0>'", lineno)
                header = (int(parts[1]), int(parts[3]), parts[5])
            elif parts[0] == "state":
                if len(parts) != 4 or parts[2] != "output":
                    raise DfaoParseError("expected 'state <id> output <sym>'", lineno)
                if parts[1] in outputs:
                    raise DfaoParseError(f"duplicate state {parts[1]!r}", lineno)
                outputs[parts[1]] = int(parts[3])
            elif parts[0] == "trans":
                if len(parts) != 4:
                    raise DfaoParseError("expected 'trans <from> <digit> <to>'", lineno)
                key = (parts[1], int(parts[2]))
                if key in transitions:
                    raise DfaoParseError(f"duplicate transition {key}", lineno)
                transitions[key] = parts[3]
            else:
                raise DfaoParseError(f"unknown directive {parts[0]!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, DfaoParseError):
                raise
            raise DfaoParseError(f"bad integer: {exc}", lineno) from None
    if header is None:
        raise DfaoParseError("empty DFAO description", 1)
    base, alphabet, initial = header
    return Dfao(base, alphabet, initial, transitions, outputs)


def load_dfao(path: str | Path) -> Dfao:
    return parse_dfao(Path(path).read_text())


def dump_dfao(d: Dfao) -> str:
    lines = [f"base {d.base} alphabet {d.alphabet_size} initial {d.initial}"]
    lines += [f"state {s} output {o}" for s, o in d.outputs.items()]
    lines += [f"trans {s} {digit} {d.transitions[s, digit]}" for s in d.outputs for digit in range(d.base)]
    return "\n".join(lines) + "\n"


THUE_MORSE_DFAO = Dfao(
    base=2,
    alphabet_size=2,
    initial="e",
    transitions={("e", 0): "e", ("e", 1): "o", ("o", 0): "o", ("o", 1): "e"},
    outputs={"e": 0, "o": 1},
)

# msd-first.  A state records the last bit read and the odd part so far mod 4
# ("1" or "3"); trailing zeros leave the odd part alone.  "z" = only zeros read.
PAPERFOLDING_DFAO = Dfao(
    base=2,
    alphabet_size=2,
    initial="z",
    transitions={
        ("z", 0): "z", ("z", 1): "b1r1",
        ("b1r1", 0): "b0r1", ("b1r1", 1): "b1r3",
        ("b1r3", 0): "b0r3", ("b1r3", 1): "b1r3",
        ("b0r1", 0): "b0r1", ("b0r1", 1): "b1r1",
        ("b0r3", 0): "b0r3", ("b0r3", 1): "b1r1",
    },
    outputs={"z": 0, "b1r1": 0, "b1r3": 1, "b0r1": 0, "b0r3": 1},
)


@dataclass(eq=False)
class InfiniteWord:
    """An indexed symbol provider with a lazily grown prefix buffer.

    ``index_base`` is the first valid index, so positions reported for
    factors can be given in the sequence's own indexing.
    """

    name: str
    alphabet_size: int
    index_base: int
    at: Callable[[int], int]
    closed_form: str | None = None
    _buffer: list[int] = field(default_factory=list, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __hash__(self) -> int:
        return id(self)

    def prefix(self, length: int) -> Word:
        if length < 0:
            raise ValueError("prefix length must be non-negative")
        with self._lock:
            buf = self._buffer
            if len(buf) < length:
                start = self.index_base + len(buf)
                buf.extend(map(self.at, range(start, self.index_base + length)))
            return tuple(buf[:length])


@functools.cache
def paperfolding() -> InfiniteWord:
    return InfiniteWord("f", 2, 1, paperfolding_at, closed_form="paperfolding")


@functools.cache
def thue_morse() -> InfiniteWord:
    return InfiniteWord("t", 2, 0, thue_morse_at, closed_form="thue_morse")


def constant(symbol: int = 0, alphabet_size: int = 2) -> InfiniteWord:
    return InfiniteWord(f"const{symbol}", alphabet_size, 0, lambda n: symbol)


def from_dfao(d: Dfao, name: str = "dfao", index_base: int = 0) -> InfiniteWord:
    return InfiniteWord(name, d.alphabet_size, index_base, lambda n: dfao_eval(d, n))


def prefix(x: InfiniteWord, length: int) -> Word:
    return x.prefix(length)


def builtin(name: str) -> InfiniteWord:
    if name == "f":
        return paperfolding()
    if name == "t":
        return thue_morse()
    raise KeyError(f"unknown built-in sequence {name!r} (expected 'f' or 't')")
