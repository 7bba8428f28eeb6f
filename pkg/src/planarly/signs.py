"""Sign sequences, alternating free-group words and non-crossing pairings.

Letters of a sequence are integers ``0..rank-1``; for the default rank 2 they
are the two signs, with ``0`` read as ``-`` and ``1`` as ``+`` so that the
natural integer order gives ``- < +``.
"""

from __future__ import annotations

from enum import IntEnum
from itertools import product
from typing import Iterable, Sequence

__all__ = [
    "Sign",
    "SignSeq",
    "ReducedWord",
    "parse_seq",
    "format_seq",
    "tilde",
    "alt",
    "reduce_word",
    "format_word",
    "enumerate_basis",
    "nc_pairing_exists",
    "nc_pairings",
]


class Sign(IntEnum):
    MINUS = 0
    PLUS = 1

    def __neg__(self) -> "Sign":
        return Sign.PLUS if self is Sign.MINUS else Sign.MINUS

    def flip(self, times: int = 1) -> "Sign":
        return -self if times % 2 else self

    @property
    def unit(self) -> int:
        return 1 if self is Sign.PLUS else -1

    @classmethod
    def parse(cls, text: str) -> "Sign":
        if text in ("+", "plus", "1"):
            return cls.PLUS
        if text in ("-", "minus", "0"):
            return cls.MINUS
        raise ValueError(f"not a sign: {text!r}")

    def __str__(self) -> str:
        return "+" if self is Sign.PLUS else "-"


SignSeq = tuple  # tuple[int, ...]
ReducedWord = tuple  # tuple[tuple[int, int], ...]: (generator 1..n, exponent +-1)


def parse_seq(text: str) -> SignSeq:
    """'-++-' -> (0, 1, 1, 0); comma-separated integers for higher rank."""
    text = text.strip()
    if "," in text:
        return tuple(int(t) for t in text.split(","))
    return tuple(Sign.parse(ch) for ch in text)


def format_seq(seq: Sequence[int], rank: int = 2) -> str:
    if rank == 2:
        return "".join("+" if s else "-" for s in seq)
    return ",".join(str(s) for s in seq)


def tilde(seq: Sequence[int]) -> SignSeq:
    return tuple(reversed(seq))


def reduce_word(letters: Iterable[tuple[int, int]]) -> ReducedWord:
    stack: list[tuple[int, int]] = []
    for g, e in letters:
        if stack and stack[-1][0] == g and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((g, e))
    return tuple(stack)


def alt(eta: Sign, seq: Sequence[int]) -> ReducedWord:
    """Reduced alternating word; generator a_s has index s+1."""
    e0 = -1 if eta == Sign.PLUS else 1
    return reduce_word((s + 1, e0 if i % 2 == 0 else -e0) for i, s in enumerate(seq))


def format_word(word: ReducedWord, rank: int = 2) -> str:
    if not word:
        return "e"
    names = {1: "a-", 2: "a+"} if rank == 2 else {}
    out = []
    for g, e in word:
        name = names.get(g, f"a{g}")
        out.append(name if e == 1 else f"{name}^-1")
    return " ".join(out)


def enumerate_basis(eta: Sign, k: int, rank: int = 2) -> list[SignSeq]:
    """All length-2k sequences with trivial alternating word, lexicographic."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = 2 * k
    e0 = -1 if eta == Sign.PLUS else 1
    out: list[SignSeq] = []
    seq: list[int] = []
    stack: list[tuple[int, int]] = []

    # the depth-first order over letters 0..rank-1 is lexicographic; prune when
    # the pending reduced word is longer than what remains to cancel it
    def walk(i: int) -> None:
        if len(stack) > n - i:
            return
        if i == n:
            out.append(tuple(seq))
            return
        e = e0 if i % 2 == 0 else -e0
        for s in range(rank):
            popped = bool(stack) and stack[-1] == (s, -e)
            if popped:
                stack.pop()
            else:
                stack.append((s, e))
            seq.append(s)
            walk(i + 1)
            seq.pop()
            if popped:
                stack.append((s, -e))
            else:
                stack.pop()

    walk(0)
    if rank == 2:
        return [tuple(Sign(s) for s in w) for w in out]
    return out


def nc_pairing_exists(seq: Sequence[int]) -> bool:
    stack: list[int] = []
    for s in seq:
        if stack and stack[-1] == s:
            stack.pop()
        else:
            stack.append(s)
    return not stack


def _matchings(seq: Sequence[int], lo: int, hi: int) -> list[list[tuple[int, int]]]:
    if lo >= hi:
        return [[]]
    out = []
    for j in range(lo + 1, hi, 2):
        if seq[j] != seq[lo]:
            continue
        for inner in _matchings(seq, lo + 1, j):
            for outer in _matchings(seq, j + 1, hi):
                out.append([(lo + 1, j + 1)] + inner + outer)
    return out


def nc_pairings(seq: Sequence[int], eps: Sign = Sign.PLUS) -> list:
    """Non-crossing pairings of equal letters as diagrams with all points below.

    Points are numbered 1..len(seq) in sequence order.
    """
    from .tl import TLDiagram

    if len(seq) % 2:
        raise ValueError("sequence length must be even")
    return [TLDiagram(len(seq), 0, frozenset(m), eps=eps) for m in _matchings(seq, 0, len(seq))]


def brute_force_basis(eta: Sign, k: int, rank: int = 2) -> list[SignSeq]:
    """Reference enumeration: filter all of I^{2k} by free-group reduction."""
    return [w for w in product(range(rank), repeat=2 * k) if not alt(eta, w)]
