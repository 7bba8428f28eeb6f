"""Temperley-Lieb diagrams: non-crossing pairings between two rows of points.

Points of a diagram with ``m`` bottom and ``n`` top points are numbered
clockwise starting at the top-left corner: the top row left to right is
``1..n`` and the bottom row right to left is ``n+1..n+m``.  With this
numbering a pairing is planar exactly when it is a balanced bracketing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .numeric import ONE, Scalar, scalar
from .signs import Sign

__all__ = [
    "TLDiagram",
    "CompositionError",
    "compose",
    "involution",
    "identity",
    "cup_cap",
    "tl_basis",
    "jones_projection",
    "is_planar",
]


class CompositionError(ValueError):
    pass


def is_planar(pairs, size: int) -> bool:
    partner = {}
    for a, b in pairs:
        partner[a], partner[b] = b, a
    if sorted(partner) != list(range(1, size + 1)):
        return False
    stack = []
    for i in range(1, size + 1):
        j = partner[i]
        if j > i:
            stack.append(j)
        elif not stack or stack.pop() != i:
            return False
    return True


def _norm(pairs) -> frozenset:
    return frozenset((min(a, b), max(a, b)) for a, b in pairs)


@dataclass(frozen=True)
class TLDiagram:
    m: int  # bottom points
    n: int  # top points
    pairs: frozenset
    mult: Scalar = field(default=ONE, compare=True)
    eps: Sign = Sign.PLUS  # sign of the leftmost region

    def __post_init__(self):
        object.__setattr__(self, "pairs", _norm(self.pairs))
        object.__setattr__(self, "mult", scalar(self.mult))
        object.__setattr__(self, "eps", Sign(self.eps))
        if (self.m + self.n) % 2:
            raise ValueError("m + n must be even")
        if not is_planar(self.pairs, self.m + self.n):
            raise ValueError(f"pairing {sorted(self.pairs)} is not a planar perfect matching")

    # point helpers: top index t and bottom index b are 1-based left to right
    def top(self, t: int) -> int:
        return t

    def bottom(self, b: int) -> int:
        return self.n + self.m - b + 1

    def partner(self) -> dict[int, int]:
        out = {}
        for a, b in self.pairs:
            out[a], out[b] = b, a
        return out

    def shape(self) -> "TLDiagram":
        return TLDiagram(self.m, self.n, self.pairs, ONE, self.eps)

    def scaled(self, c) -> "TLDiagram":
        return TLDiagram(self.m, self.n, self.pairs, self.mult * scalar(c), self.eps)

    def to_text(self) -> str:
        body = ",".join(f"{a}-{b}" for a, b in sorted(self.pairs))
        return f"{self.m},{self.n},{self.eps},{self.mult}\n{body}"

    @classmethod
    def from_text(cls, text: str) -> "TLDiagram":
        head, _, body = text.strip().partition("\n")
        m, n, eps, mult = head.split(",", 3)
        pairs = []
        if body.strip():
            for item in body.strip().split(","):
                a, b = item.split("-")
                pairs.append((int(a), int(b)))
        return cls(int(m), int(n), frozenset(pairs), scalar(mult), Sign.parse(eps))


def compose(top: TLDiagram, bottom: TLDiagram, delta_minus, delta_plus) -> TLDiagram:
    """Stack ``top`` over ``bottom``; closed loops become delta factors.

    A loop contributes the delta of the region just left of its leftmost
    middle point, i.e. the region it sits in.
    """
    if bottom.n != top.m:
        raise CompositionError(f"interface mismatch: {bottom.n} vs {top.m}")
    if bottom.eps != top.eps:
        raise CompositionError("leftmost shading differs")
    dm, dp = scalar(delta_minus), scalar(delta_plus)
    k = bottom.n
    # nodes: ("T", p) and ("B", p); middle point j is T-bottom j == B-top j
    adj: dict[tuple, list[tuple]] = {}

    def link(u, v):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    for a, b in top.pairs:
        link(("T", a), ("T", b))
    for a, b in bottom.pairs:
        link(("B", a), ("B", b))
    for j in range(1, k + 1):
        link(("T", top.bottom(j)), ("B", bottom.top(j)))

    def external(node) -> int | None:
        side, p = node
        if side == "T" and p <= top.n:
            return p  # output top point
        if side == "B" and p > bottom.n:
            b = bottom.n + bottom.m - p + 1  # bottom index, left to right
            return top.n + bottom.m - b + 1
        return None

    seen = set()
    pairs = []
    mult = top.mult * bottom.mult
    for start in adj:
        if start in seen:
            continue
        comp, todo = [], [start]
        seen.add(start)
        while todo:
            u = todo.pop()
            comp.append(u)
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        ends = [e for e in (external(u) for u in comp) if e is not None]
        if len(ends) == 2:
            pairs.append(tuple(ends))
        elif not ends:
            middle = [p for side, p in comp if side == "B" and p <= bottom.n]
            j = min(middle)
            region = top.eps.flip(j - 1)
            mult = mult * (dp if region == Sign.PLUS else dm)
        else:
            raise AssertionError("component with odd boundary")
    return TLDiagram(bottom.m, top.n, frozenset(pairs), mult, top.eps)


def involution(d: TLDiagram) -> TLDiagram:
    """Reflect about a horizontal line (coefficients are real)."""
    out = []

    def mv(p):
        if p <= d.n:  # top index p -> bottom index p
            return d.m + d.n - p + 1
        b = d.n + d.m - p + 1  # bottom index -> top index
        return b

    for a, b in d.pairs:
        out.append((mv(a), mv(b)))
    return TLDiagram(d.n, d.m, frozenset(out), d.mult, d.eps)


def identity(k: int, eps: Sign = Sign.PLUS) -> TLDiagram:
    return TLDiagram(k, k, frozenset((t, 2 * k + 1 - t) for t in range(1, k + 1)), ONE, eps)


def cup_cap(k: int, i: int, eps: Sign = Sign.PLUS) -> TLDiagram:
    """Identity on k strands except strands i, i+1 are capped above and below."""
    if not 1 <= i < k:
        raise ValueError("need 1 <= i < k")
    pairs = [(t, 2 * k + 1 - t) for t in range(1, k + 1) if t not in (i, i + 1)]
    pairs.append((i, i + 1))
    pairs.append((2 * k + 1 - (i + 1), 2 * k + 1 - i))
    return TLDiagram(k, k, frozenset(pairs), ONE, eps)


def _matchings(lo: int, hi: int) -> Iterator[list[tuple[int, int]]]:
    if lo > hi:
        yield []
        return
    for j in range(lo + 1, hi + 1, 2):
        for inner in _matchings(lo + 1, j - 1):
            for outer in _matchings(j + 1, hi):
                yield [(lo, j)] + inner + outer


@lru_cache(maxsize=None)
def _basis_pairs(k: int) -> tuple[frozenset, ...]:
    return tuple(frozenset(m) for m in _matchings(1, 2 * k))


def tl_basis(k: int, eps: Sign = Sign.PLUS) -> list[TLDiagram]:
    """All planar pairings of k top and k bottom points (Catalan(k) of them)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return [TLDiagram(k, k, p, ONE, eps) for p in _basis_pairs(k)]


def jones_projection(k: int, i: int, delta, eps: Sign = Sign.PLUS) -> TLDiagram:
    return cup_cap(k, i, eps).scaled(scalar(delta).inverse())
