"""The graded *-algebra P^k = sum_l P_(+(k+l)) at a finite truncation level.

An element of grade ``l`` is a box of color ``+(k+l)`` whose boundary word
is ``base_top(k) + side(2l) + base_bottom(k)``: ``k`` strands run from top
to bottom on the left and the ``l`` extra strands leave through the right
side.  The product ``x (.)_i y`` stacks ``x`` on ``y`` along the base
strands and joins ``i`` consecutive side points across the junction, so
``x_l . y_m`` has components in grades ``l + m - i`` for
``0 <= i <= 2 min(l, m)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .bicat import cap, glue
from .numeric import ZERO, Scalar, scalar
from .pacore import Color, ColorError, Element, ModulusError, PAInstance, definiteness, modulus
from .signs import Sign

__all__ = [
    "GradedElement",
    "graded_unit",
    "odot",
    "graded_mult",
    "dagger",
    "t_trace",
    "inner",
    "trace_of_product",
    "inner_fast",
    "gram",
    "GramReport",
    "gram_csv",
    "associator",
    "random_graded",
]


@dataclass
class GradedElement:
    k: int
    parts: dict  # grade l -> Element of color +(k+l)
    L: int
    truncated: bool = False

    def __post_init__(self):
        clean = {}
        for l, x in self.parts.items():
            if l > self.L:
                raise ValueError(f"grade {l} exceeds truncation {self.L}")
            if x.color != Color(Sign.PLUS, self.k + l):
                raise ColorError(f"grade {l} needs color +{self.k + l}, got {x.color}")
            if not x.is_zero():
                clean[l] = x
        self.parts = clean

    def __getitem__(self, l: int) -> Element:
        return self.parts.get(l, Element(Color(Sign.PLUS, self.k + l)))

    def __add__(self, other: "GradedElement") -> "GradedElement":
        self._check(other)
        parts = dict(self.parts)
        for l, x in other.parts.items():
            parts[l] = parts[l] + x if l in parts else x
        return GradedElement(self.k, parts, self.L, self.truncated or other.truncated)

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + other * scalar(-1)

    def __mul__(self, c) -> "GradedElement":
        return GradedElement(self.k, {l: x * c for l, x in self.parts.items()}, self.L, self.truncated)

    __rmul__ = __mul__

    def _check(self, other):
        if other.k != self.k:
            raise ValueError("grade bases differ")

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedElement) or other.k != self.k:
            return False
        levels = set(self.parts) | set(other.parts)
        return all(self[l] == other[l] for l in levels)

    def restrict(self, L: int) -> "GradedElement":
        return GradedElement(self.k, {l: x for l, x in self.parts.items() if l <= L}, L, self.truncated)


def graded_unit(pa: PAInstance, k: int, L: int) -> GradedElement:
    return GradedElement(k, {0: pa.unit(Color(Sign.PLUS, k))}, L)


def odot(pa: PAInstance, x: Element, y: Element, k: int, i: int) -> Element:
    """x (.)_i y for x of grade l and y of grade m (both over base k)."""
    l = x.color.k - k
    m = y.color.k - k
    if l < 0 or m < 0:
        raise ColorError("elements below the base level")
    if not 0 <= i <= 2 * min(l, m):
        raise ValueError("i out of range")
    z = glue(pa, x, y, k)
    for j in range(i):
        z = cap(pa, z, k + 2 * l - 1 - j)
    return z


def graded_mult(pa: PAInstance, x: GradedElement, y: GradedElement, L: int | None = None) -> GradedElement:
    """The filtered product; grades above L are dropped and flagged."""
    if x.k != y.k:
        raise ValueError("grade bases differ")
    k = x.k
    L = min(x.L, y.L) if L is None else L
    out: dict = {}
    truncated = x.truncated or y.truncated
    for l, xl in x.parts.items():
        for m, ym in y.parts.items():
            for i in range(2 * min(l, m) + 1):
                g = l + m - i
                if g > L:
                    truncated = True
                    continue
                term = odot(pa, xl, ym, k, i)
                out[g] = out[g] + term if g in out else term
    return GradedElement(k, out, L, truncated)


def associator(pa: PAInstance, x: GradedElement, y: GradedElement, z: GradedElement, L: int):
    """((x y) z, x (y z)) restricted to grades <= L.

    The inner products are kept in full (grade at most twice the input
    bound) so that only the final product is truncated, identically on
    both sides.
    """
    top = max(x.L, y.L, z.L)
    xy = graded_mult(pa, x, y, L=2 * top)
    yz = graded_mult(pa, y, z, L=2 * top)
    lhs = graded_mult(pa, xy, _widen(z, 2 * top), L=L)
    rhs = graded_mult(pa, _widen(x, 2 * top), yz, L=L)
    return lhs, rhs


def _widen(x: GradedElement, L: int) -> GradedElement:
    return GradedElement(x.k, dict(x.parts), L, x.truncated)


def dagger(pa: PAInstance, x: GradedElement) -> GradedElement:
    return GradedElement(x.k, {l: pa.star(v) for l, v in x.parts.items()}, x.L, x.truncated)


def _unimodular_delta(pa: PAInstance) -> Scalar:
    dm, dp = modulus(pa)
    if dm != dp:
        raise ModulusError("the graded trace needs a unimodular instance")
    return dp


def t_trace(pa: PAInstance, x: GradedElement) -> Scalar:
    """delta^-k times the left picture trace of the grade-0 part."""
    d = _unimodular_delta(pa)
    x0 = x.parts.get(0)
    if x0 is None:
        return ZERO
    return pa.trace_l(x0) / d**x.k


def inner(pa: PAInstance, x: GradedElement, y: GradedElement) -> Scalar:
    """<x, y> = t(x^dagger . y), keeping only the grade-0 part of the product."""
    prod = graded_mult(pa, dagger(pa, x), y, L=0)
    return t_trace(pa, prod)


def trace_of_product(pa: PAInstance, x: GradedElement, y: GradedElement) -> Scalar:
    """t(x . y) from the identity t(x . y) = delta^-k sum_l TR^l_k RE^l M(x_l, y_l)."""
    d = _unimodular_delta(pa)
    total = ZERO
    for l, xl in x.parts.items():
        yl = y.parts.get(l)
        if yl is None:
            continue
        v = pa.M(xl, yl)
        for _ in range(l):
            v = pa.RE(v)
        total = total + pa.trace_l(v)
    return total / d**x.k


def inner_fast(pa: PAInstance, x: GradedElement, y: GradedElement) -> Scalar:
    return trace_of_product(pa, dagger(pa, x), y)


@dataclass
class GramReport:
    matrix: list
    labels: list
    verdict: str
    orthogonal: bool


def gram(pa: PAInstance, k: int, L: int, fast: bool = True) -> GramReport:
    """Gram matrix of the grade-wise basis of the truncation; checks grade orthogonality."""
    labels, elems = [], []
    for l in range(L + 1):
        for b in pa.basis_elements(Color(Sign.PLUS, k + l)):
            labels.append((l, next(iter(b.coeffs))))
            elems.append(GradedElement(k, {l: b}, L))
    n = len(elems)
    G = [[ZERO] * n for _ in range(n)]
    orthogonal = True
    if fast:
        daggers = [dagger(pa, x) for x in elems]
        pair = lambda i, j: trace_of_product(pa, daggers[i], elems[j])
    else:
        pair = lambda i, j: inner(pa, elems[i], elems[j])
    for i in range(n):
        for j in range(n):
            v = pair(i, j)
            G[i][j] = v
            if labels[i][0] != labels[j][0] and not v.is_zero():
                orthogonal = False
    return GramReport(G, labels, definiteness(G), orthogonal)


def gram_csv(report: GramReport) -> str:
    lines = [",".join(str(v) for v in row) for row in report.matrix]
    return "\n".join(lines) + "\n"


def random_graded(pa: PAInstance, k: int, L: int, rng: random.Random, terms: int = 2, max_level: int | None = None) -> GradedElement:
    """A sparse random element: a few basis vectors per grade with small rational coefficients."""
    top = L if max_level is None else max_level
    parts = {}
    for l in range(top + 1):
        bs = pa.basis(Color(Sign.PLUS, k + l))
        picks = rng.sample(bs, min(terms, len(bs)))
        coeffs = {}
        for p in picks:
            num = rng.randint(-4, 4) or 1
            coeffs[p] = scalar(num) / rng.randint(1, 3)
        parts[l] = Element(Color(Sign.PLUS, k + l), coeffs)
    return GradedElement(k, parts, L)
