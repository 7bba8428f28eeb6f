"""The diagonal planar algebra of a free group, and a Temperley-Lieb instance.

A basis element of ``P_(eps, k)`` is the boundary coloring word read
clockwise from the top-left corner (top row left to right, then bottom row
right to left).  Writing the top row as ``e`` and the bottom row, left to
right, as ``h``, the word is ``e + reversed(h)``.  A tangle acts by summing
over the colorings of its strings, and each closed loop contributes the
rank.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from fractions import Fraction
from itertools import product
from math import comb

from .numeric import ONE, Scalar, scalar
from .pacore import Color, Element, PAInstance
from .signs import Sign, enumerate_basis
from .tl import TLDiagram, compose as tl_compose

__all__ = [
    "DiagonalPA",
    "TLPA",
    "build",
    "build_tl",
    "dims",
    "block_value",
    "block_decomposition",
    "diagonal_element",
]


class DiagonalPA(PAInstance):
    def __init__(self, rank: int = 2):
        super().__init__()
        if rank < 1:
            raise ValueError("rank must be >= 1")
        self.rank = rank
        self.name = f"diagonal(rank={rank})"
        self._bases: dict = {}
        self._colors = tuple(Sign) if rank == 2 else tuple(range(rank))
        self._loop = scalar(rank)

    def delta(self, sign: Sign) -> Scalar:
        return self._loop

    def basis(self, color: Color) -> list:
        k = color.k
        if k not in self._bases:
            self._bases[k] = enumerate_basis(Sign.PLUS, k, self.rank)
        return self._bases[k]

    def _words(self, k: int):
        return product(self._colors, repeat=k)

    def _unit(self, color):
        return {e + e[::-1]: ONE for e in self._words(color.k)}

    def _m(self, color, a, b):
        n = color.k
        if a[n:][::-1] != b[:n]:
            return {}
        return {a[:n] + b[n:]: ONE}

    def _mult(self, color, x, y):
        n = color.k
        by_top = defaultdict(list)
        for b, cb in y.items():
            by_top[b[:n]].append((b, cb))
        out: dict = {}
        for a, ca in x.items():
            for b, cb in by_top.get(a[n:][::-1], ()):
                w = a[:n] + b[n:]
                v = out.get(w)
                v = ca * cb if v is None else v + ca * cb
                if v.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = v
        return out

    def _ri(self, color, a):
        n = color.k
        return {a[:n] + (g, g) + a[n:]: ONE for g in self._colors}

    def _li(self, color, a):
        return {(g,) + a + (g,): ONE for g in self._colors}

    def _e(self, color):
        k = color.k - 1
        return {
            e + (g, g, h, h) + e[::-1]: ONE
            for e in self._words(k)
            for g in self._colors
            for h in self._colors
        }

    def _re(self, color, a):
        m = color.k
        if a[m - 1] != a[m]:
            return {}
        return {a[: m - 1] + a[m + 1 :]: ONE}

    def _le(self, color, a):
        if a[0] != a[-1]:
            return {}
        return {a[1:-1]: ONE}

    def _star(self, color, a):
        return {a[::-1]: ONE}

    def _rho(self, color, a):
        return {a[1:] + a[:1]: ONE}

    def _insert(self, c, i, x, above):
        n = x.color.k
        pos = i - 1 if above else 2 * n - i
        weights = {w[0]: v for w, v in c.coeffs.items()}
        out = {}
        for w, v in x.coeffs.items():
            f = weights.get(w[pos])
            if f is not None:
                out[w] = v * f
        return Element(x.color, out)


def diagonal_element(color: Color, weights: dict) -> Element:
    """sum_g weights[g] * (g, g) in a one-strand color."""
    return Element(color, {(Sign(g), Sign(g)) if not isinstance(g, tuple) else g: scalar(v) for g, v in weights.items()})


def build(rank: int = 2) -> DiagonalPA:
    return DiagonalPA(rank)


def dims(pa: PAInstance, k_max: int) -> list[tuple[int, int, int]]:
    """(k, dim P_(+k), dim P_(-k)) for k = 0..k_max."""
    return [(k, pa.dim(Color(Sign.PLUS, k)), pa.dim(Color(Sign.MINUS, k))) for k in range(k_max + 1)]


def block_value(seq, c_minus, c_plus) -> Scalar:
    """prod_i c_{(-)^(i-1) seq_i}: odd positions use c of the letter, even ones of its negation."""
    cm, cp = scalar(c_minus), scalar(c_plus)
    v = ONE
    for i, s in enumerate(seq):
        s = Sign(s) if i % 2 == 0 else -Sign(s)
        v = v * (cp if s == Sign.PLUS else cm)
    return v


def block_decomposition(k: int, c_minus, c_plus) -> list[tuple[Scalar, int]]:
    """Group I^k by block value; returns (value, multiplicity) by increasing value."""
    cm, cp = scalar(c_minus), scalar(c_plus)
    if cm == cp:
        raise ValueError("c_minus must differ from c_plus")
    if cm.sign() <= 0 or cp.sign() <= 0:
        raise ValueError("c_minus and c_plus must be positive")
    counts: Counter = Counter(block_value(seq, cm, cp) for seq in product(Sign, repeat=k))
    rows = sorted(counts.items(), key=lambda t: float(t[0]))
    return rows


def expected_blocks(k: int, c_minus, c_plus) -> list[tuple[Scalar, int]]:
    cm, cp = scalar(c_minus), scalar(c_plus)
    rows = [(cm**j * cp ** (k - j), comb(k, j)) for j in range(k + 1)]
    return sorted(rows, key=lambda t: float(t[0]))


# ---------------------------------------------------------------------------
# Temperley-Lieb


def _fs(pairs) -> frozenset:
    return frozenset((min(p, q), max(p, q)) for p, q in pairs)


class TLPA(PAInstance):
    """Temperley-Lieb planar algebra; labels are pairings of points 1..2n."""

    def __init__(self, delta, delta_plus=None):
        super().__init__()
        self._dm = scalar(delta)
        self._dp = scalar(delta if delta_plus is None else delta_plus)
        if self._dm.is_zero() or self._dp.is_zero():
            raise ValueError("delta must be nonzero")
        self.name = f"TL({self._dm})" if self._dm == self._dp else f"TL({self._dm},{self._dp})"
        self._bases: dict = {}

    def delta(self, sign: Sign) -> Scalar:
        return self._dp if sign == Sign.PLUS else self._dm

    def basis(self, color):
        from .tl import tl_basis

        if color.k not in self._bases:
            self._bases[color.k] = [d.pairs for d in tl_basis(color.k)]
        return self._bases[color.k]

    def diagram(self, color: Color, label) -> TLDiagram:
        return TLDiagram(color.k, color.k, label, ONE, color.sign)

    def _unit(self, color):
        n = color.k
        return {_fs((t, 2 * n + 1 - t) for t in range(1, n + 1)): ONE}

    def _m(self, color, a, b):
        d = tl_compose(self.diagram(color, a), self.diagram(color, b), self._dm, self._dp)
        return {d.pairs: d.mult}

    def _ri(self, color, a):
        n = color.k
        sh = lambda p: p if p <= n else p + 2
        return {_fs((sh(p), sh(q)) for p, q in a) | {(n + 1, n + 2)}: ONE}

    def _li(self, color, a):
        n = color.k
        return {_fs((p + 1, q + 1) for p, q in a) | {(1, 2 * n + 2)}: ONE}

    def _e(self, color):
        k = color.k - 1
        m = k + 2
        pairs = {(t, 2 * m + 1 - t) for t in range(1, k + 1)}
        pairs |= {(k + 1, k + 2), (k + 3, k + 4)}
        return {_fs(pairs): ONE}

    def _join(self, a, p1, p2, size, loop_sign):
        partner = {}
        for p, q in a:
            partner[p], partner[q] = q, p
        mult = ONE
        pairs = [(p, q) for p, q in a if p not in (p1, p2) and q not in (p1, p2)]
        if partner[p1] == p2:
            mult = self.delta(loop_sign)
        else:
            pairs.append((partner[p1], partner[p2]))
        return pairs, mult

    def _re(self, color, a):
        m = color.k
        pairs, mult = self._join(a, m, m + 1, m, color.sign.flip(m - 1))
        sh = lambda p: p if p < m else p - 2
        return {_fs((sh(p), sh(q)) for p, q in pairs): mult}

    def _le(self, color, a):
        m = color.k
        pairs, mult = self._join(a, 1, 2 * m, m, -color.sign)
        return {_fs((p - 1, q - 1) for p, q in pairs): mult}

    def _star(self, color, a):
        n2 = 2 * color.k + 1
        return {_fs((n2 - p, n2 - q) for p, q in a): ONE}

    def _rho(self, color, a):
        n2 = 2 * color.k
        sh = lambda p: n2 if p == 1 else p - 1
        return {_fs((sh(p), sh(q)) for p, q in a): ONE}


def build_tl(delta, k_max: int | None = None) -> TLPA:
    """TL(delta); levels are generated on demand, so k_max is only a hint."""
    return TLPA(delta)
