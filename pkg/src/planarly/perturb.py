"""Weights and perturbations of planar algebras.

A perturbation ``P^(a,b)`` keeps the spaces and the actions of ``M``, ``1``,
``RI``, ``LI`` and ``*``, and decorates every local extremum of ``E``, ``RE``
and ``LE`` with one of ``a, b`` or their inverses.  Labels depend on the
sign ``s`` of the region enclosed by the arc:

============  =========  =========
enclosed s    cap (max)  cup (min)
============  =========  =========
shaded (-)    ``a``      ``b``
unshaded (+)  ``b^-1``   ``a^-1``
============  =========  =========

A closed loop on an unshaded background therefore carries ``ab = z`` and a
loop on a shaded background carries ``z^-1``.  A decoration is always placed
with its marked region on the unshaded side of the strand, which is what
``PAInstance.insert`` does.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .numeric import ONE, Scalar, is_positive, scalar, sqrt
from .pacore import (
    Color,
    Element,
    ModulusError,
    PAInstance,
    algebra_inverse,
    definiteness,
    modulus,
    solve,
)
from .signs import Sign

__all__ = [
    "Weight",
    "WeightError",
    "Decomposition",
    "level_element",
    "make_weight",
    "PerturbedPA",
    "perturb",
    "normalize",
    "is_unimodular",
    "trace_intertwiner_weight",
    "element_root",
    "sphericalize",
    "sweep_index",
    "symmetric_perturbation",
    "diagonal_weight",
    "conjugation_map",
]

PLUS1 = Color(Sign.PLUS, 1)


class WeightError(ValueError):
    def __init__(self, msg: str, color: Color | None = None, witness=None):
        super().__init__(msg)
        self.color = color
        self.witness = witness


def _as_elem(pa: PAInstance, x) -> Element:
    if isinstance(x, Element):
        if x.color != PLUS1:
            raise ValueError("decorations must live in P_(+1)")
        return x
    return pa.unit(PLUS1) * scalar(x)


def level_element(pa: PAInstance, z: Element, color: Color, zinv: Element | None = None) -> Element:
    """z on strands with an unshaded left region, z^-1 on the others."""
    if zinv is None:
        zinv = algebra_inverse(pa, z)
    x = pa.unit(color)
    for i in range(1, color.k + 1):
        x = pa.insert(z if color.region(i) == Sign.PLUS else zinv, i, x)
    return x


@dataclass
class Weight:
    pa: PAInstance
    z: Element
    zinv: Element
    K: int
    _levels: dict = field(default_factory=dict, repr=False)

    def level(self, color: Color) -> Element:
        if color not in self._levels:
            self._levels[color] = level_element(self.pa, self.z, color, self.zinv)
        return self._levels[color]

    def level_inverse(self, color: Color) -> Element:
        return level_element(self.pa, self.zinv, color, self.z)

    def is_scalar(self) -> bool:
        u = self.pa.unit(PLUS1)
        lab = next(iter(u.coeffs))
        c = self.z[lab] / u[lab]
        return self.z == u * c


def make_weight(pa: PAInstance, z, K: int = 4) -> Weight:
    """Check invertibility and centrality of the level elements up to K."""
    z = _as_elem(pa, z)
    try:
        zinv = algebra_inverse(pa, z)
    except ZeroDivisionError as exc:
        raise WeightError("z is not invertible") from exc
    w = Weight(pa, z, zinv, K)
    for k in range(K + 1):
        for s in Sign:
            c = Color(s, k)
            zk = w.level(c)
            for b in pa.basis_elements(c):
                if pa.M(zk, b) != pa.M(b, zk):
                    raise WeightError(f"z_{c} is not central", c, next(iter(b.coeffs)))
    return w


def diagonal_weight(pa: PAInstance, lam_minus, lam_plus) -> Element:
    """lam_minus (-,-) + lam_plus (+,+) in P_(+1)."""
    m, p = Sign.MINUS, Sign.PLUS
    return Element(PLUS1, {(m, m): scalar(lam_minus), (p, p): scalar(lam_plus)})


@dataclass(frozen=True)
class Decomposition:
    """An invertible commuting factorisation z = ab in P_(+1)."""

    a: Element
    b: Element

    def weight_element(self, pa: PAInstance) -> Element:
        return pa.M(self.a, self.b)


class PerturbedPA(PAInstance):
    def __init__(self, base: PAInstance, a: Element, b: Element):
        super().__init__()
        self.base = base
        self.a, self.b = a, b
        if base.M(a, b) != base.M(b, a):
            raise ValueError("only commuting decompositions are supported")
        self.ainv = algebra_inverse(base, a)
        self.binv = algebra_inverse(base, b)
        self.z = base.M(a, b)
        self.name = f"perturbed({base.name})"
        self._delta: dict = {}

    # labels on arcs enclosing a region of sign s
    def cap(self, s: Sign) -> Element:
        return self.a if s == Sign.MINUS else self.binv

    def cup(self, s: Sign) -> Element:
        return self.b if s == Sign.MINUS else self.ainv

    def delta(self, sign: Sign) -> Scalar:
        if sign not in self._delta:
            one = self.unit(Color(sign, 0))
            self._delta[sign] = self.scalar_of(self.RE(self.RI(one)))
        return self._delta[sign]

    def basis(self, color):
        return self.base.basis(color)

    def _unit(self, color):
        return self.base.unit(color).coeffs

    def _m(self, color, a, b):
        return self.base._m(color, a, b)

    def _mult(self, color, x, y):
        return self.base._mult(color, x, y)

    def _ri(self, color, a):
        return self.base.RI(Element.basis(color, a)).coeffs

    def _li(self, color, a):
        return self.base.LI(Element.basis(color, a)).coeffs

    def _star(self, color, a):
        return self.base.star(Element.basis(color, a)).coeffs

    def _insert(self, c, i, x, above):
        return self.base.insert(c, i, x, above)

    def _re(self, color, a):
        m = color.k
        s = color.sign.flip(m)
        x = Element.basis(color, a)
        x = self.base.insert(self.cap(s), m, x, above=True)
        x = self.base.insert(self.cup(s), m, x, above=False)
        return self.base.RE(x).coeffs

    def _le(self, color, a):
        s = color.sign
        x = Element.basis(color, a)
        x = self.base.insert(self.cap(s), 1, x, above=True)
        x = self.base.insert(self.cup(s), 1, x, above=False)
        return self.base.LE(x).coeffs

    def _e(self, color):
        k1 = color.k
        s = color.sign.flip(k1)
        e = self.base.E(color)
        e = self.base.insert(self.cup(s), k1, e, above=True)
        e = self.base.insert(self.cap(s), k1, e, above=False)
        return e.coeffs


def perturb(pa: PAInstance, a, b=None) -> PAInstance:
    """P^(a,b); nested perturbations are flattened onto the original instance."""
    if isinstance(a, Decomposition):
        a, b = a.a, a.b
    a, b = _as_elem(pa, a), _as_elem(pa, ONE if b is None else b)
    one = pa.unit(PLUS1)
    if a == one and b == one:
        return pa
    if isinstance(pa, PerturbedPA):
        base = pa.base
        return _flat(base, base.M(pa.a, a), base.M(pa.b, b))
    return _flat(pa, a, b)


def _flat(base, a, b):
    one = base.unit(PLUS1)
    if a == one and b == one:
        return base
    return PerturbedPA(base, a, b)


def is_unimodular(pa: PAInstance) -> bool:
    dm, dp = modulus(pa)
    return dm == dp


def normalize(pa: PAInstance) -> PAInstance:
    """Scalar perturbation by sqrt(delta_- / delta_+)."""
    dm, dp = modulus(pa)
    if not (is_positive(dm) and is_positive(dp)):
        raise ModulusError("normalization needs a positive modulus")
    if dm == dp:
        return pa
    return perturb(pa, sqrt(dm / dp), ONE)


def trace_intertwiner_weight(pa: PAInstance, levels: int = 3) -> Weight:
    """The positive central z with TR^l(x) = TR^r(x z) on P_(+1).

    Also checks TR^l(x) = TR^r(x z_(+k)) for k <= ``levels``; a failure
    raises ``WeightError``.
    """
    dm, dp = modulus(pa)
    if dm != dp:
        raise ModulusError("trace intertwiner needs a unimodular instance")
    bs = pa.basis_elements(PLUS1)
    A = [[pa.trace_r(pa.M(bi, bj)) for bj in bs] for bi in bs]
    rhs = [pa.trace_l(bi) for bi in bs]
    sol = solve(A, rhs)
    if sol is None:
        raise WeightError("no solution for the trace intertwiner")
    z = Element(PLUS1, {lab: c for lab, c in zip(pa.basis(PLUS1), sol)})
    # positivity: the form (x, y) -> TR^r(x* z y) must be positive definite
    G = [[pa.trace_r(pa.M(pa.M(pa.star(bi), z), bj)) for bj in bs] for bi in bs]
    if definiteness(G) != "positive-definite":
        raise WeightError("trace intertwiner is not positive")
    w = make_weight(pa, z, K=levels)
    for k in range(1, levels + 1):
        c = Color(Sign.PLUS, k)
        zk = w.level(c)
        for b in pa.basis_elements(c):
            if pa.trace_l(b) != pa.trace_r(pa.M(b, zk)):
                raise WeightError("level trace identity fails", c, next(iter(b.coeffs)))
    return w


def _orthogonal_idempotents(pa: PAInstance) -> bool:
    bs = pa.basis_elements(PLUS1)
    for i, x in enumerate(bs):
        for j, y in enumerate(bs):
            p = pa.M(x, y)
            if p != (x if i == j else pa.zero(PLUS1)):
                return False
    return True


def element_root(pa: PAInstance, z: Element, p: int) -> Element:
    """Coefficientwise p-th root (p a power of two) of a positive z in P_(+1).

    Needs the basis of P_(+1) to consist of orthogonal idempotents, or
    P_(+1) to be one-dimensional.
    """
    if p & (p - 1) or p < 1:
        raise ValueError("p must be a power of two")
    if not _orthogonal_idempotents(pa):
        u = pa.unit(PLUS1)
        if len(pa.basis(PLUS1)) == 1:
            lab = next(iter(u.coeffs))
            c = z[lab] / u[lab]
            r = c
            q = p
            while q > 1:
                r, q = sqrt(r), q // 2
            return u * r
        raise NotImplementedError("roots need a basis of orthogonal idempotents")

    def root(c):
        q = p
        while q > 1:
            c, q = sqrt(c), q // 2
        return c

    return z.map(root)


def sphericalize(pa: PAInstance) -> PAInstance:
    """Perturb by (w^1/4, w^1/4) with w the trace-intertwiner weight.

    The decomposition actually used is (sqrt(r) u, u) with u = (w/r)^1/4
    and r a coefficient of w; it differs from (w^1/4, w^1/4) by the scalar
    rescaling (mu a, b/mu), which leaves every action unchanged, and keeps
    the arithmetic inside the radical field.
    """
    q = pa if is_unimodular(pa) else normalize(pa)
    w = trace_intertwiner_weight(q)
    if w.is_scalar():
        return q
    lab = next(iter(w.z.coeffs))
    r = w.z[lab]
    u = element_root(q, w.z * r.inverse(), 4)
    return perturb(q, u * sqrt(r), u)


def symmetric_perturbation(pa: PAInstance, lam) -> PAInstance:
    """P^(h, h) with h = z^1/2 and z = lambda^-1 (-,-) + lambda (+,+)."""
    lam = scalar(lam)
    h = element_root(pa, diagonal_weight(pa, lam.inverse(), lam), 2)
    return perturb(pa, h, h)


def sweep_index(pa: PAInstance, lambdas) -> list[tuple[Scalar, Scalar, Scalar, bool]]:
    """Rows (lambda, modulus, index, spherical) for z = lambda^-1 (-,-) + lambda (+,+)."""
    from .pacore import is_spherical

    rows = []
    for lam in lambdas:
        lam = scalar(lam)
        if not is_positive(lam):
            raise ValueError("lambda must be positive")
        q = symmetric_perturbation(pa, lam)
        dm, dp = modulus(q)
        if dm != dp:
            raise ModulusError(f"perturbation at lambda={lam} is not unimodular")
        rows.append((lam, dp, dm * dp, is_spherical(q)))
    return rows


def conjugation_map(pa: PerturbedPA):
    """Isomorphism P^(a,b) -> P^(ab,1): x -> D x D^-1, D = b^-1 on unshaded-left strands."""
    base, b, binv = pa.base, pa.b, pa.binv

    def side(color, c):
        x = base.unit(color)
        for i in range(1, color.k + 1):
            if color.region(i) == Sign.PLUS:
                x = base.insert(c, i, x)
        return x

    cache: dict = {}

    def phi(x: Element) -> Element:
        c = x.color
        if c not in cache:
            cache[c] = (side(c, binv), side(c, b))
        d, dinv = cache[c]
        return base.M(base.M(d, x), dinv)

    target = perturb(base, pa.z, ONE)
    return phi, target
