"""The strict 2-category of a planar algebra, and pivotal structures from weights.

Objects are pairs ``(eps, k)``; here ``eps`` is the sign of the region to
the right of the ``k`` points.  A 1-cell ``f: (eps, k) -> (eps, l)`` is an
element of ``P_((-)^k eps, (k+l)/2)`` read as a box with ``l`` points on
top and ``k`` below: its boundary word is the top row left to right
followed by the bottom row right to left.  Composition stacks boxes, the
tensor product places them side by side, and ``x^#`` is the rotation by
``l`` clicks.

Everything is computed by gluing boundary words with rotations, ``M``,
``RI``, ``LI`` and ``RE`` of the underlying instance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .numeric import ONE
from .pacore import Color, ColorError, Element, PAInstance, algebra_inverse
from .perturb import Weight, make_weight
from .signs import Sign

__all__ = [
    "Obj",
    "Mor",
    "concat",
    "cap",
    "glue",
    "identity",
    "compose_mor",
    "tensor_mor",
    "dual_mor",
    "dual_obj",
    "evaluation",
    "coevaluation",
    "mor_basis",
    "PivotalCandidate",
    "weight_to_pivotal",
    "pivotal_to_weight",
    "verify_pivotal",
    "noncentral_candidate",
]


@dataclass(frozen=True)
class Obj:
    sign: Sign
    k: int

    def __str__(self) -> str:
        return f"{Sign(self.sign)}{self.k}"


@dataclass(frozen=True, eq=False)
class Mor:
    src: Obj
    tgt: Obj
    elem: Element

    def __eq__(self, other) -> bool:
        return isinstance(other, Mor) and self.src == other.src and self.tgt == other.tgt and self.elem == other.elem

    def __hash__(self):
        return hash((self.src, self.tgt))


def carrier(src: Obj, tgt: Obj) -> Color:
    if src.sign != tgt.sign or (src.k - tgt.k) % 2:
        raise ColorError(f"no morphisms {src} -> {tgt}")
    return Color(Sign(src.sign).flip(src.k), (src.k + tgt.k) // 2)


# ---------------------------------------------------------------------------
# word gluing


def concat(pa: PAInstance, x: Element, y: Element) -> Element:
    """The box whose boundary word is word(x) + word(y); both share a sign."""
    if x.color.sign != y.color.sign:
        raise ColorError("concat needs equal signs")
    a, b = x.color.k, y.color.k
    X = pa.rot(x, a)
    for _ in range(b):
        X = pa.RI(X)
    Y = y
    for _ in range(a):
        Y = pa.LI(Y)
    return pa.rot(pa.M(X, Y), a + 2 * b)


def cap(pa: PAInstance, x: Element, p: int) -> Element:
    """Join boundary points p and p+1 (cyclically); the survivors keep their order."""
    n = x.color.k
    if n < 1:
        raise ColorError("nothing to cap")
    p %= 2 * n
    s = (p - (n - 1)) % (2 * n)
    y = pa.RE(pa.rot(x, s))
    if n == 1:
        return y
    removed = {p, (p + 1) % (2 * n)}
    m0 = min(i for i in range(2 * n) if i not in removed)
    # position of old index m0 in y
    for t in range(2 * n - 2):
        old = (t + s) % (2 * n) if t <= n - 2 else (t + 2 + s) % (2 * n)
        if old == m0:
            return pa.rot(y, t)
    raise AssertionError("unreachable")


def glue(pa: PAInstance, x: Element, y: Element, g: int) -> Element:
    """Concatenate, then join the last g points of x to the first g of y."""
    z = concat(pa, x, y)
    a = x.color.k
    for j in range(g):
        z = cap(pa, z, 2 * a - 1 - j)
    return z


# ---------------------------------------------------------------------------
# 1-cells


def identity(pa: PAInstance, X: Obj) -> Mor:
    return Mor(X, X, pa.unit(carrier(X, X)))


def mor_basis(pa: PAInstance, src: Obj, tgt: Obj) -> list[Mor]:
    return [Mor(src, tgt, e) for e in pa.basis_elements(carrier(src, tgt))]


def compose_mor(pa: PAInstance, f: Mor, g: Mor) -> Mor:
    """f o g (g first)."""
    if g.tgt != f.src:
        raise ColorError(f"cannot compose {f.src}->{f.tgt} after {g.src}->{g.tgt}")
    e = glue(pa, f.elem, g.elem, f.src.k)
    return Mor(g.src, f.tgt, _recolor(e, carrier(g.src, f.tgt)))


def _recolor(e: Element, color: Color) -> Element:
    if e.color != color:
        raise ColorError(f"internal color mismatch {e.color} vs {color}")
    return e


def tensor_mor(pa: PAInstance, f: Mor, g: Mor) -> Mor:
    """f on the left, g on the right."""
    if Sign(g.src.sign).flip(g.src.k) != f.src.sign:
        raise ColorError("regions do not match for the tensor product")
    m, n = f.src.k, f.tgt.k
    e = pa.rot(concat(pa, pa.rot(f.elem, n), g.elem), m)
    src = Obj(g.src.sign, m + g.src.k)
    tgt = Obj(g.tgt.sign, n + g.tgt.k)
    return Mor(src, tgt, _recolor(e, carrier(src, tgt)))


def dual_obj(X: Obj) -> Obj:
    return Obj(Sign(X.sign).flip(X.k), X.k)


def dual_mor(pa: PAInstance, f: Mor) -> Mor:
    e = pa.rot(f.elem, f.tgt.k)
    src, tgt = dual_obj(f.tgt), dual_obj(f.src)
    return Mor(src, tgt, _recolor(e, carrier(src, tgt)))


def evaluation(pa: PAInstance, X: Obj) -> Mor:
    """X^# (x) X -> 1: nested cups."""
    src = Obj(X.sign, 2 * X.k)
    tgt = Obj(X.sign, 0)
    return Mor(src, tgt, pa.unit(Color(X.sign, X.k)))


def coevaluation(pa: PAInstance, X: Obj) -> Mor:
    """1 -> X (x) X^#: nested caps."""
    s = Sign(X.sign).flip(X.k)
    return Mor(Obj(s, 0), Obj(s, 2 * X.k), pa.unit(Color(s, X.k)))


# ---------------------------------------------------------------------------
# pivotal structures


@dataclass
class PivotalCandidate:
    pa: PAInstance
    a: dict = field(default_factory=dict)  # Obj -> Element (carrier of Mor(X, X))
    source: Weight | None = None
    _inv: dict = field(default_factory=dict, repr=False)

    def at(self, X: Obj) -> Mor:
        e = self.a.get(X)
        if e is None:
            if self.source is not None:
                e = self.source.level(Color(Sign(X.sign).flip(X.k), X.k))
            else:
                e = self.pa.unit(carrier(X, X))
            self.a[X] = e
        return Mor(X, X, e)

    def inverse(self, X: Obj) -> Mor:
        if X not in self._inv:
            self._inv[X] = algebra_inverse(self.pa, self.at(X).elem)
        return Mor(X, X, self._inv[X])


def weight_to_pivotal(w: Weight) -> PivotalCandidate:
    return PivotalCandidate(w.pa, source=w)


def pivotal_to_weight(a: PivotalCandidate, K: int = 3) -> Weight:
    z = a.at(Obj(Sign.MINUS, 1)).elem
    return make_weight(a.pa, z, K)


def _objects(K: int):
    for k in range(K + 1):
        for s in Sign:
            yield Obj(s, k)


def verify_pivotal(a: PivotalCandidate, K: int = 3, stop_first: bool = False) -> list[dict]:
    """All failures of naturality, the tensor rule, and a_X^# = a_(X^#)^-1."""
    pa = a.pa
    fails: list[dict] = []

    def record(check, level, witness, expected=None, got=None):
        fails.append(
            {
                "check": check,
                "level": level,
                "witness": witness,
                "expected": expected.to_json() if expected is not None else None,
                "got": got.to_json() if got is not None else None,
            }
        )
        return stop_first

    for X in _objects(K):
        for l in range(K + 1):
            if (X.k - l) % 2:
                continue
            Y = Obj(X.sign, l)
            ax, ayinv = a.at(X), a.inverse(Y)
            for i, f in enumerate(mor_basis(pa, X, Y)):
                g = compose_mor(pa, ayinv, compose_mor(pa, f, ax))
                if g != f:
                    if record("naturality", max(X.k, l), [str(X), str(Y), i], f.elem, g.elem):
                        return fails
    for s in Sign:
        for k in range(K + 1):
            for l in range(K + 1 - k):
                X = Obj(s, k)
                Y = Obj(Sign(s).flip(k), l)
                lhs = tensor_mor(pa, a.at(Y), a.at(X))
                rhs = a.at(Obj(s, k + l))
                if lhs != rhs:
                    if record("tensor", k + l, [str(Y), str(X)], rhs.elem, lhs.elem):
                        return fails
    # threefold tensor: a on X1 (x) X2 (x) X3 is the tensor of the three a's
    for s in Sign:
        for k3 in range(K + 1):
            for k2 in range(K + 1 - k3):
                for k1 in range(K + 1 - k3 - k2):
                    X3 = Obj(s, k3)
                    X2 = Obj(Sign(s).flip(k3), k2)
                    X1 = Obj(Sign(s).flip(k3 + k2), k1)
                    lhs = tensor_mor(pa, a.at(X1), tensor_mor(pa, a.at(X2), a.at(X3)))
                    rhs = a.at(Obj(s, k1 + k2 + k3))
                    if lhs != rhs:
                        if record("tensor3", k1 + k2 + k3, [str(X1), str(X2), str(X3)], rhs.elem, lhs.elem):
                            return fails
    for X in _objects(K):
        if X.k == 0:
            continue
        lhs = dual_mor(pa, a.at(X))
        rhs = a.inverse(dual_obj(X))
        if lhs != rhs:
            if record("dual", X.k, [str(X)], rhs.elem, lhs.elem):
                return fails
    return fails


def noncentral_candidate(pa: PAInstance) -> PivotalCandidate:
    """Identities everywhere except a_(+-3) = 1 + E_1, which is not central."""
    cand = PivotalCandidate(pa)
    for s in Sign:
        X = Obj(s, 3)
        c = carrier(X, X)
        cand.a[X] = pa.unit(c) + pa.E_at(c, 1)
    return cand
