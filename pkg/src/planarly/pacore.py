"""Planar algebras presented by the actions of a generating set of tangles.

Conventions used throughout the package
---------------------------------------

* A color is a pair ``(eps, k)``: ``eps`` is the sign of the region to the
  left of the first strand and ``k`` is the number of strands.  A box of
  color ``(eps, n)`` has ``2n`` boundary points, numbered ``0..2n-1``
  clockwise from the top-left: the top row left to right, then the bottom
  row right to left.
* ``M(x, y)`` stacks ``x`` above ``y``.
* ``RI`` adds a strand on the right, ``LI`` one on the left (flipping the
  color sign).  ``E`` of color ``(eps, k+1)`` lives in ``P_(eps, k+2)`` and
  caps strands ``k+1, k+2`` above and below.  ``RE`` closes the last
  strand around the right, ``LE`` the first one around the left.
* ``delta(eps)`` is the value of a closed loop drawn on a background region
  of sign ``eps``, so the modulus is ``(delta(-), delta(+))``.
* ``rho`` is the one-click rotation ``P_(eps, n) -> P_(-eps, n)`` which moves
  the top-left point to the bottom-left corner; on boundary words it is the
  cyclic shift ``w -> w[1:] + w[:1]``.  It is defined generically as
  ``LE(M(RI(x), V))`` where ``V`` is a staircase of ``E`` tangles.

Elements are sparse: coefficients are keyed by basis labels, so large
intermediate levels are never enumerated.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .numeric import ONE, ZERO, Scalar, scalar
from .signs import Sign

__all__ = [
    "Color",
    "Element",
    "PAInstance",
    "ColorError",
    "ModulusError",
    "TangleExpr",
    "eval_tangle",
    "modulus",
    "index",
    "trace_tangles",
    "is_spherical",
    "gram_matrix",
    "gram_positivity",
    "definiteness",
    "check_morphism",
    "MorphismReport",
    "extend_positive_morphism",
    "dual",
    "DualPA",
    "column_echelon",
    "solve",
]


class ColorError(ValueError):
    pass


class ModulusError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Color:
    sign: Sign
    k: int

    def __post_init__(self):
        object.__setattr__(self, "sign", Sign(self.sign))
        if self.k < 0:
            raise ValueError("color size must be nonnegative")

    def __str__(self) -> str:
        return f"{self.sign}{self.k}"

    @classmethod
    def parse(cls, text: str) -> "Color":
        return cls(Sign.parse(text[0]), int(text[1:]))

    def flip(self, times: int = 1) -> "Color":
        return Color(self.sign.flip(times), self.k)

    def region(self, i: int) -> Sign:
        """Sign of the region just left of strand i (1-based)."""
        return self.sign.flip(i - 1)


def C(sign, k) -> Color:
    return Color(sign, k)


# ---------------------------------------------------------------------------
# sparse vectors


def _acc(out: dict, vec: Mapping, c: Scalar) -> None:
    for lab, v in vec.items():
        w = out.get(lab)
        w = v * c if w is None else w + v * c
        if w.is_zero():
            out.pop(lab, None)
        else:
            out[lab] = w


def _clean(d: Mapping) -> dict:
    return {k: scalar(v) for k, v in d.items() if not scalar(v).is_zero()}


class Element:
    """A vector of ``P_color`` in the distinguished basis."""

    __slots__ = ("color", "coeffs")

    def __init__(self, color: Color, coeffs: Mapping | None = None):
        self.color = color
        self.coeffs = _clean(coeffs or {})

    @classmethod
    def basis(cls, color: Color, label, coef=ONE) -> "Element":
        return cls(color, {label: scalar(coef)})

    def __getitem__(self, label) -> Scalar:
        return self.coeffs.get(label, ZERO)

    def __iter__(self) -> Iterator:
        return iter(self.coeffs.items())

    def __len__(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise TypeError("expected an Element")
        if other.color != self.color:
            raise ColorError(f"color mismatch {self.color} vs {other.color}")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        out = dict(self.coeffs)
        _acc(out, other.coeffs, ONE)
        return Element(self.color, out)

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        out = dict(self.coeffs)
        _acc(out, other.coeffs, -ONE)
        return Element(self.color, out)

    def __neg__(self) -> "Element":
        return Element(self.color, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, c) -> "Element":
        c = scalar(c)
        return Element(self.color, {k: v * c for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Element":
        return self * scalar(c).inverse()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element) or other.color != self.color:
            return NotImplemented if not isinstance(other, Element) else False
        return (self - other).is_zero()

    def __hash__(self):
        return hash(self.color)

    def __repr__(self) -> str:
        return f"Element({self.color}, {self.coeffs!r})"

    def map(self, f: Callable[[Scalar], Scalar]) -> "Element":
        return Element(self.color, {k: f(v) for k, v in self.coeffs.items()})

    def to_json(self) -> dict:
        return {
            "color": str(self.color),
            "coeffs": [[_label_json(k), str(v)] for k, v in sorted(self.coeffs.items(), key=lambda t: repr(t[0]))],
        }


def _label_json(label):
    if isinstance(label, tuple):
        return [_label_json(x) for x in label]
    if isinstance(label, frozenset):
        return sorted(_label_json(x) for x in label)
    if isinstance(label, Sign):
        return str(label)
    return label


# ---------------------------------------------------------------------------
# the instance protocol


class PAInstance:
    """Base class; subclasses implement the per-label generator actions.

    Required: ``delta``, ``basis``, ``_unit``, ``_m``, ``_ri``, ``_li``,
    ``_e``, ``_re``, ``_le``, ``_star``.  Optional fast paths: ``_rho``,
    ``_insert``, ``_mult``.
    """

    name = "instance"
    rank_label = None

    def __init__(self):
        self._cache: dict = {}

    # -- required hooks -------------------------------------------------
    def delta(self, sign: Sign) -> Scalar:
        raise NotImplementedError

    def basis(self, color: Color) -> list:
        raise NotImplementedError

    def _unit(self, color: Color) -> dict:
        raise NotImplementedError

    def _m(self, color: Color, a, b) -> dict:
        raise NotImplementedError

    def _ri(self, color: Color, a) -> dict:
        raise NotImplementedError

    def _li(self, color: Color, a) -> dict:
        raise NotImplementedError

    def _e(self, color: Color) -> dict:
        raise NotImplementedError

    def _re(self, color: Color, a) -> dict:
        raise NotImplementedError

    def _le(self, color: Color, a) -> dict:
        raise NotImplementedError

    def _star(self, color: Color, a) -> dict:
        raise NotImplementedError

    # -- helpers ----------------------------------------------------------
    def dim(self, color: Color) -> int:
        return len(self.basis(color))

    def element(self, color: Color, coeffs: Mapping | None = None) -> Element:
        return Element(color, coeffs)

    def basis_elements(self, color: Color) -> list[Element]:
        return [Element.basis(color, b) for b in self.basis(color)]

    def zero(self, color: Color) -> Element:
        return Element(color)

    def _unary(self, op: str, fn, x: Element, out_color: Color) -> Element:
        out: dict = {}
        for lab, c in x.coeffs.items():
            key = (op, x.color, lab)
            img = self._cache.get(key)
            if img is None:
                img = _clean(fn(x.color, lab))
                self._cache[key] = img
            _acc(out, img, c)
        return Element(out_color, out)

    def _mult(self, color: Color, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                img = self._m(color, a, b)
                if img:
                    _acc(out, img, ca * cb)
        return out

    # -- generator actions -------------------------------------------------
    def M(self, x: Element, y: Element) -> Element:
        if x.color != y.color:
            raise ColorError(f"M needs equal colors, got {x.color} and {y.color}")
        return Element(x.color, self._mult(x.color, x.coeffs, y.coeffs))

    def unit(self, color: Color) -> Element:
        key = ("1", color)
        if key not in self._cache:
            self._cache[key] = _clean(self._unit(color))
        return Element(color, self._cache[key])

    def I(self, x: Element) -> Element:
        return Element(x.color, x.coeffs)

    def RI(self, x: Element) -> Element:
        return self._unary("RI", self._ri, x, Color(x.color.sign, x.color.k + 1))

    def LI(self, x: Element) -> Element:
        return self._unary("LI", self._li, x, Color(-x.color.sign, x.color.k + 1))

    def RE(self, x: Element) -> Element:
        if x.color.k < 1:
            raise ColorError("RE needs at least one strand")
        return self._unary("RE", self._re, x, Color(x.color.sign, x.color.k - 1))

    def LE(self, x: Element) -> Element:
        if x.color.k < 1:
            raise ColorError("LE needs at least one strand")
        return self._unary("LE", self._le, x, Color(-x.color.sign, x.color.k - 1))

    def E(self, color: Color) -> Element:
        """The tangle E_color for color (eps, k+1); the result lies in P_(eps, k+2)."""
        if color.k < 1:
            raise ColorError("E needs color size >= 1")
        key = ("E", color)
        if key not in self._cache:
            self._cache[key] = _clean(self._e(color))
        return Element(Color(color.sign, color.k + 1), self._cache[key])

    def star(self, x: Element) -> Element:
        out: dict = {}
        for lab, c in x.coeffs.items():
            key = ("*", x.color, lab)
            img = self._cache.get(key)
            if img is None:
                img = _clean(self._star(x.color, lab))
                self._cache[key] = img
            _acc(out, img, c.conjugate() if hasattr(c, "conjugate") else c)
        return Element(x.color, out)

    # -- derived tangles --------------------------------------------------
    def E_prime(self, x: Element) -> Element:
        return self.LI(self.LE(x))

    def E_at(self, color: Color, i: int) -> Element:
        """Cup-cap on strands i, i+1 inside P_color (the i-th Jones element)."""
        n = color.k
        if not 1 <= i < n:
            raise ColorError("need 1 <= i < n")
        x = self.E(Color(color.sign, i))
        for _ in range(n - i - 1):
            x = self.RI(x)
        return x

    def staircase(self, color: Color) -> Element:
        """V = E_(n,n+1) E_(n-1,n) ... E_(1,2) in P_(eps, n+1)."""
        key = ("V", color)
        if key not in self._cache:
            n = color.k
            big = Color(color.sign, n + 1)
            v = self.E_at(big, n)
            for j in range(n - 1, 0, -1):
                v = self.M(v, self.E_at(big, j))
            self._cache[key] = v.coeffs
        return Element(Color(color.sign, color.k + 1), self._cache[key])

    def _rho(self, color: Color, a) -> dict:
        x = Element.basis(color, a)
        return self.LE(self.M(self.RI(x), self.staircase(color))).coeffs

    def rho(self, x: Element) -> Element:
        if x.color.k < 1:
            raise ColorError("rotation needs at least one strand")
        return self._unary("rho", self._rho, x, x.color.flip())

    def rho_generic(self, x: Element) -> Element:
        """The staircase rotation even when a subclass has a faster one."""
        if x.color.k < 1:
            raise ColorError("rotation needs at least one strand")
        return self._unary("rho_g", lambda c, a: PAInstance._rho(self, c, a), x, x.color.flip())

    def rot(self, x: Element, s: int) -> Element:
        n = x.color.k
        if n == 0:
            if s % 2:
                raise ColorError("cannot rotate a box without strands")
            return x
        for _ in range(s % (2 * n)):
            x = self.rho(x)
        return x

    def as_color(self, c: Element, sign: Sign) -> Element:
        """Transport a P_(+-1) element to the requested one-strand color."""
        if c.color.k != 1:
            raise ColorError("expected a one-strand element")
        return c if c.color.sign == sign else self.rho(c)

    def insert(self, c: Element, i: int, x: Element, above: bool = True) -> Element:
        """Place the one-strand element c on strand i (1-based) above or below x."""
        n = x.color.k
        if not 1 <= i <= n:
            raise ColorError(f"strand {i} out of range for {x.color}")
        c = self.as_color(c, x.color.region(i))
        fast = self._insert(c, i, x, above)
        if fast is not None:
            return fast
        lift = self.lift(c, i, n)
        return self.M(lift, x) if above else self.M(x, lift)

    def lift(self, c: Element, i: int, n: int) -> Element:
        """c on strand i of an otherwise trivial n-strand box."""
        y = c
        for _ in range(i - 1):
            y = self.LI(y)
        for _ in range(n - i):
            y = self.RI(y)
        return y

    def _insert(self, c: Element, i: int, x: Element, above: bool):
        return None

    def inverse1(self, z: Element) -> Element:
        """Inverse in the algebra P_(+-1) (dense solve on a small space)."""
        return algebra_inverse(self, z)

    # -- scalars and traces ------------------------------------------------
    def scalar_of(self, x: Element) -> Scalar:
        if x.color.k != 0:
            raise ColorError("not a level-zero element")
        u = self.unit(x.color)
        if len(u) != 1:
            raise ModulusError("P_(+-0) is not one-dimensional")
        (lab, c), = u.coeffs.items()
        extra = set(x.coeffs) - {lab}
        if extra:
            raise ModulusError("P_(+-0) is not one-dimensional")
        return x[lab] / c

    def from_scalar(self, sign: Sign, c) -> Element:
        return self.unit(Color(sign, 0)) * scalar(c)

    def trace_r(self, x: Element) -> Scalar:
        for _ in range(x.color.k):
            x = self.RE(x)
        return self.scalar_of(x)

    def trace_l(self, x: Element) -> Scalar:
        for _ in range(x.color.k):
            x = self.LE(x)
        return self.scalar_of(x)

    def trace(self, x: Element, side: str = "right") -> Scalar:
        return self.trace_r(x) if side == "right" else self.trace_l(x)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


# ---------------------------------------------------------------------------
# exact dense/sparse linear algebra helpers


def column_echelon(vectors: Sequence[Mapping], order: Sequence) -> tuple[list[dict], list]:
    """Reduced column echelon basis of the span; returns (basis, pivot labels).

    Pivots are chosen as the first nonzero label in ``order``; each basis
    vector has coefficient 1 at its pivot and 0 at every other pivot.
    """
    pos = {lab: i for i, lab in enumerate(order)}
    basis: list[dict] = []
    pivots: list = []
    for v in vectors:
        v = dict(_clean(v))
        for p, b in zip(pivots, basis):
            c = v.get(p)
            if c is not None:
                _acc(v, b, -c)
        if not v:
            continue
        p = min(v, key=lambda lab: pos[lab])
        inv = v[p].inverse()
        v = {k: c * inv for k, c in v.items()}
        for j, b in enumerate(basis):
            c = b.get(p)
            if c is not None:
                nb = dict(b)
                _acc(nb, v, -c)
                basis[j] = nb
        basis.append(v)
        pivots.append(p)
    order_idx = sorted(range(len(pivots)), key=lambda j: pos[pivots[j]])
    return [basis[j] for j in order_idx], [pivots[j] for j in order_idx]


def solve(A: list[list[Scalar]], b: list[Scalar]) -> list[Scalar] | None:
    """Exact Gauss-Jordan; returns one solution or None when inconsistent."""
    rows = [list(map(scalar, r)) + [scalar(bi)] for r, bi in zip(A, b)]
    ncol = len(A[0]) if A else 0
    piv_cols = []
    r = 0
    for col in range(ncol):
        sel = next((i for i in range(r, len(rows)) if not rows[i][col].is_zero()), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, len(rows)):
        if not rows[i][-1].is_zero():
            return None
    x = [ZERO] * ncol
    for i, col in enumerate(piv_cols):
        x[col] = rows[i][-1]
    return x


def algebra_inverse(pa: PAInstance, z: Element) -> Element:
    color = z.color
    basis = pa.basis(color)
    cols = [pa.M(z, Element.basis(color, b)) for b in basis]
    unit = pa.unit(color)
    A = [[cols[j][bi] for j in range(len(basis))] for bi in basis]
    sol = solve(A, [unit[bi] for bi in basis])
    if sol is None:
        raise ZeroDivisionError("element is not invertible")
    inv = Element(color, dict(zip(basis, sol)))
    if pa.M(inv, z) != unit:
        raise ZeroDivisionError("element is not invertible")
    return inv


def definiteness(G: list[list[Scalar]]) -> str:
    """'positive-definite', 'positive-semidefinite' or 'indefinite' (symmetric G).

    Symmetric elimination with a positive diagonal pivot at each step; the
    pivots are ratios of leading principal minors when no reordering occurs.
    Rows are kept sparse, so block-structured matrices stay cheap.
    """
    n = len(G)
    A = {i: {j: scalar(v) for j, v in enumerate(row) if not scalar(v).is_zero()} for i, row in enumerate(G)}
    active = list(range(n))
    degenerate = False
    while active:
        diag = [(i, A[i].get(i, ZERO)) for i in active]
        if any(v.sign() < 0 for _, v in diag):
            return "indefinite"
        pos = [i for i, v in diag if v.sign() > 0]
        if not pos:
            if any(A[i] for i in active):
                return "indefinite"
            degenerate = True
            break
        p = pos[0]
        inv = A[p][p].inverse()
        prow = {j: v for j, v in A[p].items() if j != p}
        for i in active:
            if i == p:
                continue
            row = A[i]
            f = row.pop(p, None)
            if f is None:
                continue
            f = f * inv
            for j, v in prow.items():
                w = row.get(j, ZERO) - f * v
                if w.is_zero():
                    row.pop(j, None)
                else:
                    row[j] = w
        del A[p]
        active = [i for i in active if i != p]
    return "positive-semidefinite" if degenerate else "positive-definite"


# ---------------------------------------------------------------------------
# tangle expressions


@dataclass(frozen=True)
class TangleExpr:
    """A standard-form composite: op applied to sub-expressions.

    ``op`` is one of ``input`` (with ``index`` and ``color``), ``I``, ``M``,
    ``RI``, ``LI``, ``RE``, ``LE``, ``E`` (nullary, with ``color``),
    ``unit`` (nullary, with ``color``), ``rho``, ``Eprime`` or ``insert``
    (with ``strand``, ``above`` and the decoration as the first argument).
    """

    op: str
    args: tuple = ()
    color: Color | None = None
    index: int = 0
    strand: int = 0
    above: bool = True

    @staticmethod
    def input(index: int, color: Color) -> "TangleExpr":
        return TangleExpr("input", (), color, index=index)

    def __call__(self, *args: "TangleExpr") -> "TangleExpr":
        return TangleExpr(self.op, tuple(args), self.color, self.index, self.strand, self.above)

    def inputs(self) -> dict[int, Color]:
        if self.op == "input":
            return {self.index: self.color}
        out: dict[int, Color] = {}
        for a in self.args:
            out.update(a.inputs())
        return out

    def size(self) -> int:
        return (0 if self.op == "input" else 1) + sum(a.size() for a in self.args)

    def __str__(self) -> str:
        if self.op == "input":
            return f"x{self.index}"
        head = self.op if self.color is None or self.args else f"{self.op}[{self.color}]"
        if not self.args:
            return head
        return f"{head}({', '.join(map(str, self.args))})"


_UNARY = {"I": "I", "RI": "RI", "LI": "LI", "RE": "RE", "LE": "LE", "rho": "rho", "Eprime": "E_prime", "star": "star"}


def eval_tangle(pa: PAInstance, expr: TangleExpr, inputs: Sequence[Element]) -> Element:
    op = expr.op
    if op == "input":
        x = inputs[expr.index]
        if expr.color is not None and x.color != expr.color:
            raise ColorError(f"input {expr.index} has color {x.color}, expected {expr.color}")
        return x
    if op == "E":
        return pa.E(expr.color)
    if op == "unit":
        return pa.unit(expr.color)
    vals = [eval_tangle(pa, a, inputs) for a in expr.args]
    if op == "M":
        return pa.M(vals[0], vals[1])
    if op == "insert":
        return pa.insert(vals[0], expr.strand, vals[1], expr.above)
    if op in _UNARY:
        return getattr(pa, _UNARY[op])(vals[0])
    raise ValueError(f"unknown tangle op {op!r}")


def TR(side: str, color: Color) -> TangleExpr:
    x = TangleExpr.input(0, color)
    step = "RE" if side == "right" else "LE"
    for _ in range(color.k):
        x = TangleExpr(step, (x,))
    return x


# ---------------------------------------------------------------------------
# structural operations


def _require_connected(pa: PAInstance) -> None:
    for s in Sign:
        if pa.dim(Color(s, 0)) != 1:
            raise ModulusError("instance is not connected: dim P_(+-0) != 1")


def modulus(pa: PAInstance) -> tuple[Scalar, Scalar]:
    """(shaded loop, unshaded loop), each computed as RE(RI(1)) at level 0."""
    _require_connected(pa)
    out = []
    for s in (Sign.MINUS, Sign.PLUS):
        one = pa.unit(Color(s, 0))
        out.append(pa.scalar_of(pa.RE(pa.RI(one))))
    return out[0], out[1]


def index(pa: PAInstance) -> Scalar:
    dm, dp = modulus(pa)
    return dm * dp


def _nonzero_modulus(pa: PAInstance) -> tuple[Scalar, Scalar]:
    dm, dp = modulus(pa)
    if dm.is_zero() or dp.is_zero():
        raise ModulusError("zero modulus")
    return dm, dp


def trace_tangles(pa: PAInstance, side: str, color: Color) -> list[Scalar]:
    _require_connected(pa)
    expr = TR(side, color)
    return [pa.scalar_of(eval_tangle(pa, expr, [b])) for b in pa.basis_elements(color)]


def is_spherical(pa: PAInstance) -> bool:
    dm, dp = _nonzero_modulus(pa)
    c = Color(Sign.PLUS, 1)
    r = trace_tangles(pa, "right", c)
    l = trace_tangles(pa, "left", c)
    return all((a / dp) == (b / dm) for a, b in zip(r, l))


def gram_matrix(pa: PAInstance, color: Color, side: str = "right") -> list[list[Scalar]]:
    """G_ij = TR(b_i* b_j) / TR(1)."""
    _nonzero_modulus(pa)
    bs = pa.basis_elements(color)
    norm = pa.trace(pa.unit(color), side)
    stars = [pa.star(b) for b in bs]
    return [[pa.trace(pa.M(si, bj), side) / norm for bj in bs] for si in stars]


def gram_positivity(pa: PAInstance, color: Color, side: str = "right") -> str:
    return definiteness(gram_matrix(pa, color, side))


# ---------------------------------------------------------------------------
# morphisms


@dataclass
class MorphismReport:
    ok: bool
    check: str = ""
    color: Color | None = None
    witness: tuple = ()
    expected: Element | None = None
    got: Element | None = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "check": self.check,
            "level": self.color.k if self.color else None,
            "color": str(self.color) if self.color else None,
            "witness": [_label_json(w) for w in self.witness],
            "expected": self.expected.to_json() if self.expected else None,
            "got": self.got.to_json() if self.got else None,
        }


MapFamily = Callable[[Element], Element]


def check_morphism(src: PAInstance, dst: PAInstance, phi: MapFamily, generator_set: int = 1, level: int = 3) -> MorphismReport:
    """Equivariance of phi over full bases for colors up to ``level``.

    The multiplication checks come first, so a map that is not even an
    algebra homomorphism is reported at M.
    """
    _nonzero_modulus(src)
    _nonzero_modulus(dst)
    for s in Sign:
        for k in range(level + 1):
            if src.dim(Color(s, k)) != dst.dim(Color(s, k)):
                raise ValueError(f"dimension mismatch at {Color(s, k)}")
    count = 0

    def fail(name, color, wit, exp, got):
        return MorphismReport(False, name, color, tuple(wit), exp, got, count)

    signs_m = (Sign.PLUS, Sign.MINUS) if generator_set == 1 else (Sign.PLUS,)
    for k in range(level + 1):
        for s in signs_m:
            c = Color(s, k)
            bs = src.basis(c)
            imgs = {b: phi(Element.basis(c, b)) for b in bs}
            for a in bs:
                for b in bs:
                    count += 1
                    exp = dst.M(imgs[a], imgs[b])
                    got = phi(src.M(Element.basis(c, a), Element.basis(c, b)))
                    if exp != got:
                        return fail(f"M_{c}", c, (a, b), exp, got)
    for k in range(level + 1):
        for s in Sign:
            c = Color(s, k)
            count += 1
            if phi(src.unit(c)) != dst.unit(c):
                return fail(f"1_{c}", c, (), dst.unit(c), phi(src.unit(c)))

    def unary(name, op_src, op_dst, c):
        nonlocal count
        for b in src.basis(c):
            count += 1
            x = Element.basis(c, b)
            exp = op_dst(phi(x))
            got = phi(op_src(x))
            if exp != got:
                return fail(f"{name}_{c}", c, (b,), exp, got)
        return None

    def nullary(name, c):
        nonlocal count
        count += 1
        exp = dst.E(c)
        got = phi(src.E(c))
        if exp != got:
            return fail(f"{name}_{c}", c, (), exp, got)
        return None

    if generator_set == 1:
        for k in range(level):
            for s in Sign:
                c = Color(s, k)
                for name, a, b in (("RI", src.RI, dst.RI), ("LI", src.LI, dst.LI)):
                    r = unary(name, a, b, c)
                    if r is not None:
                        return r
        for s in Sign:
            if level >= 2:
                r = nullary("E", Color(s, 1))
                if r is not None:
                    return r
    elif generator_set == 2:
        for k in range(level):
            r = unary("RI", src.RI, dst.RI, Color(Sign.PLUS, k))
            if r is not None:
                return r
            r = unary("LI", src.LI, dst.LI, Color(Sign.MINUS, k))
            if r is not None:
                return r
            r = unary("LE", src.LE, dst.LE, Color(Sign.PLUS, k + 1))
            if r is not None:
                return r
            if k + 2 <= level:
                r = nullary("E", Color(Sign.PLUS, k + 1))
                if r is not None:
                    return r
    else:
        raise ValueError("generator_set must be 1 or 2")
    return MorphismReport(True, checked=count)


def extend_positive_morphism(src: PAInstance, dst: PAInstance, positive: MapFamily, level: int = 3) -> MapFamily:
    """Extend maps on positive colors to all colors by x -> LE(phi(LI(x))) / delta_-.

    The positive part is first checked against every positive-color
    generator up to ``level``; a ``ValueError`` reports the first failure.
    """
    dm, dp = _nonzero_modulus(src)
    if (dm, dp) != _nonzero_modulus(dst):
        raise ValueError("moduli differ")
    inv = dm.inverse()

    def phi(x: Element) -> Element:
        if x.color.sign == Sign.PLUS:
            return positive(x)
        return dst.LE(positive(src.LI(x))) * inv

    rep = _check_positive(src, dst, positive, level)
    if not rep.ok:
        raise ValueError(f"positive part is not equivariant: {rep.check} at {rep.witness}")
    return phi


def _check_positive(src, dst, phi, level) -> MorphismReport:
    for k in range(level + 1):
        c = Color(Sign.PLUS, k)
        bs = src.basis_elements(c)
        if phi(src.unit(c)) != dst.unit(c):
            return MorphismReport(False, f"1_{c}", c)
        for x in bs:
            for y in bs:
                if phi(src.M(x, y)) != dst.M(phi(x), phi(y)):
                    return MorphismReport(False, f"M_{c}", c, (next(iter(x.coeffs)), next(iter(y.coeffs))))
            if k < level and phi(src.RI(x)) != dst.RI(phi(x)):
                return MorphismReport(False, f"RI_{c}", c, (next(iter(x.coeffs)),))
            if k >= 1:
                lhs = phi(src.LI(src.LE(x)))
                if lhs != dst.LI(dst.LE(phi(x))):
                    return MorphismReport(False, f"E'_{c}", c, (next(iter(x.coeffs)),))
        if 1 <= k < level:
            if phi(src.E(c)) != dst.E(c):
                return MorphismReport(False, f"E_{c}", c)
    return MorphismReport(True)


# ---------------------------------------------------------------------------
# n-th dual


class DualPA(PAInstance):
    """The n-th dual: level (eps, k) is the range of (LI^n LE^n)/s inside P_(eps, k+n).

    A dual tangle acts by stripping the n extra left strands, applying the
    base tangle of the shifted color, and adding the strands back.
    """

    def __init__(self, base: PAInstance, n: int):
        super().__init__()
        self.base = base
        self.n = n
        self.name = f"dual{n}({base.name})"
        self._spaces: dict = {}
        self._scale: dict = {}

    def delta(self, sign: Sign) -> Scalar:
        return self.base.delta(sign.flip(self.n))

    def _inner(self, color: Color) -> Color:
        return Color(color.sign.flip(self.n), color.k)

    def _outer(self, color: Color) -> Color:
        return Color(color.sign, color.k + self.n)

    def scale(self, sign: Sign) -> Scalar:
        if sign not in self._scale:
            b = self.base
            one = b.unit(Color(sign.flip(self.n), 0))
            y = one
            for _ in range(self.n):
                y = b.LI(y)
            for _ in range(self.n):
                y = b.LE(y)
            self._scale[sign] = b.scalar_of(y)
            if self._scale[sign].is_zero():
                raise ModulusError("zero modulus")
        return self._scale[sign]

    def _space(self, color: Color):
        if color not in self._spaces:
            b = self.base
            vecs = []
            for e in b.basis_elements(self._inner(color)):
                for _ in range(self.n):
                    e = b.LI(e)
                vecs.append(e.coeffs)
            order = b.basis(self._outer(color))
            basis, piv = column_echelon(vecs, order)
            self._spaces[color] = (basis, piv)
        return self._spaces[color]

    def basis(self, color: Color) -> list:
        return list(self._space(color)[1])

    def embed(self, x: Element) -> Element:
        basis, piv = self._space(x.color)
        out: dict = {}
        for vec, p in zip(basis, piv):
            c = x[p]
            if not c.is_zero():
                _acc(out, vec, c)
        return Element(self._outer(x.color), out)

    def coords(self, v: Element, color: Color) -> Element:
        _, piv = self._space(color)
        return Element(color, {p: v[p] for p in piv})

    def strip(self, x: Element) -> Element:
        v = self.embed(x)
        for _ in range(self.n):
            v = self.base.LE(v)
        return v / self.scale(x.color.sign)

    def wrap(self, y: Element, color: Color) -> Element:
        for _ in range(self.n):
            y = self.base.LI(y)
        return self.coords(y, color)

    def _lab(self, color, a):
        return self.strip(Element.basis(color, a))

    def _unit(self, color):
        return self.wrap(self.base.unit(self._inner(color)), color).coeffs

    def _m(self, color, a, b):
        y = self.base.M(self._lab(color, a), self._lab(color, b))
        return self.wrap(y, color).coeffs

    def _ri(self, color, a):
        return self.wrap(self.base.RI(self._lab(color, a)), Color(color.sign, color.k + 1)).coeffs

    def _li(self, color, a):
        return self.wrap(self.base.LI(self._lab(color, a)), Color(-color.sign, color.k + 1)).coeffs

    def _re(self, color, a):
        return self.wrap(self.base.RE(self._lab(color, a)), Color(color.sign, color.k - 1)).coeffs

    def _le(self, color, a):
        return self.wrap(self.base.LE(self._lab(color, a)), Color(-color.sign, color.k - 1)).coeffs

    def _e(self, color):
        return self.wrap(self.base.E(self._inner(color)), Color(color.sign, color.k + 1)).coeffs

    def _star(self, color, a):
        return self.wrap(self.base.star(self._lab(color, a)), color).coeffs


def dual(pa: PAInstance, n: int) -> PAInstance:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return pa
    _nonzero_modulus(pa)
    return DualPA(pa, n)
