"""Exact scalars: rationals extended by square roots, with a float fallback.

An exact scalar is stored as a map ``radicand -> rational coefficient`` where
each radicand is a square-free positive integer (``1`` stands for the rational
part).  Products of radicals are renormalized to square-free monomials, so the
representation is canonical and equality is plain dictionary equality.

A float scalar carries a double and compares with absolute tolerance 1e-9.
Mixing the two backends yields a float.
"""

from __future__ import annotations

import math
import os
import warnings
from fractions import Fraction
from functools import lru_cache
from typing import Union

__all__ = [
    "Scalar",
    "InexactSqrtWarning",
    "FLOAT_TOL",
    "ZERO",
    "ONE",
    "sqrt",
    "is_positive",
    "approx_eq",
    "scalar",
    "default_backend",
]

FLOAT_TOL = 1e-9

Number = Union[int, Fraction, float, "Scalar", str]


class InexactSqrtWarning(RuntimeWarning):
    """Emitted when a square root cannot be represented exactly."""


def default_backend() -> str:
    backend = os.environ.get("PLANARLY_BACKEND", "exact").strip().lower()
    if backend not in ("exact", "float"):
        raise ValueError(f"PLANARLY_BACKEND must be 'exact' or 'float', got {backend!r}")
    return backend


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def _split_square(n: int) -> tuple[int, int]:
    """Return (s, r) with n = s*s*r and r square-free (n > 0)."""
    s, r = 1, 1
    m = n
    p = 2
    limit = 100_000
    while p * p <= m and p <= limit:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                r *= p
        p += 1 if p == 2 else 2
    if m > 1:
        root = math.isqrt(m)
        if root * root == m:
            s *= root
        else:
            r *= m
    return s, r


def _rad_mul(d1: int, d2: int) -> tuple[int, int]:
    """sqrt(d1)*sqrt(d2) = c*sqrt(d) for square-free d1, d2; returns (c, d)."""
    if d1 == 1:
        return 1, d2
    if d2 == 1:
        return 1, d1
    g = math.gcd(d1, d2)
    return g, (d1 // g) * (d2 // g)


def _fmt_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Scalar:
    """Immutable field element; see module docstring."""

    __slots__ = ("_t", "_f")

    def __init__(self, value: Number = 0, backend: str | None = None):
        if isinstance(value, Scalar):
            self._t, self._f = value._t, value._f
            return
        if backend is None:
            backend = "float" if isinstance(value, float) else "exact"
        if backend == "float":
            self._t = None
            self._f = float(Scalar(value)) if isinstance(value, str) else float(value)
            return
        if isinstance(value, str):
            parsed = Scalar.parse(value)
            self._t, self._f = parsed._t, parsed._f
            return
        q = Fraction(value)
        self._t = {1: q} if q else {}
        self._f = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> Scalar:
        obj = object.__new__(cls)
        obj._t = {d: c for d, c in terms.items() if c}
        obj._f = None
        return obj

    @classmethod
    def _float(cls, x: float) -> Scalar:
        obj = object.__new__(cls)
        obj._t = None
        obj._f = float(x)
        return obj

    @classmethod
    def radical(cls, d: int, coeff: Fraction | int = 1) -> Scalar:
        """coeff * sqrt(d) for a positive integer d."""
        if d <= 0:
            raise ValueError("radicand must be positive")
        s, r = _split_square(d)
        return cls._raw({r: Fraction(coeff) * s})

    # ---- inspection -------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self._t is not None

    @property
    def is_rational(self) -> bool:
        return self._t is not None and all(d == 1 for d in self._t)

    def rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self._t.get(1, Fraction(0))

    def radicands(self) -> tuple[int, ...]:
        return tuple(sorted(self._t)) if self._t is not None else ()

    def terms(self) -> dict[int, Fraction]:
        if self._t is None:
            raise ValueError("float scalar has no exact terms")
        return dict(self._t)

    def is_zero(self) -> bool:
        if self._t is not None:
            return not self._t
        return abs(self._f) <= FLOAT_TOL

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __float__(self) -> float:
        if self._t is None:
            return self._f
        return sum((float(c) * math.sqrt(d) for d, c in self._t.items()), 0.0)

    def to_float(self) -> Scalar:
        return Scalar._float(float(self))

    # ---- arithmetic -------------------------------------------------

    @staticmethod
    def _coerce(other) -> Scalar | None:
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Scalar._raw({1: q})
        if isinstance(other, float):
            return Scalar._float(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._t is None or o._t is None:
            return Scalar._float(float(self) + float(o))
        out = dict(self._t)
        for d, c in o._t.items():
            out[d] = out.get(d, 0) + c
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        if self._t is None:
            return Scalar._float(-self._f)
        return Scalar._raw({d: -c for d, c in self._t.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._t is None or o._t is None:
            return Scalar._float(float(self) * float(o))
        a, b = self._t, o._t
        if len(a) == 1 and 1 in a:
            q = a[1]
            return Scalar._raw({d: q * c for d, c in b.items()})
        if len(b) == 1 and 1 in b:
            q = b[1]
            return Scalar._raw({d: q * c for d, c in a.items()})
        out: dict[int, Fraction] = {}
        for d1, c1 in a.items():
            for d2, c2 in b.items():
                g, d = _rad_mul(d1, d2)
                out[d] = out.get(d, 0) + c1 * c2 * g
        return Scalar._raw(out)

    __rmul__ = __mul__

    def _conj(self, p: int) -> Scalar:
        return Scalar._raw({d: (-c if d % p == 0 else c) for d, c in self._t.items()})

    def inverse(self) -> Scalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        if self._t is None:
            return Scalar._float(1.0 / self._f)
        primes = sorted({p for d in self._t if d != 1 for p in _prime_factors(d)})
        if not primes:
            return Scalar._raw({1: 1 / self._t[1]})
        # x^{-1} = conj(x) / (x * conj(x)); the denominator no longer involves p
        p = primes[-1]
        c = self._conj(p)
        return c * (self * c).inverse()

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # ---- comparison -------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._t is not None and o._t is not None:
            return self._t == o._t
        return abs(float(self) - float(o)) <= FLOAT_TOL

    def __hash__(self):
        if self._t is not None and self.is_rational:
            return hash(self.rational())
        if self._t is not None:
            return hash(frozenset(self._t.items()))
        return hash(round(self._f, 6))

    def sign(self) -> int:
        """-1, 0 or 1 under the real embedding."""
        if self._t is None:
            return 0 if abs(self._f) <= FLOAT_TOL else (1 if self._f > 0 else -1)
        if not self._t:
            return 0
        if self.is_rational:
            q = self._t[1]
            return 1 if q > 0 else -1
        # interval refinement: each sqrt(d) is enclosed in [isqrt(d*4^b), +1] / 2^b
        bits = 16
        while True:
            scale = 1 << bits
            lo = hi = Fraction(0)
            for d, c in self._t.items():
                r = math.isqrt(d * scale * scale)
                r_lo = Fraction(r, scale)
                r_hi = r_lo if r * r == d * scale * scale else Fraction(r + 1, scale)
                if c > 0:
                    lo += c * r_lo
                    hi += c * r_hi
                else:
                    lo += c * r_hi
                    hi += c * r_lo
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    # ---- text -------------------------------------------------------

    def __str__(self) -> str:
        if self._t is None:
            return repr(self._f)
        if not self._t:
            return "0"
        parts = []
        for d in sorted(self._t):
            c = self._t[d]
            if d == 1:
                parts.append(_fmt_rational(c))
            elif c == 1:
                parts.append(f"sqrt({d})")
            elif c == -1:
                parts.append(f"-sqrt({d})")
            else:
                parts.append(f"{_fmt_rational(c)}*sqrt({d})")
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"

    @classmethod
    def parse(cls, text: str, backend: str | None = None) -> Scalar:
        """Inverse of ``str``; decimal strings become exact unless backend is float."""
        text = text.strip().replace(" ", "")
        if not text:
            raise ValueError("empty scalar string")
        if backend == "float":
            return cls._float(float(cls.parse(text)))
        total = ZERO
        for part in text.split("+"):
            if not part:
                raise ValueError(f"malformed scalar {text!r}")
            if "sqrt(" in part:
                head, _, rest = part.partition("sqrt(")
                if not rest.endswith(")"):
                    raise ValueError(f"malformed radical {part!r}")
                d = int(rest[:-1])
                head = head.rstrip("*")
                coeff = Fraction(1) if head in ("",) else (Fraction(-1) if head == "-" else Fraction(head))
                total = total + cls.radical(d, coeff)
            else:
                try:
                    total = total + cls._raw({1: Fraction(part)})
                except (ValueError, ZeroDivisionError) as exc:
                    raise ValueError(f"malformed scalar {text!r}") from exc
        return total


ZERO = Scalar._raw({})
ONE = Scalar._raw({1: Fraction(1)})


def scalar(value: Number, backend: str | None = None) -> Scalar:
    """Build a scalar; strings honour PLANARLY_BACKEND when no backend is given."""
    if isinstance(value, Scalar):
        return value
    if backend is None:
        backend = default_backend() if isinstance(value, str) else None
    if isinstance(value, str):
        return Scalar.parse(value, backend)
    return Scalar(value, backend)


def _sqrt_rational(q: Fraction) -> Scalar:
    s_num, r_num = _split_square(q.numerator * q.denominator)
    return Scalar._raw({r_num: Fraction(s_num, q.denominator)})


def sqrt(x: Number) -> Scalar:
    """Square root of a nonnegative scalar, exact whenever it stays in the field."""
    x = scalar(x)
    if x.sign() < 0:
        raise ValueError(f"sqrt of negative value {x}")
    if x.is_zero():
        return ZERO if x.is_exact else Scalar._float(0.0)
    if not x.is_exact:
        return Scalar._float(math.sqrt(max(x._f, 0.0)))
    if x.is_rational:
        return _sqrt_rational(x.rational())
    t = x._t
    if len(t) == 2 and 1 in t:
        # denest sqrt(a + b sqrt(d)) = sqrt(p) +- sqrt(q) when a^2 - b^2 d is a square
        (d,) = [k for k in t if k != 1]
        a, b = t[1], t[d]
        disc = a * a - b * b * d
        if disc >= 0:
            c = _sqrt_rational(disc)
            if c.is_rational:
                cq = c.rational()
                p, q = (a + cq) / 2, (a - cq) / 2
                if p >= 0 and q >= 0:
                    y = _sqrt_rational(p) + (1 if b > 0 else -1) * _sqrt_rational(q)
                    if y * y == x:
                        return y
    warnings.warn(f"sqrt({x}) is not exact in the radical field; using float", InexactSqrtWarning)
    return Scalar._float(math.sqrt(float(x)))


def is_positive(x: Number) -> bool:
    return scalar(x).sign() > 0


def approx_eq(x: Number, y: Number, tol: Number = FLOAT_TOL) -> bool:
    x, y = scalar(x), scalar(y)
    if x.is_exact and y.is_exact:
        return x == y
    return abs(float(x) - float(y)) <= float(tol)
