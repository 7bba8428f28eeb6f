import random
from fractions import Fraction
from itertools import product
from math import comb

import pytest

from oracles import diagonal_dim, evaluate_chain_diagonal
from planarly.diagonal import (
    TLPA,
    DiagonalPA,
    block_decomposition,
    block_value,
    build,
    dims,
    expected_blocks,
)
from planarly.numeric import scalar
from planarly.pacore import Color, Element, index, is_spherical, modulus
from planarly.signs import Sign, nc_pairing_exists, tilde

P1 = Color(Sign.PLUS, 1)


def _to_frac(e: Element) -> dict:
    return {tuple(int(s) for s in w): Fraction(str(v)) for w, v in e.coeffs.items()}


def _random(pa, color, rng, terms=3):
    bs = pa.basis(color)
    picks = rng.sample(bs, min(terms, len(bs)))
    return Element(color, {p: scalar(rng.randint(-3, 3) or 1) for p in picks})


def test_dims_table():
    rows = dims(build(2), 6)
    assert [r[1] for r in rows] == [comb(2 * k, k) for k in range(7)]
    assert all(r[1] == r[2] for r in rows)


def test_dims_rank3_match_oracle():
    pa = build(3)
    for k in range(4):
        assert pa.dim(Color(Sign.PLUS, k)) == diagonal_dim(k, rank=3)


def test_modulus_is_rank():
    for r in (1, 2, 3):
        assert modulus(build(r)) == (scalar(r), scalar(r))
    assert is_spherical(build(2))
    with pytest.raises(ValueError):
        DiagonalPA(0)


UNARY = ["RE", "LE", "RI", "LI", "rho", "star"]


@pytest.mark.parametrize("seed", range(12))
def test_random_chains_match_counting_rule(seed):
    """Random unary chains versus the one-shot coloring count of the composite tangle."""
    rng = random.Random(seed)
    pa = build(2)
    n = rng.randint(1, 3)
    x = _random(pa, Color(Sign.PLUS, n), rng, terms=4)
    ops, size = [], n
    for _ in range(rng.randint(2, 6)):
        choices = [o for o in UNARY if not (o in ("RE", "LE") and size == 0) and not (o == "rho" and size == 0)]
        if size >= 4:
            choices = [o for o in choices if o not in ("RI", "LI")]
        op = rng.choice(choices)
        ops.append(op)
        size += {"RE": -1, "LE": -1, "RI": 1, "LI": 1}.get(op, 0)
    y = x
    for op in ops:
        y = getattr(pa, op)(y)
    assert _to_frac(y) == evaluate_chain_diagonal(ops, n, _to_frac(x))


def test_multiplication_by_colorings():
    pa = build(2)
    rng = random.Random(3)
    for k in range(1, 4):
        c = Color(Sign.PLUS, k)
        x, y = _random(pa, c, rng), _random(pa, c, rng)
        want: dict = {}
        for a, ca in x.coeffs.items():
            for b, cb in y.coeffs.items():
                # strings join the bottom of a (left to right) with the top of b
                if tuple(reversed(a[k:])) == b[:k]:
                    w = a[:k] + b[k:]
                    want[w] = want.get(w, 0) + ca * cb
        assert pa.M(x, y) == Element(c, want)


def test_rotation_fast_equals_generic():
    pa = build(2)
    for k in range(1, 4):
        for s in Sign:
            for b in pa.basis_elements(Color(s, k)):
                assert pa.rho(b) == pa.rho_generic(b)


def test_insert_fast_equals_generic():
    pa = build(2)
    c = Element(P1, {(Sign.MINUS, Sign.MINUS): scalar(3), (Sign.PLUS, Sign.PLUS): scalar(7)})
    for k in range(1, 4):
        col = Color(Sign.PLUS, k)
        for b in pa.basis_elements(col):
            for i in range(1, k + 1):
                for above in (True, False):
                    cc = pa.as_color(c, col.region(i))
                    lift = pa.lift(cc, i, k)
                    slow = pa.M(lift, b) if above else pa.M(b, lift)
                    assert pa.insert(c, i, b, above) == slow


@pytest.mark.parametrize("n", range(1, 8))
def test_block_criterion(n):
    cm, cp = Fraction(1, 3), Fraction(2, 3)
    seqs = list(product(Sign, repeat=n))
    vals = {s: block_value(s, cm, cp) for s in seqs}
    for e in seqs:
        for h in seqs:
            assert (vals[e] == vals[h]) == nc_pairing_exists(e + tilde(h))


def test_block_multiplicities():
    for n in range(1, 7):
        rows = block_decomposition(n, Fraction(1, 3), Fraction(2, 3))
        assert rows == expected_blocks(n, Fraction(1, 3), Fraction(2, 3))
        assert sorted(m for _, m in rows) == sorted(comb(n, j) for j in range(n + 1))
        assert sum(m * m for _, m in rows) == comb(2 * n, n)
    with pytest.raises(ValueError):
        block_decomposition(2, 1, 1)
    with pytest.raises(ValueError):
        block_decomposition(2, -1, 1)


# ---------------------------------------------------------------------------
# Temperley-Lieb instance


def test_tl_dims_and_modulus():
    pa = TLPA(2)
    assert [pa.dim(Color(Sign.PLUS, k)) for k in range(6)] == [1, 1, 2, 5, 14, 42]
    assert modulus(pa) == (2, 2)
    assert modulus(TLPA(3, 5)) == (3, 5)
    assert index(TLPA(3, 5)) == 15


def test_tl_rotation_matches_generic():
    pa = TLPA(scalar(3))
    for k in range(1, 4):
        for s in Sign:
            for b in pa.basis_elements(Color(s, k)):
                assert pa.rho(b) == pa.rho_generic(b)
                assert pa.rot(b, 2 * k) == b


def test_tl_is_spherical():
    assert is_spherical(TLPA(2))
    assert is_spherical(TLPA(scalar(3)))
