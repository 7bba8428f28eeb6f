"""Acceptance suite: twelve end-to-end checks, one PASS/FAIL line each.

Run under pytest (``pytest tests/test_acceptance.py -s`` shows the lines)
or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
import warnings
from fractions import Fraction
from itertools import product
from math import comb
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import diagonal_dim, nc_pairing_brute  # noqa: E402
from planarly import gjs  # noqa: E402
from planarly.bicat import noncentral_candidate, verify_pivotal, weight_to_pivotal  # noqa: E402
from planarly.diagonal import block_decomposition, build  # noqa: E402
from planarly.numeric import ONE, InexactSqrtWarning, scalar, sqrt  # noqa: E402
from planarly.pacore import (  # noqa: E402
    Color,
    check_morphism,
    dual,
    extend_positive_morphism,
    gram_matrix,
    index,
    is_spherical,
    modulus,
)
from planarly.perturb import (  # noqa: E402
    conjugation_map,
    diagonal_weight,
    element_root,
    is_unimodular,
    make_weight,
    normalize,
    perturb,
    sphericalize,
    sweep_index,
    symmetric_perturbation,
)
from planarly.signs import Sign, nc_pairing_exists, tilde  # noqa: E402
from planarly.tl import compose, jones_projection  # noqa: E402


class Check:
    """Collects failures; the first few are kept for the report line."""

    def __init__(self):
        self.fails: list[str] = []
        self.count = 0
        self.t0 = time.perf_counter()

    def __call__(self, cond, what):
        self.count += 1
        if not cond:
            self.fails.append(str(what))

    def within(self, seconds):
        dt = time.perf_counter() - self.t0
        self(dt < seconds, f"took {dt:.1f}s, limit {seconds}s")

    def result(self):
        dt = time.perf_counter() - self.t0
        if self.fails:
            return False, f"{len(self.fails)} failed, e.g. {self.fails[:3]}"
        return True, f"{self.count} checks in {dt:.2f}s"


def leading_minors(A):
    """Leading principal minors by elimination without pivoting."""
    n = len(A)
    M = [list(r) for r in A]
    minors, det = [], ONE
    for i in range(n):
        p = M[i][i]
        det = det * p
        minors.append(det)
        if p == 0:
            return minors + [p] * (n - i - 1)
        for r in range(i + 1, n):
            f = M[r][i] / p
            if f != 0:
                for c in range(i, n):
                    M[r][c] = M[r][c] - f * M[i][c]
    return minors


# ---------------------------------------------------------------------------


def c1_dimensions():
    ck = Check()
    pa = build(2)
    want = [1, 2, 6, 20, 70, 252, 924]
    for k in range(7):
        got = pa.dim(Color(Sign.PLUS, k))
        ck(got == want[k] == comb(2 * k, k), f"k={k}: {got}")
        ck(got == diagonal_dim(k), f"k={k}: oracle {diagonal_dim(k)}")
    ck.within(10)
    return ck.result()


def c2_sweep():
    ck = Check()
    P = build(2)
    lams = [Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3)]
    rows = sweep_index(P, lams)
    for lam, (l, m, i, sph) in zip(lams, rows):
        q = symmetric_perturbation(P, lam)
        dm, dp = modulus(q)
        ck(dm == dp == m == lam + 1 / lam, f"lambda={lam}: modulus {dm},{dp}")
        ck(i == index(q) == (lam + 1 / lam) ** 2, f"lambda={lam}: index {i}")
        ck(sph == is_spherical(q) == (lam == 1), f"lambda={lam}: spherical {sph}")
        ck(m.is_exact and i.is_exact, f"lambda={lam}: inexact")
        ck(i >= 4 and (i == 4) == (lam == 1), f"lambda={lam}: index bound")
    ck({str(r[2]) for r in rows} == {"4", "169/36", "25/4", "100/9"}, [str(r[2]) for r in rows])
    ck.within(5)
    return ck.result()


def c3_scalar_modulus():
    ck = Check()
    P = build(2)
    for lam in (scalar(2), scalar(3), scalar(Fraction(3, 5)), scalar(Fraction(1, 7))):
        q = perturb(P, lam, ONE)
        ck(modulus(q) == (2 / lam, 2 * lam), f"lambda={lam}: {modulus(q)}")
        n = normalize(q)
        ck(index(n) == 4 and is_unimodular(n), f"lambda={lam}: normalized {modulus(n)}")
    return ck.result()


def c4_minimality():
    ck = Check()
    P = build(2)
    rng = random.Random(2024)
    base = index(P)
    with warnings.catch_warnings():
        warnings.simplefilter("error", InexactSqrtWarning)
        for trial in range(20):
            # squares keep every root taken along the way rational
            a = Fraction(rng.randint(1, 9), rng.randint(1, 9)) ** 2
            b = a if trial % 4 == 0 else Fraction(rng.randint(1, 9), rng.randint(1, 9)) ** 2
            z = diagonal_weight(P, a, b)
            h = element_root(P, z, 2)
            q = perturb(P, h, h)
            iq = index(q)
            ck(iq >= base, f"trial {trial}: index {iq}")
            ck((iq == base) == (a == b), f"trial {trial}: equality with a={a}, b={b}")
            s = sphericalize(q)
            ck(index(s) == 4 and index(s).is_exact and is_spherical(s), f"trial {trial}: sphericalized {index(s)}")
            s2 = sphericalize(s)
            ck(s2 is s or modulus(s2) == modulus(s), f"trial {trial}: not idempotent")
    ck.within(10)
    return ck.result()


def _c_value(seq, cm, cp):
    v = Fraction(1)
    for i, s in enumerate(seq):
        plus = (int(s) == int(Sign.PLUS)) != (i % 2 == 1)
        v *= cp if plus else cm
    return v


def c5_ncpairing():
    ck = Check()
    cm, cp = Fraction(1, 3), Fraction(2, 3)
    P = build(2)
    for n in range(1, 8):
        seqs = list(product(Sign, repeat=n))
        vals = {s: _c_value(s, cm, cp) for s in seqs}
        for e in seqs:
            for h in seqs:
                joined = e + tilde(h)
                nc = nc_pairing_exists(joined)
                ck((vals[e] == vals[h]) == nc, (n, e, h))
                if n <= 4:
                    ck(nc == nc_pairing_brute([int(x) for x in joined]), ("oracle", e, h))
        rows = block_decomposition(n, cm, cp)
        ck(sorted(m for _, m in rows) == sorted(comb(n, j) for j in range(n + 1)), f"n={n}: {rows}")
        ck(sum(m * m for _, m in rows) == P.dim(Color(Sign.PLUS, n)), f"n={n}: sum of squares")
    ck.within(60)
    return ck.result()


def c6_tl_relations():
    ck = Check()
    d = scalar(2)
    for k in range(2, 5):
        es = [jones_projection(k, i, d) for i in range(1, k)]
        for i, e in enumerate(es):
            ck(compose(e, e, d, d) == e, f"TL(2) k={k}: e{i + 1}^2")
            for j, f in enumerate(es):
                if abs(i - j) == 1:
                    ck(compose(compose(e, f, d, d), e, d, d) == e.scaled(d**-2), f"TL(2) k={k}: e{i + 1}e{j + 1}e{i + 1}")
                elif abs(i - j) > 1:
                    ck(compose(e, f, d, d) == compose(f, e, d, d), f"TL(2) k={k}: commute {i + 1},{j + 1}")
    Q = symmetric_perturbation(build(2), 2)
    dq = scalar(Fraction(5, 2))
    ck(modulus(Q) == (dq, dq), f"delta_Q {modulus(Q)}")
    for s in Sign:
        for k in range(2, 5):
            c = Color(s, k)
            es = [Q.E_at(c, i) / dq for i in range(1, k)]
            for i, e in enumerate(es):
                ck(Q.M(e, e) == e, f"Q {c}: e{i + 1}^2")
                for j, f in enumerate(es):
                    if abs(i - j) == 1:
                        ck(Q.M(Q.M(e, f), e) == e / (dq * dq), f"Q {c}: e{i + 1}e{j + 1}e{i + 1}")
                    elif abs(i - j) > 1:
                        ck(Q.M(e, f) == Q.M(f, e), f"Q {c}: commute {i + 1},{j + 1}")
    return ck.result()


def c7_closed_form():
    ck = Check()
    lam = Fraction(2)
    lm, lp = 1 / lam, lam
    # c_s = lambda_s / (lambda_- + lambda_+)
    cm, cp = lm / (lm + lp), lp / (lm + lp)
    ck((cm, cp) == (Fraction(1, 5), Fraction(4, 5)), (cm, cp))
    c = {Sign.MINUS: cm, Sign.PLUS: cp}
    P = build(2)
    Q = symmetric_perturbation(P, lam)
    for n in range(1, 4):
        col = Color(Sign.PLUS, n)
        eq, ep = Q.E(col), P.E(col)
        ck(set(eq.coeffs) == set(ep.coeffs), f"n={n}: support")
        for w, v in eq.coeffs.items():
            # the cup sits at positions n-1, n and the cap at n+1, n+2
            eta, nu = Sign(w[n - 1]).flip(n - 1), Sign(w[n + 1]).flip(n - 1)
            want = sqrt(scalar(c[eta] * c[nu] / (cm * cp)))
            ck(v == want * ep[w], f"n={n} word {w}: {v} vs {want}")
    return ck.result()


def c8_gram():
    ck = Check()
    P = build(2)
    Q = symmetric_perturbation(P, 2)
    for name, pa in (("P", P), ("Q", Q)):
        for s in Sign:
            for k in range(4):
                G = gram_matrix(pa, Color(s, k))
                mins = leading_minors(G)
                bad = [i for i, m in enumerate(mins) if not m > 0]
                ck(not bad and all(m.is_exact for m in mins), f"{name} {Color(s, k)}: minor {bad[:1]}")
    return ck.result()


def c9_pivotal():
    ck = Check()
    P = build(2)
    for lam in (Fraction(1), Fraction(2)):
        w = make_weight(P, diagonal_weight(P, 1 / lam, lam))
        fails = verify_pivotal(weight_to_pivotal(w), K=3)
        ck(fails == [], f"lambda={lam}: {fails[:1]}")
    fails = verify_pivotal(noncentral_candidate(P), K=3, stop_first=True)
    ck(bool(fails) and fails[0]["witness"] and fails[0]["expected"] != fails[0]["got"], "noncentral candidate not caught")
    ck.within(30)
    return ck.result()


def c10_graded():
    ck = Check()
    P = build(2)
    S = sphericalize(symmetric_perturbation(P, 2))
    rng = random.Random(10)
    for trial in range(100):
        k, L = trial % 3, trial % 4
        for name, pa in (("P", P), ("sphericalized Q", S)):
            if name != "P" and trial % 4:
                continue
            x, y = gjs.random_graded(pa, k, L, rng), gjs.random_graded(pa, k, L, rng)
            a = gjs.t_trace(pa, gjs.graded_mult(pa, x, y, L=0))
            b = gjs.t_trace(pa, gjs.graded_mult(pa, y, x, L=0))
            ck(a == b == gjs.trace_of_product(pa, x, y), f"{name} trial {trial}: {a} vs {b}")
    Q = symmetric_perturbation(P, 2)
    for name, pa, top in (("P", P, 2), ("Q", Q, 1)):
        for k in range(top + 1):
            r = gjs.gram(pa, k, 3)
            ck(r.orthogonal, f"{name} k={k}: levels not orthogonal")
            ck(r.verdict == "positive-definite", f"{name} k={k}: {r.verdict}")
        for k in range(3):
            for _ in range(2):
                x, y, z = (gjs.random_graded(pa, k, 3 if k < 2 else 2, rng) for _ in range(3))
                lhs, rhs = gjs.associator(pa, x, y, z, 3 if k < 2 else 2)
                ck(lhs == rhs, f"{name} k={k}: associator")
    return ck.result()


def c11_morphisms():
    ck = Check()
    P = build(2)
    for a, b in ((diagonal_weight(P, 1, 2), diagonal_weight(P, 3, Fraction(1, 2))), (scalar(3), diagonal_weight(P, 2, 5))):
        src = perturb(P, a, b)
        phi, dst = conjugation_map(src)
        for gs in (1, 2):
            rep = check_morphism(src, dst, phi, generator_set=gs, level=3)
            ck(rep.ok, rep.to_json() if not rep.ok else "")
    ext = extend_positive_morphism(P, P, lambda x: x, level=3)
    for k in range(4):
        for x in P.basis_elements(Color(Sign.MINUS, k)):
            ck(ext(x) == x, f"extension moves {x.to_json()}")
    ck(check_morphism(P, P, ext, level=3).ok, "extension is not a morphism")
    return ck.result()


def c12_duals():
    ck = Check()
    P = build(2)
    for lam in (scalar(2), scalar(Fraction(3, 5))):
        q = perturb(P, lam, ONE)
        d1 = dual(q, 1)
        ck(modulus(d1) == (2 * lam, 2 / lam), f"lambda={lam}: {modulus(d1)}")
        d11, d2 = dual(d1, 1), dual(q, 2)
        for s in Sign:
            for k in range(4):
                c = Color(s, k)
                ck(d11.dim(c) == d2.dim(c), f"lambda={lam} {c}: {d11.dim(c)} vs {d2.dim(c)}")
    return ck.result()


CRITERIA = [
    ("C1 diagonal dimensions", c1_dimensions),
    ("C2 perturbation sweep", c2_sweep),
    ("C3 scalar perturbation modulus", c3_scalar_modulus),
    ("C4 index minimality", c4_minimality),
    ("C5 NC-pairing criterion", c5_ncpairing),
    ("C6 TL relations", c6_tl_relations),
    ("C7 perturbed Jones closed form", c7_closed_form),
    ("C8 Gram positivity", c8_gram),
    ("C9 pivotality", c9_pivotal),
    ("C10 graded algebra", c10_graded),
    ("C11 morphisms", c11_morphisms),
    ("C12 duals", c12_duals),
]


REPORT: list[str] = []  # shown in the pytest terminal summary


def run_one(name, fn):
    try:
        ok, detail = fn()
    except Exception as exc:  # report, do not hide
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    line = f"{'PASS' if ok else 'FAIL'} {name}: {detail}"
    REPORT.append(line)
    print(line, flush=True)
    return ok, detail


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[n.split()[0] for n, _ in CRITERIA])
def test_criterion(name, fn):
    ok, detail = run_one(name, fn)
    assert ok, detail


if __name__ == "__main__":
    results = [run_one(n, f)[0] for n, f in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
