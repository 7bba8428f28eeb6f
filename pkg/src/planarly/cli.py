"""Command-line front end: censuses, modulus reports, sweeps and check suites."""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import gjs
from .bicat import noncentral_candidate, verify_pivotal, weight_to_pivotal
from .diagonal import TLPA, DiagonalPA, block_value, build, dims
from .numeric import ONE, Scalar, scalar
from .pacore import Color, Element, PAInstance, check_morphism, gram_positivity, index, is_spherical, modulus
from .perturb import (
    conjugation_map,
    diagonal_weight,
    make_weight,
    normalize,
    perturb,
    sphericalize,
    sweep_index,
    symmetric_perturbation,
    trace_intertwiner_weight,
)
from .signs import Sign, format_seq, nc_pairing_exists, parse_seq, tilde

SUITES = ("tl", "star", "gram", "pivotal", "gjs", "perturb")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _lambda_list(text: str) -> list[Scalar]:
    try:
        vals = [scalar(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"bad lambda list {text!r}") from exc
    if not vals or any(v.sign() <= 0 for v in vals):
        raise UsageError("lambdas must be positive")
    return vals


def _positive(text: str) -> Scalar:
    try:
        v = scalar(text)
    except ValueError as exc:
        raise UsageError(f"bad scalar {text!r}") from exc
    if v.sign() <= 0:
        raise UsageError(f"{text} must be positive")
    return v


def make_instance(spec: str, rank: int = 2, lam: str | None = None) -> PAInstance:
    """'diagonal' or 'tl:<delta>', optionally perturbed.

    For the diagonal instance ``lam`` selects the weight
    lambda^-1 (-,-) + lambda (+,+) split evenly; P_(+1) of TL is
    one-dimensional, so there it is the scalar perturbation P^(lam, 1).
    """
    if spec == "diagonal":
        pa: PAInstance = build(rank)
        if lam is not None:
            if rank != 2:
                raise UsageError("--perturb needs rank 2")
            pa = symmetric_perturbation(pa, _positive(lam))
        return pa
    if spec.startswith("tl:"):
        try:
            d = scalar(spec[3:])
        except ValueError as exc:
            raise UsageError(f"bad delta in {spec!r}") from exc
        if d.is_zero():
            raise UsageError("delta must be nonzero")
        pa = TLPA(d)
        if lam is not None:
            pa = perturb(pa, _positive(lam), ONE)
        return pa
    raise UsageError(f"unknown instance {spec!r}")


# ---------------------------------------------------------------------------
# output


def _emit(rows: list[list], header: list[str], out: str | None, stream) -> None:
    if out and Path(out).suffix == ".json":
        payload = [dict(zip(header, (str(v) for v in r))) for r in rows]
        Path(out).write_text(json.dumps(payload, indent=2) + "\n")
        return
    text = ",".join(header) + "\n" + "".join(",".join(str(v) for v in r) + "\n" for r in rows)
    if out:
        Path(out).write_text(text)
    else:
        stream.write(text)


def _fail(check, level, witness, expected=None, got=None) -> dict:
    def js(v):
        if v is None:
            return None
        if isinstance(v, Element):
            return v.to_json()
        if isinstance(v, (list, tuple)):
            return [js(u) for u in v]
        if isinstance(v, (str, int, bool)):
            return v
        return str(v)

    return {"check": check, "level": level, "witness": js(witness), "expected": js(expected), "got": js(got)}


# ---------------------------------------------------------------------------
# suites; each returns (number of checks, failures)


def suite_tl(level: int, seed: int) -> tuple[int, list]:
    fails, n = [], 0
    for pa in (TLPA(2), symmetric_perturbation(build(2), 2)):
        dm, dp = modulus(pa)
        for s in Sign:
            for k in range(2, level + 1):
                c = Color(s, k)
                # the cup-cap at i encloses the region right of strand i
                es = {i: pa.E_at(c, i) / (dp if c.region(i + 1) == Sign.PLUS else dm) for i in range(1, k)}
                for i, e in es.items():
                    n += 2
                    if pa.M(e, e) != e:
                        fails.append(_fail("idempotent", k, [pa.name, str(c), i], e, pa.M(e, e)))
                    if pa.star(e) != e:
                        fails.append(_fail("selfadjoint", k, [pa.name, str(c), i], e, pa.star(e)))
                    for j, f in es.items():
                        if abs(i - j) == 1:
                            n += 1
                            got = pa.M(pa.M(e, f), e)
                            want = e / (dm * dp)
                            if got != want:
                                fails.append(_fail("braid", k, [pa.name, str(c), i, j], want, got))
                        elif abs(i - j) >= 2:
                            n += 1
                            if pa.M(e, f) != pa.M(f, e):
                                fails.append(_fail("commute", k, [pa.name, str(c), i, j], pa.M(f, e), pa.M(e, f)))
    return n, fails


def _random_element(pa: PAInstance, color: Color, rng: random.Random, terms: int = 3) -> Element:
    bs = pa.basis(color)
    picks = rng.sample(bs, min(terms, len(bs)))
    return Element(color, {p: scalar(rng.randint(-5, 5) or 1) / rng.randint(1, 4) for p in picks})


def suite_star(level: int, seed: int) -> tuple[int, list]:
    rng = random.Random(seed)
    fails, n = [], 0
    for pa in (build(2), symmetric_perturbation(build(2), 2), TLPA(2)):
        for s in Sign:
            for k in range(level + 1):
                c = Color(s, k)
                for _ in range(3):
                    x, y = _random_element(pa, c, rng), _random_element(pa, c, rng)
                    n += 2
                    if pa.star(pa.star(x)) != x:
                        fails.append(_fail("involutive", k, [pa.name, str(c)], x, pa.star(pa.star(x))))
                    lhs, rhs = pa.star(pa.M(x, y)), pa.M(pa.star(y), pa.star(x))
                    if lhs != rhs:
                        fails.append(_fail("antimultiplicative", k, [pa.name, str(c)], rhs, lhs))
                    # * commutes with the inclusions and both conditional expectations
                    for name, op in (("RI", pa.RI), ("LI", pa.LI), ("RE", pa.RE), ("LE", pa.LE)):
                        if k == 0 and name in ("RE", "LE"):
                            continue
                        n += 1
                        lhs, rhs = pa.star(op(x)), op(pa.star(x))
                        if lhs != rhs:
                            fails.append(_fail(f"star_{name}", k, [pa.name, str(c)], rhs, lhs))
    return n, fails


def suite_gram(level: int, seed: int) -> tuple[int, list]:
    fails, n = [], 0
    for pa in (build(2), symmetric_perturbation(build(2), 2)):
        for s in Sign:
            for k in range(level + 1):
                c = Color(s, k)
                n += 1
                v = gram_positivity(pa, c)
                if v != "positive-definite":
                    fails.append(_fail("gram", k, [pa.name, str(c)], "positive-definite", v))
    return n, fails


def suite_pivotal(level: int, seed: int) -> tuple[int, list]:
    fails, n = [], 0
    pa = build(2)
    for lam in (scalar(1), scalar(2)):
        w = make_weight(pa, diagonal_weight(pa, lam.inverse(), lam))
        n += 1
        for f in verify_pivotal(weight_to_pivotal(w), K=level):
            fails.append(dict(f, witness=[str(lam)] + list(f["witness"])))
    n += 1
    if not verify_pivotal(noncentral_candidate(pa), K=max(level, 3), stop_first=True):
        fails.append(_fail("noncentral_detected", 3, ["noncentral"], "a failure", "no failure"))
    return n, fails


def suite_gjs(level: int, seed: int) -> tuple[int, list]:
    rng = random.Random(seed)
    fails, n = [], 0
    L = min(level, 3)
    q = symmetric_perturbation(build(2), 2)
    # traciality of the mixed closure needs a spherical instance
    for pa in (build(2), q, sphericalize(q)):
        tracial = is_spherical(pa)
        for k in range(3):
            x, y = gjs.random_graded(pa, k, L, rng), gjs.random_graded(pa, k, L, rng)
            n += 2
            a = gjs.t_trace(pa, gjs.graded_mult(pa, x, y, L=0))
            b = gjs.t_trace(pa, gjs.graded_mult(pa, y, x, L=0))
            if tracial and a != b:
                fails.append(_fail("traciality", L, [pa.name, k], a, b))
            if a != gjs.trace_of_product(pa, x, y):
                fails.append(_fail("trace_formula", L, [pa.name, k], gjs.trace_of_product(pa, x, y), a))
            u = gjs.graded_unit(pa, k, L)
            n += 1
            if gjs.graded_mult(pa, u, x) != x or gjs.graded_mult(pa, x, u) != x:
                fails.append(_fail("unit", L, [pa.name, k]))
        for k in range(2):
            La = min(L, 2)
            x, y, z = (gjs.random_graded(pa, k, La, rng) for _ in range(3))
            n += 1
            lhs, rhs = gjs.associator(pa, x, y, z, La)
            if lhs != rhs:
                fails.append(_fail("associativity", La, [pa.name, k]))
        for k in range(2):
            r = gjs.gram(pa, k, min(L, 2))
            n += 2
            if not r.orthogonal:
                fails.append(_fail("orthogonal", L, [pa.name, k]))
            if r.verdict != "positive-definite":
                fails.append(_fail("gram", L, [pa.name, k], "positive-definite", r.verdict))
    return n, fails


def suite_perturb(level: int, seed: int) -> tuple[int, list]:
    fails, n = [], 0
    pa = build(2)
    lams = [scalar(1), scalar(3) / 2, scalar(2), scalar(3)]
    for lam, mod, ind, sph in sweep_index(pa, lams):
        n += 1
        want = lam + lam.inverse()
        if mod != want or ind != want * want or sph != (lam == 1):
            fails.append(_fail("sweep", 1, [str(lam)], [want, want * want, lam == 1], [mod, ind, sph]))
    for lam in (scalar(2), scalar(3)):
        q = perturb(pa, lam, ONE)
        n += 2
        if modulus(q) != (2 / lam, 2 * lam):
            fails.append(_fail("scalar_modulus", 0, [str(lam)], [2 / lam, 2 * lam], list(modulus(q))))
        if modulus(normalize(q)) != (scalar(2), scalar(2)):
            fails.append(_fail("normalize", 0, [str(lam)], [2, 2], list(modulus(normalize(q)))))
    a = diagonal_weight(pa, 1, 2)
    b = diagonal_weight(pa, 3, scalar(1) / 2)
    src = perturb(pa, a, b)
    phi, dst = conjugation_map(src)
    for gs in (1, 2):
        n += 1
        rep = check_morphism(src, dst, phi, generator_set=gs, level=min(level, 3))
        if not rep.ok:
            d = rep.to_json()
            fails.append(_fail("conjugation_" + d["check"], d["level"], d["witness"], d["expected"], d["got"]))
    q = symmetric_perturbation(pa, 2)
    n += 3
    w = trace_intertwiner_weight(q)
    s = sphericalize(q)
    if index(s) != 4 or not is_spherical(s):
        fails.append(_fail("sphericalize", 1, ["2"], [4, True], [index(s), is_spherical(s)]))
    s2 = sphericalize(s)
    if index(s2) != index(s) or modulus(s2) != modulus(s):
        fails.append(_fail("sphericalize_idempotent", 1, ["2"], list(modulus(s)), list(modulus(s2))))
    if w.is_scalar():
        fails.append(_fail("trace_weight", 1, ["2"], "non-scalar", w.z))
    return n, fails


SUITE_FUNCS = {
    "tl": suite_tl,
    "star": suite_star,
    "gram": suite_gram,
    "pivotal": suite_pivotal,
    "gjs": suite_gjs,
    "perturb": suite_perturb,
}


# ---------------------------------------------------------------------------
# argument parsing


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="planarly", description="Planar algebra workbench.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    d = sub.add_parser("dims", help="dimension census of the diagonal instance")
    d.add_argument("--rank", type=int, default=2)
    d.add_argument("--kmax", type=int, required=True)
    d.add_argument("--out")

    for name in ("modulus", "spherical"):
        m = sub.add_parser(name, help=f"{name} of an instance")
        m.add_argument("--instance", required=True)
        m.add_argument("--rank", type=int, default=2)
        m.add_argument("--perturb", dest="lam")
        m.add_argument("--out")

    s = sub.add_parser("sweep", help="modulus, index and sphericality over lambda")
    s.add_argument("--lambda-list", required=True)
    s.add_argument("--out")

    n = sub.add_parser("ncpair", help="block value versus NC-pairing check")
    n.add_argument("--seq", required=True)
    n.add_argument("--seq2", required=True)
    n.add_argument("--cminus", required=True)
    n.add_argument("--cplus", required=True)
    n.add_argument("--out")

    v = sub.add_parser("verify", help="run an invariant suite")
    v.add_argument("--suite", required=True, choices=SUITES)
    v.add_argument("--level", type=int, default=3)
    v.add_argument("--seed", type=int, default=0)

    z = sub.add_parser("sphericalize", help="minimal index and trace weight")
    z.add_argument("--lambda", dest="lam", required=True)
    z.add_argument("--out")
    return p


def _join_sign_values(argv: list[str]) -> list[str]:
    """Sign strings such as '-++-' look like flags; glue them to their option."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--seq", "--seq2") and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    argv = _join_sign_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = _parser().parse_args(argv)
        return _dispatch(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2


def _dispatch(args, out) -> int:
    if args.cmd == "dims":
        if args.kmax < 0 or args.rank < 1:
            raise UsageError("--kmax must be >= 0 and --rank >= 1")
        pa = DiagonalPA(args.rank)
        rows = [[k, dp] for k, dp, _ in dims(pa, args.kmax)]
        _emit(rows, ["k", "dim"], args.out, out)
        return 0

    if args.cmd == "modulus":
        pa = make_instance(args.instance, args.rank, args.lam)
        dm, dp = modulus(pa)
        _emit([[dm, dp, dm * dp]], ["delta_minus", "delta_plus", "index"], args.out, out)
        return 0

    if args.cmd == "spherical":
        pa = make_instance(args.instance, args.rank, args.lam)
        _emit([[pa.name, _bool(is_spherical(pa))]], ["instance", "spherical"], args.out, out)
        return 0

    if args.cmd == "sweep":
        rows = sweep_index(build(2), _lambda_list(args.lambda_list))
        _emit([[l, m, i, _bool(s)] for l, m, i, s in rows], ["lambda", "modulus", "index", "spherical"], args.out, out)
        return 0

    if args.cmd == "ncpair":
        try:
            e, h = parse_seq(args.seq), parse_seq(args.seq2)
        except (ValueError, KeyError) as exc:
            raise UsageError(f"bad sign sequence: {exc}") from exc
        if len(e) != len(h):
            raise UsageError("--seq and --seq2 must have equal length")
        cm, cp = _positive(args.cminus), _positive(args.cplus)
        if cm == cp:
            raise UsageError("--cminus and --cplus must differ")
        ce, ch = block_value(e, cm, cp), block_value(h, cm, cp)
        nc = nc_pairing_exists(tuple(e) + tilde(h))
        _emit([[format_seq(e), format_seq(h), ce, ch, _bool(ce == ch), _bool(nc)]], ["seq", "seq2", "c_seq", "c_seq2", "equal", "ncpair"], args.out, out)
        if (ce == ch) != nc:
            report = _fail("ncpair", len(e), [format_seq(e), format_seq(h)], _bool(nc), _bool(ce == ch))
            out.write(json.dumps({"suite": "ncpair", **report}) + "\n")
            return 1
        return 0

    if args.cmd == "verify":
        if args.level < 0:
            raise UsageError("--level must be >= 0")
        n, fails = SUITE_FUNCS[args.suite](args.level, args.seed)
        if fails:
            out.write(json.dumps({"suite": args.suite, **fails[0]}) + "\n")
            return 1
        out.write(f"{args.suite}: {n} checks passed at level {args.level}\n")
        return 0

    if args.cmd == "sphericalize":
        lam = _positive(args.lam)
        q = symmetric_perturbation(build(2), lam)
        w = trace_intertwiner_weight(q)
        s = sphericalize(q)
        weight = ";".join(f"{format_seq(lab)}:{c}" for lab, c in sorted(w.z.coeffs.items()))
        _emit([[lam, index(q), index(s), _bool(is_spherical(s)), weight]], ["lambda", "index", "minimal_index", "spherical", "weight"], args.out, out)
        return 0

    raise UsageError(f"unknown command {args.cmd}")


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
