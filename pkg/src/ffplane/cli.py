"""Command-line driver.

Exit status: 0 when every asserted check passes, 1 when one fails (the report,
including the failing records, still goes to standard output), 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .report import Check, failures, jsonable, ratio_bounds, root_bounds


class InputError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _load(path: str):
    from .gen import from_csv

    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return from_csv(text)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except ValueError as e:
        raise InputError(str(e)) from None


def _report(command: str, inputs: dict, checks: list[Check], results: dict, started: float) -> dict:
    return {
        "tool": "ffplane",
        "version": __version__,
        "command": command,
        "input": jsonable(inputs),
        "checks": [c.to_dict() for c in checks],
        "failures": [c.to_dict() for c in failures(checks)],
        "results": jsonable(results),
        "timing_s": round(time.perf_counter() - started, 3),
    }


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# subcommands ---------------------------------------------------------------------------


def cmd_generate(args) -> tuple[dict | None, list[Check]]:
    from .gen import GeneratorSpec, generate, to_csv

    try:
        params = json.loads(args.params) if args.params else {}
        spec = GeneratorSpec(args.model, args.p, args.size, args.seed, params)
        A = generate(spec)
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as e:
        raise InputError(f"cannot generate: {e}") from None
    _emit(to_csv(A), args.out)
    return None, []


def point_set_stats(A) -> dict:
    from .stats import (bisector_energy, bisector_table, distance_profile, max_collinear,
                        max_collinear_cocircular, segment_class_sizes, triangle_counts)

    prof = distance_profile(A)
    tri = triangle_counts(A)
    table = bisector_table(A)
    B, Bs = bisector_energy(A, table)
    return {
        "p": A.p,
        "size": len(A),
        "distinct_distances": prof.delta,
        "distinct_nonzero_distances": prof.delta0,
        "pinned_distances": prof.delta_pin,
        "pinned_nonzero_distances": prof.delta_pin_nonzero,
        "best_pin": list(prof.pin),
        "isosceles_T_star": tri.t_star,
        "isosceles_nonisotropic": tri.t_ni,
        "bisector_energy": B,
        "bisector_energy_star": Bs,
        "segment_class_sizes": segment_class_sizes(A),
        "max_collinear": max_collinear(A),
        "max_collinear_or_cocircular": max_collinear_cocircular(A),
    }


def cmd_stats(args):
    A = _load(args.input)
    if not len(A):
        raise InputError("empty point set")
    return {"input": {"file": args.input, "p": A.p, "size": len(A)}, "results": point_set_stats(A)}, []


def verify_point_set(A, K=None, suites: bool = True, seed: int = 0, samples: int = 200) -> tuple[list[Check], dict]:
    from .clifford import CliffordAlgebraCtx, algebra_checks, verify_isomorphism
    from .kinematic import axial_incidence_count, verify_kinematic
    from .stats import check_identities, segment_classes, triangle_counts
    from .structure import bisector_energy_accounting, claim_t2_pipeline, prune_iterate

    checks: list[Check] = []
    results: dict = {}
    tri = triangle_counts(A)
    checks += check_identities(A, tri)
    equal = 0
    classes = {r: S for r, S in segment_classes(A).items() if r}
    per_r = {}
    for r, S in classes.items():
        res = axial_incidence_count(S, A.p)
        per_r[r] = {"oracle": res.oracle, "pipeline": res.pipeline, "extension_axis": res.uses_extension}
        equal += res.agree
    checks.append(Check("mirror pairs = point-plane incidences, per r", "segments-to-incidences",
                        equal, len(classes), "=="))
    results["mirror_pairs_by_r"] = per_r
    acc = bisector_energy_accounting(A, with_axial=True)
    checks += acc.checks
    pr = prune_iterate(A)
    checks += pr.checks
    results["pruned_curves"] = [list(k) for k in pr.removed]
    t2 = claim_t2_pipeline(A, K, restricted=len(A) <= 40)
    checks += t2.checks
    results["light_line_chain"] = t2.to_dict()["quantities"]
    results["restricted_incidences"] = t2.to_dict()["restricted"]
    if suites:
        from .ffield import field_ctx

        ctx = field_ctx(A.p)
        checks += verify_kinematic(ctx, samples, seed)
        alg = CliffordAlgebraCtx(ctx, -1)
        checks += algebra_checks(alg, samples, seed) + verify_isomorphism(alg, samples, seed)
    return checks, results


def cmd_verify(args):
    A = _load(args.input)
    if not len(A):
        raise InputError("empty point set")
    checks, results = verify_point_set(A, args.K_override, not args.no_suites, args.seed, args.count)
    return {"input": {"file": args.input, "p": A.p, "size": len(A), "K_override": args.K_override},
            "results": results}, checks


def cmd_kinematic(args):
    from .kinematic import census, verify_kinematic

    ctx = _ctx(args.p)
    checks = verify_kinematic(ctx, args.count, args.seed, census_limit=max(13, args.census_limit))
    results = {}
    if args.p <= max(13, args.census_limit):
        c = census(ctx)
        results = {"motions": c.motions, "image": c.image, "projective_points": c.projective_points,
                   "exceptional": c.exceptional}
    return {"input": {"p": args.p, "count": args.count, "seed": args.seed}, "results": results}, checks


def cmd_clifford(args):
    from .clifford import CliffordAlgebraCtx, algebra_checks, verify_isomorphism

    ctx = _ctx(args.p)
    try:
        alg = CliffordAlgebraCtx(ctx, args.lam)
    except ValueError as e:
        raise InputError(str(e)) from None
    checks = algebra_checks(alg, args.count, args.seed) + verify_isomorphism(alg, args.count, args.seed)
    return {"input": {"p": args.p, "lambda": args.lam, "count": args.count, "seed": args.seed}, "results": {}}, checks


def _ctx(p: int):
    from .ffield import field_ctx

    try:
        return field_ctx(p)
    except ValueError as e:
        raise InputError(str(e)) from None


SWEEP_FIELDS = [
    "p", "size", "seed", "model", "T_star", "isosceles_ratio", "isosceles_ratio_float",
    "delta_pin", "delta_pin_nonzero", "delta_pin_over_p", "excess_over_bound_lo", "excess_over_bound_hi",
]


def sweep_cell(cell: tuple) -> dict:
    """One (p, size, seed) cell: T* p / |A|^3, pinned distances and the ratio of
    T* - |A|^3/p to p^{2/3}|A|^{5/3}."""
    from .gen import GeneratorSpec, generate
    from .stats import distance_profile, triangle_counts

    p, size, seed, model, params = cell
    kind = "uniform_random" if model == "uniform" else model
    A = generate(GeneratorSpec(kind, p, size, seed, params))
    n = len(A)
    ts = triangle_counts(A).t_star
    prof = distance_profile(A)
    ratio = Fraction(ts * p, n**3)
    excess = Fraction(ts) - Fraction(n**3, p)
    lo, hi = root_bounds(Fraction(p * p * n**5), 3)
    elo, ehi = ratio_bounds(max(excess, 0), lo, hi)
    return {
        "p": p, "size": n, "seed": seed, "model": model, "T_star": ts,
        "isosceles_ratio": ratio, "isosceles_ratio_float": f"{float(ratio):.6f}",
        "delta_pin": prof.delta_pin, "delta_pin_nonzero": prof.delta_pin_nonzero,
        "delta_pin_over_p": Fraction(prof.delta_pin, p),
        "excess_over_bound_lo": elo, "excess_over_bound_hi": ehi,
    }


def cmd_sweep(args):
    try:
        params = json.loads(args.params) if args.params else {}
    except json.JSONDecodeError as e:
        raise InputError(f"bad --params: {e}") from None
    primes = args.p_list or [args.p]
    sizes = args.size_list or [args.size]
    for p in primes:
        _ctx(p)
    if any(s is None for s in sizes):
        raise InputError("sweep needs --size or --sizes")
    cells = [(p, s, args.seed + k, args.model, params) for p in primes for s in sizes for k in range(args.count)]
    try:
        if args.workers > 1:
            with ProcessPoolExecutor(args.workers) as pool:
                rows = list(pool.map(sweep_cell, cells))
        else:
            rows = [sweep_cell(c) for c in cells]
    except ValueError as e:
        raise InputError(str(e)) from None
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SWEEP_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: jsonable(v) for k, v in r.items()})
    _emit(buf.getvalue(), args.out)
    return None, []


# parser ----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ffplane", description="Distances, bisectors and kinematic incidences over F_p.")
    ap.add_argument("--version", action="version", version=f"ffplane {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, p_default=None):
        sp.add_argument("--p", type=int, default=p_default, required=p_default is None)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out")

    g = sub.add_parser("generate", help="write a seeded point set as CSV")
    common(g)
    g.add_argument("--model", default="uniform_random", help="generator kind")
    g.add_argument("--size", type=int)
    g.add_argument("--params", help="JSON object of generator parameters")

    s = sub.add_parser("stats", help="distance, triangle and bisector statistics of a CSV point set")
    s.add_argument("input", help="CSV file, or - for standard input")
    s.add_argument("--out")

    v = sub.add_parser("verify", help="run every identity and inequality check on a CSV point set")
    v.add_argument("input")
    v.add_argument("--K-override", dest="K_override", type=_fraction)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=int, default=200, help="samples for the group suites")
    v.add_argument("--no-suites", action="store_true", help="skip the kinematic and Clifford suites")
    v.add_argument("--out")

    k = sub.add_parser("kinematic", help="census and equivariance checks of the kinematic map")
    common(k)
    k.add_argument("--count", type=int, default=1000)
    k.add_argument("--census-limit", type=int, default=13)

    c = sub.add_parser("clifford", help="checks of the Clifford model of the motion group")
    common(c)
    c.add_argument("--lambda", dest="lam", type=int, default=-1)
    c.add_argument("--count", type=int, default=1000)

    w = sub.add_parser("sweep", help="CSV of isosceles and pinned-distance ratios over a grid")
    w.add_argument("--p", type=int, default=101)
    w.add_argument("--primes", dest="p_list", type=int, nargs="+")
    w.add_argument("--size", type=int)
    w.add_argument("--sizes", dest="size_list", type=int, nargs="+")
    w.add_argument("--model", default="uniform")
    w.add_argument("--params")
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--count", type=int, default=1, help="seeds per cell, starting at --seed")
    w.add_argument("--workers", type=int, default=1)
    w.add_argument("--out")
    return ap


COMMANDS = {
    "generate": cmd_generate,
    "stats": cmd_stats,
    "verify": cmd_verify,
    "kinematic": cmd_kinematic,
    "clifford": cmd_clifford,
    "sweep": cmd_sweep,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    started = time.perf_counter()
    try:
        payload, checks = COMMANDS[args.command](args)
    except InputError as e:
        print(f"ffplane: error: {e}", file=sys.stderr)
        return 2
    if payload is not None:
        rep = _report(args.command, payload["input"], checks, payload["results"], started)
        _emit(json.dumps(rep, indent=2) + "\n", getattr(args, "out", None))
    return 1 if failures(checks) else 0


def main() -> None:
    sys.exit(run())
