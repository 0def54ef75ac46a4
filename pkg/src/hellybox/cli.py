"""Command-line interface: ``helly <command> ...``.

Exit codes: 0 confirmed/valid, 1 refuted/counterexample, 2 usage or scale error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import certificates as cert
from . import constructions as cons
from . import harness
from .boxlift import FOUND, UNBOUNDED, max_lattice_box, subfamily_check
from .errors import HellyError
from .exact import SurdScalar, as_scalar, format_scalar
from .family import FamilyInstance

EXIT_OK, EXIT_REFUTED, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Input helpers
# ---------------------------------------------------------------------------


def parse_number(text: str) -> Fraction:
    """Accept integers, 'p/q' and decimal literals (decimals are read exactly)."""
    text = text.strip()
    try:
        return Fraction(text)
    except ValueError:
        raise UsageError(f"not a number: {text!r}")


def load_family(spec: str) -> FamilyInstance:
    """A JSON file, or a built-in: figure1, hypercube:D:T, cross:D, cubevertex:D, random:SEED:D:COUNT:BOUND."""
    if os.path.exists(spec):
        with open(spec) as fh:
            return FamilyInstance.from_json(json.load(fh))
    name, *args = spec.split(":")
    try:
        nums = [int(a) for a in args]
    except ValueError:
        raise UsageError(f"bad family spec {spec!r}")
    if name == "figure1" and not nums:
        return cons.figure1_family()
    if name == "hypercube" and len(nums) == 2:
        return cons.hypercube_family(*nums)
    if name == "cross" and len(nums) == 1:
        return cons.cross_polytope_family(*nums)
    if name == "cubevertex" and len(nums) == 1:
        return cons.cube_vertex_family(*nums)
    if name == "random" and len(nums) == 4:
        return harness.random_family(*nums)
    raise UsageError(f"unknown family {spec!r} (not a file and not a built-in generator)")


def parse_params(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"parameter {item!r} is not key=value")
        k, v = item.split("=", 1)
        f = parse_number(v)
        out[k] = int(f) if f.denominator == 1 else f
    return out


def factor_from_args(args) -> dict:
    g = args.generator
    if g == "primes":
        return {"generator": "primes"}
    if g == "power":
        return {"generator": "power", "base": args.base}
    if g == "polynomial":
        coeffs = [int(c) for c in args.coefficients.split(",")]
        return {"generator": "polynomial", "coefficients": coeffs}
    if g == "explicit":
        with open(args.values) as fh:
            vals = json.load(fh)
        return {"generator": "explicit", "values": vals}
    raise UsageError(f"unknown generator {g!r}")


def emit(args, data: dict, text: str):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True, default=_default))
    else:
        print(text)


def _default(o):
    if isinstance(o, Fraction):
        return format_scalar(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def _fmt(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_bounds(args) -> int:
    params = parse_params(args.params)
    if args.theorem in ("P218", "P219"):
        h, loss = cert.guaranteed_fraction(params.get("d"), params.get("m"), params.get("t", 0), args.theorem)
        data = {"theorem": args.theorem, "params": params, "helly_number": h, "loss": format_scalar(loss)}
        emit(args, data, f"{args.theorem} {params}: Helly number {h}, guaranteed n/{_fmt(loss)}")
        return EXIT_OK
    if args.theorem == "thinBoxLosses":
        losses = cert.thin_box_losses(params.get("d"))
        data = {k: _fmt(v) if isinstance(v, Fraction) else v for k, v in losses.items()}
        emit(args, data, f"stated loss {_fmt(losses['stated'])}, derived loss {_fmt(losses['derived'])}")
        return EXIT_OK
    rec = cert.formula_bound(args.theorem, params)
    emit(args, rec.to_json(), f"{rec.quantity}({rec.set_descriptor}) <= {_fmt(rec.value)}  [{args.theorem}]")
    return EXIT_OK


def _search(args, fam, sets=None):
    return max_lattice_box(
        fam.sets if sets is None else sets,
        args.thickness,
        args.corner_mode,
        dim=fam.dim,
        max_dim=args.max_dim,
        window=args.window,
    )


def _describe(res) -> str:
    if res.status == UNBOUNDED:
        return f"UNBOUNDED (seed box {res.box.lower}..{res.box.upper}, ray {[_fmt(r) for r in res.ray]})"
    if res.status == FOUND:
        lo = ", ".join(map(_fmt, res.box.lower))
        hi = ", ".join(map(_fmt, res.box.upper))
        tag = "" if res.exhaustive else " (window search, lower bound)"
        return f"{res.count} lattice points in box [{lo}] .. [{hi}]{tag}"
    return "no box"


def cmd_box_search(args) -> int:
    fam = load_family(args.family)
    res = _search(args, fam)
    emit(args, res.to_json(), _describe(res))
    if args.min_points is not None:
        return EXIT_OK if res.at_least(args.min_points) else EXIT_REFUTED
    return EXIT_OK if res.status in (FOUND, UNBOUNDED) else EXIT_REFUTED


def cmd_check_family(args) -> int:
    fam = load_family(args.family)
    if args.theorem:
        report = harness.verify_theorem_instance(fam, args.theorem, parse_params(args.params), args.threads)
        emit(args, report.to_json(), f"{report.theorem}: {report.outcome}")
        return EXIT_REFUTED if report.outcome == harness.COUNTEREXAMPLE else EXIT_OK
    if args.subfamily_size is None:
        raise UsageError("check-family needs --subfamily-size or --theorem")
    n = args.min_points if args.min_points is not None else 1
    chk = subfamily_check(
        fam.sets, args.subfamily_size, n, args.thickness, args.corner_mode,
        dim=fam.dim, max_dim=args.max_dim, threads=args.threads,
    )
    full = _search(args, fam)
    data = {"subfamilies": chk.to_json(), "full_family": full.to_json()}
    if chk.passed:
        text = f"all {chk.checked} subfamilies of size {args.subfamily_size} hold a box with >= {n} points"
    else:
        text = f"subfamily {list(chk.failing)} fails: {_describe(chk.result)}"
    text += f"\nfull family: {_describe(full)}"
    emit(args, data, text)
    return EXIT_OK if chk.passed else EXIT_REFUTED


def _verify_ratio(c: cert.RatioRunCertificate) -> tuple:
    ok, k = cert.ratio_run_holds(c)
    if not ok:
        return False, f"run hypotheses or strict count fail (recounted k={k})"
    if c.host:
        lo, hi = c.window
        vals = cert.factor_values(c.host["factor"], lo, hi) if "factor" in c.host else None
        if vals is not None and [as_scalar(v) for v in vals] != list(c.values):
            return False, "values are not the consecutive host elements of the window"
    return True, f"valid run, k={k}, lower bound {k + 4}"


def cmd_verify_certificate(args) -> int:
    with open(args.certificate) as fh:
        data = json.load(fh)
    c = cert.certificate_from_json(data)
    if isinstance(c, cert.PolygonCertificate):
        S = cert.host_points(c.host, c.window)
        report = cert.check_empty_polygon(c, S)
        if args.svg:
            from .svg import polygon_svg

            lo = (min(v.x for v in c.vertices), min(v.y for v in c.vertices))
            hi = (max(v.x for v in c.vertices), max(v.y for v in c.vertices))
            near = [p for p in S if lo[0] <= p[0] <= hi[0] and lo[1] <= p[1] <= hi[1]]
            with open(args.svg, "w") as fh:
                fh.write(polygon_svg(c.vertices, near[:5000]))
        emit(args, report.to_json(), f"{'VALID' if report.valid else 'REFUTED'}: {report.reason}")
        return EXIT_OK if report.valid else EXIT_REFUTED
    ok, why = _verify_ratio(c)
    emit(args, {"valid": ok, "reason": why}, f"{'VALID' if ok else 'REFUTED'}: {why}")
    return EXIT_OK if ok else EXIT_REFUTED


def _ratio_outputs(args, values, host) -> tuple:
    run = cert.ratio_scan(values, host)
    data = {"run": run.to_json()}
    lines = [f"best run: b={run.base_index} m={run.run_length} k={run.strict_count} -> H >= {run.lower_bound}"]
    try:
        poly = cert.build_ratio_polygon(run.values, 0, run.run_length, host)
        rep = cert.verify_polygon_certificate(poly) if "factor" in host else None
        data["polygon"] = poly.to_json()
        data["hull_size"] = len(poly.vertices)
        if rep is not None:
            data["emptiness"] = rep.to_json()
        lines.append(f"hull size {len(poly.vertices)}; emptiness: {rep.reason if rep else 'not checked'}")
    except cert.HypothesisViolation as exc:
        data["diagnostic"] = str(exc)
        lines.append(str(exc))
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(data, fh, indent=2, default=_default)
    return data, "\n".join(lines)


def cmd_scan_ratios(args) -> int:
    factor = factor_from_args(args)
    host = {"kind": "product", "factor": factor}
    values = cert.factor_values(factor, parse_number(args.lo), parse_number(args.hi))
    if len(values) < 4:
        raise UsageError("the window holds fewer than four values")
    data, text = _ratio_outputs(args, values, host)
    emit(args, data, text)
    return EXIT_OK


def cmd_sieve_scan(args) -> int:
    scanner = cert.RatioScanner()
    prev = []
    stream = args.stream and not args.json
    for seg in cons.prime_segments(args.lo, args.hi):
        scanner.feed(seg.tolist())
        if stream:
            for p in seg.tolist():
                gap = p - prev[-1] if prev else None
                cmp = None
                if len(prev) >= 3:
                    g0, g1, g2 = prev[-2] - prev[-3], prev[-1] - prev[-2], p - prev[-1]
                    c = g1 * g1 - g0 * g2
                    cmp = (c > 0) - (c < 0)
                print(f"{p}\t{gap if gap is not None else '-'}\t{cmp if cmp is not None else '-'}")
                prev = (prev + [p])[-3:]
    if scanner.count < 4:
        raise UsageError("fewer than four primes in the range")
    host = {"kind": "product", "factor": {"generator": "primes"}}
    run = scanner.result(host)
    data = {"primes_scanned": scanner.count, "run": run.to_json()}
    text = (f"{scanner.count} primes; best run starts at {run.values[0]}: "
            f"k={run.strict_count}, m={run.run_length} -> H(P x P) >= {run.lower_bound}")
    if args.certificate:
        try:
            poly = cert.build_ratio_polygon(run.values, 0, run.run_length, host)
            rep = cert.verify_polygon_certificate(poly)
            data["polygon"] = poly.to_json()
            data["emptiness"] = rep.to_json()
            text += f"\nhull size {len(poly.vertices)}; emptiness: {rep.reason}"
        except cert.HypothesisViolation as exc:
            data["diagnostic"] = str(exc)
            text += "\n" + str(exc)
    emit(args, data, text)
    return EXIT_OK


def cmd_empty_polygon(args) -> int:
    if args.points:
        with open(args.points) as fh:
            pts = [tuple(as_scalar(c) if isinstance(c, str) else Fraction(c) for c in p) for p in json.load(fh)]
        host = None
    else:
        factor = factor_from_args(args)
        vals = cert.factor_values(factor, parse_number(args.lo), parse_number(args.hi))
        band = args.band
        pts = [(x, y) for i, x in enumerate(vals) for j, y in enumerate(vals) if band is None or abs(i - j) <= band]
        host = {"kind": "product", "factor": factor}
    size, poly = cert.max_empty_convex_polygon(pts)
    data = {"size": size, "vertices": [[format_scalar(v.x), format_scalar(v.y)] for v in poly]}
    text = f"largest empty convex polygon: {size} vertices"
    if host is not None and size >= 3:
        c = cert.PolygonCertificate(poly, host, (parse_number(args.lo), parse_number(args.hi)),
                                    {"method": "empty-polygon-search"})
        rep = cert.verify_polygon_certificate(c)
        data["certificate"] = c.to_json()
        data["emptiness_in_full_window"] = rep.to_json()
        text += f"\nin the full product window: {rep.reason}"
    if args.svg:
        from .svg import polygon_svg

        with open(args.svg, "w") as fh:
            fh.write(polygon_svg(poly, pts[:5000]))
    emit(args, data, text)
    return EXIT_OK


def cmd_syndetic(args) -> int:
    if args.action == "build":
        alpha = SurdScalar.parse(args.alpha) if args.alpha else cons.DEFAULT_ALPHA
        c = cons.build_syndetic(alpha, args.n_max, args.window_bound, args.gap)
        if args.output:
            with open(args.output, "w") as fh:
                json.dump(c.to_json(), fh)
        sizes = [len(p) for p in c.polygons]
        emit(args, {"polygons": sizes, "translations": [list(w) for w in c.translations], "size_A": len(c.set_a)},
             f"built polygons with {sizes} vertices; |A cap [0, W]| = {len(c.set_a)}")
        return EXIT_OK
    if not args.input:
        raise UsageError("syndetic verify needs a construction file")
    with open(args.input) as fh:
        c = cons.SyndeticConstruction.from_json(json.load(fh))
    rep = cons.verify_syndetic(c)
    text = "VALID" if rep.valid else "VIOLATIONS:\n" + "\n".join(f"  [{k}] {d}" for k, d in rep.violations)
    emit(args, rep.to_json(), text)
    return EXIT_OK if rep.valid else EXIT_REFUTED


def cmd_census(args) -> int:
    fam = load_family(args.family)
    n = args.min_points if args.min_points is not None else 1
    res = harness.fractional_census(fam, n, args.thickness, args.subfamily_size)
    emit(args, res.to_json(), f"alpha = {_fmt(res.alpha)} ({res.good_subfamilies}/{res.subfamilies}), "
         f"beta = {_fmt(res.beta)}")
    return EXIT_OK


def cmd_random_family(args) -> int:
    fam = harness.random_family(args.seed, args.dim, args.count, args.bound)
    text = fam.dumps()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _search_flags(p):
    p.add_argument("--thickness", type=parse_number, default=Fraction(0))
    p.add_argument("--corner-mode", default="real",
                   help="real, integer, 'lower,upper' or per-coordinate strings like 'ir'")
    p.add_argument("--min-points", type=int)
    p.add_argument("--max-dim", type=int, help="only boxes with at most this many nondegenerate edges")
    p.add_argument("--window", type=int, default=24, help="cube radius used for unbounded regions")


def _generator_flags(p, required=True):
    p.add_argument("--generator", choices=["primes", "power", "polynomial", "explicit"], required=required)
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--coefficients", default="0,0,0,1", help="ascending, e.g. 0,0,0,1 for n^3")
    p.add_argument("--values", help="JSON list of values for the explicit generator")
    p.add_argument("--lo", default="0")
    p.add_argument("--hi", default="100")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="helly", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="closed-form Helly numbers and loss factors")
    p.add_argument("theorem", help="helly, doignon, mixedInteger, boxIntegerLattice, boxPeriodic, boxSkeleton, "
                   "thickBox, thinBox, P218, P219, thinBoxLosses")
    p.add_argument("params", nargs="*", help="key=value parameters, e.g. d=2 rho=3")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("box-search", parents=[common], help="best lattice box in a family's intersection")
    p.add_argument("family")
    _search_flags(p)
    p.set_defaults(func=cmd_box_search)

    p = sub.add_parser("check-family", parents=[common], help="subfamily premise checks or a full theorem check")
    p.add_argument("family")
    _search_flags(p)
    p.add_argument("--subfamily-size", type=int)
    p.add_argument("--theorem", choices=harness.THEOREMS)
    p.add_argument("--param", dest="params", action="append", help="theorem parameter key=value")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_check_family)

    p = sub.add_parser("verify-certificate", parents=[common], help="check a polygon or ratio-run certificate")
    p.add_argument("certificate")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_verify_certificate)

    p = sub.add_parser("scan-ratios", parents=[common], help="best nonincreasing gap-ratio run in A cap [lo, hi]")
    _generator_flags(p)
    p.add_argument("--output")
    p.set_defaults(func=cmd_scan_ratios)

    p = sub.add_parser("sieve-scan", parents=[common], help="segmented sieve over [lo, hi] with a streaming ratio scan")
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--stream", action="store_true", help="print prime, gap and ratio comparison per prime")
    p.add_argument("--certificate", action="store_true", help="build and check the polygon for the best run")
    p.set_defaults(func=cmd_sieve_scan)

    p = sub.add_parser("empty-polygon", parents=[common], help="largest empty convex polygon in a finite planar set")
    p.add_argument("--points", help="JSON list of [x, y] pairs")
    _generator_flags(p, required=False)
    p.add_argument("--band", type=int, help="keep only pairs (a_i, a_j) with |i - j| <= band")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_empty_polygon)

    p = sub.add_parser("syndetic", parents=[common], help="build or verify the syndetic construction")
    p.add_argument("action", choices=["build", "verify"])
    p.add_argument("input", nargs="?")
    p.add_argument("--alpha", help="surd 'a/b+c/d*sqrt(D)', default 1+sqrt(2)")
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--window-bound", type=int, default=10**5)
    p.add_argument("--gap", type=int, default=2)
    p.add_argument("--output")
    p.set_defaults(func=cmd_syndetic)

    p = sub.add_parser("census", parents=[common], help="fractional census of a family")
    p.add_argument("family")
    p.add_argument("--min-points", type=int)
    p.add_argument("--thickness", type=parse_number, default=Fraction(0))
    p.add_argument("--subfamily-size", type=int)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("random-family", parents=[common], help="deterministic random halfspace family")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--output")
    p.set_defaults(func=cmd_random_family)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    if getattr(args, "command", None) == "empty-polygon" and not args.points and not args.generator:
        print("error: empty-polygon needs --points or --generator", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except (HellyError, UsageError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
