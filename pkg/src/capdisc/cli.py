"""Command-line interface.

Every JSON document written carries a ``manifest`` block; everything outside
it is a pure function of the command line.  Exit codes: 0 success, 2 usage
or domain error, 3 numeric failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import math
import os
import re
import sys
import time

from . import __version__

EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def _parse_real_radius(text: str) -> float:
    t = text.replace(" ", "").replace("*", "").lower()
    m = re.fullmatch(r"(\d*)pi(?:/(\d+))?", t)
    if m:
        num = int(m.group(1)) if m.group(1) else 1
        den = int(m.group(2)) if m.group(2) else 1
        return num * math.pi / den
    try:
        return float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a radius: {text!r}") from exc


def _parse_ns(text: str) -> list[int]:
    """'128:4096:x2' (geometric) or '128,256,512'."""
    m = re.fullmatch(r"(\d+):(\d+):x(\d+)", text.strip())
    if m:
        start, stop, factor = (int(g) for g in m.groups())
        if factor < 2 or start < 1:
            raise argparse.ArgumentTypeError("need start >= 1 and factor >= 2")
        out = []
        n = start
        while n <= stop:
            out.append(n)
            n *= factor
        return out
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad N list {text!r}") from exc


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


class _Run:
    """Collects the manifest of one CLI invocation."""

    def __init__(self, argv):
        # the worker count never changes results, so it is not part of the run identity
        cleaned = []
        skip = False
        for tok in argv:
            if skip:
                skip = False
                continue
            if tok == "--threads":
                skip = True
                continue
            if tok.startswith("--threads="):
                continue
            cleaned.append(tok)
        self.argv = cleaned
        self.started = _now()
        self.t0 = time.perf_counter()

    def manifest(self, **extra) -> dict:
        out = {
            "tool": "capdisc",
            "version": __version__,
            "command": self.argv,
        }
        out.update({k: v for k, v in extra.items() if v is not None})
        out["timestamps"] = {
            "started": self.started,
            "finished": _now(),
            "elapsed_s": round(time.perf_counter() - self.t0, 6),
        }
        return out


def _emit(doc: dict, out_path=None):
    text = json.dumps(doc, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_space_info(args, run):
    from . import specfun
    from .spaces import Space

    space = Space.parse(args.space)
    prm = space.params
    rows = [
        {
            "m": m,
            "lambda_m": specfun.eigenvalue(space, m),
            "d_m": int(specfun.eigenspace_dim_exact(space, m)),
        }
        for m in range(args.mmax + 1)
    ]
    doc = {
        "space": str(space),
        "d": prm.d,
        "d0": prm.d0,
        "n": prm.n,
        "a": str(prm.a),
        "b": str(prm.b),
        "point_ops": space.supports_points,
    }
    if not space.supports_points:
        doc["note"] = "point ops unsupported"
    doc["spectrum"] = rows
    if args.table:
        print(f"{space}: d={prm.d} d0={prm.d0} n={prm.n} a={prm.a} b={prm.b}")
        if not space.supports_points:
            print("note: point ops unsupported")
        print(f"{'m':>4} {'lambda_m':>12} {'d_m':>16}")
        for r in rows:
            print(f"{r['m']:>4} {r['lambda_m']:>12g} {r['d_m']:>16}")
        return 0
    doc["manifest"] = run.manifest(space=str(space))
    _emit(doc, args.out)
    return 0


def cmd_radius_check(args, run):
    from . import admissibility as adm
    from .spaces import Space

    space = Space.parse(args.space)
    radius = adm.RadiusPQ.parse(args.radius)
    prm = space.params
    residue = adm.space_residue(space, radius)
    doc = {
        "space": str(space),
        "radius": {"p": radius.p, "q": radius.q},
        "expression": f"({prm.d + prm.d0 + 2})*{radius.p} - ({prm.d - 1})*{radius.q}",
        "value": (prm.d + prm.d0 + 2) * radius.p - (prm.d - 1) * radius.q,
        "residue_mod4": residue,
        "admissible": residue != 0,
        "verdict": "admissible" if residue != 0 else "inadmissible",
    }
    if args.alpha is not None or args.beta is not None:
        if args.alpha is None or args.beta is None:
            raise adm.DomainError("--alpha and --beta go together")
        g, d = adm.gamma_delta(args.alpha, args.beta)
        doc["jacobi"] = {
            "alpha": args.alpha,
            "beta": args.beta,
            "gamma": str(g),
            "delta": str(d),
            "gamma_p_plus_delta_q": str(g * radius.p + d * radius.q),
            "admissible": adm.jacobadly_condition(g, d, radius),
        }
    if args.gegenbauer is not None:
        doc["gegenbauer"] = {
            "lambda": args.gegenbauer,
            "admissible": adm.gegenbadly(args.gegenbauer, radius),
        }
    doc["manifest"] = run.manifest(space=str(space))
    _emit(doc, args.out)
    return 0


def cmd_disc_compute(args, run):
    from .pointsets import read_points
    from .spectral import discrepancy_l2

    ps = read_points(args.points)
    if args.space and str(ps.space) != args.space.lower():
        from .errors import DomainError

        raise DomainError(f"points file is on {ps.space}, not {args.space}")
    rep = discrepancy_l2(ps.space, ps.points, ps.weights, args.radius, truncation=args.L, with_terms=args.terms, threads=args.threads)
    doc = rep.to_dict()
    seed = ps.provenance.get("seed")
    if seed is not None:
        doc["seed"] = seed
    doc["manifest"] = run.manifest(space=str(ps.space), seeds=[seed] if seed is not None else None,
                                   timing={"elapsed_s": round(rep.elapsed_s, 6)})
    _emit(doc, args.out)
    return 0


def cmd_disc_oracle(args, run):
    from .oracle import mc_discrepancy
    from .pointsets import read_points

    ps = read_points(args.points)
    if args.space and str(ps.space) != args.space.lower():
        from .errors import DomainError

        raise DomainError(f"points file is on {ps.space}, not {args.space}")
    est = mc_discrepancy(ps.space, ps.points, ps.weights, args.radius_real, args.samples, args.seed)
    doc = {"space": str(ps.space), "radius": {"real": args.radius_real}, "n_points": ps.n}
    doc.update(est.to_dict())
    doc["manifest"] = run.manifest(space=str(ps.space), seeds=[args.seed])
    _emit(doc, args.out)
    return 0


def cmd_study_rate(args, run):
    from .admissibility import RadiusPQ
    from .studies import rate_study

    res = rate_study(args.space, args.generator, RadiusPQ.parse(args.radius), args.Ns, args.seed, threads=args.threads)
    manifest = run.manifest(space=args.space, seeds=[args.seed])
    doc = {"space": args.space, "generator": args.generator, "radius": args.radius}
    doc.update(res.to_dict())
    doc["manifest"] = manifest
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("# manifest " + json.dumps(manifest, sort_keys=True) + "\n")
            fh.write(res.to_csv())
    _emit(doc, args.out)
    return 0


def cmd_study_prime_scan(args, run):
    from .admissibility import frac
    from .pointsets import generate, read_points
    from .studies import prime_scan

    if args.points:
        ps = read_points(args.points)
    else:
        ps = generate(args.space, args.generator, args.n, args.seed)
    res = prime_scan(ps.space, ps.points, ps.weights, frac(args.margin), args.cH, threads=args.threads)
    doc = {"space": str(ps.space), "n_points": ps.n, "margin": args.margin, "c_H": args.cH}
    doc.update(res.to_dict())
    doc["manifest"] = run.manifest(space=str(ps.space), seeds=[ps.provenance.get("seed")])
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("# manifest " + json.dumps(doc["manifest"], sort_keys=True) + "\n")
            fh.write("n,p,q,value\n")
            for i, (r, v) in enumerate(zip(res.radii, res.values), start=1):
                fh.write(f"{i},{r.p},{r.q},{v!r}\n")
    _emit(doc, args.out)
    return 0


def cmd_jacobi_scan(args, run):
    from .admissibility import RadiusPQ, frac
    from .studies import jacobadly_scan

    alpha, beta = frac(args.alpha), frac(args.beta)
    res = jacobadly_scan(alpha, beta, RadiusPQ.parse(args.radius), args.mmin, args.mmax)
    doc = {"alpha": args.alpha, "beta": args.beta, "radius": args.radius, "m_min": args.mmin, "m_max": args.mmax}
    doc.update(res)
    doc["manifest"] = run.manifest()
    _emit(doc, args.out)
    return 0


def cmd_points_generate(args, run):
    from .pointsets import generate, write_points

    ps = generate(args.space, args.kind, args.n, args.seed, cap=args.cap)
    manifest = run.manifest(space=str(ps.space), seeds=[args.seed])
    if args.out:
        write_points(args.out, ps, {"manifest": manifest})
    else:
        from .pointsets import points_to_dict

        doc = points_to_dict(ps)
        doc["manifest"] = manifest
        _emit(doc)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="capdisc", description="L2 ball discrepancy on two-point homogeneous spaces")
    parser.add_argument("--version", action="version", version=f"capdisc {__version__}")
    parser.add_argument("--threads", type=int, default=None, help="worker cap (default: $CAPDISC_THREADS or all cores)")
    top = parser.add_subparsers(dest="group", required=True)

    space = top.add_parser("space").add_subparsers(dest="action", required=True)
    p = space.add_parser("info", help="parameters and spectrum of a space")
    p.add_argument("space")
    p.add_argument("--mmax", type=int, default=20)
    p.add_argument("--table", action="store_true", help="human readable table instead of JSON")
    p.add_argument("--out")
    p.set_defaults(func=cmd_space_info)

    radius = top.add_parser("radius").add_subparsers(dest="action", required=True)
    p = radius.add_parser("check", help="admissibility of r = p pi / q")
    p.add_argument("space")
    p.add_argument("radius", help="p/q")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--gegenbauer", metavar="L", help="rational lambda or 'irrational'")
    p.add_argument("--out")
    p.set_defaults(func=cmd_radius_check)

    disc = top.add_parser("disc").add_subparsers(dest="action", required=True)
    p = disc.add_parser("compute", help="spectral L2 discrepancy")
    p.add_argument("--space")
    p.add_argument("--points", required=True)
    p.add_argument("--radius", required=True, help="p/q")
    p.add_argument("--L", type=int, default=None)
    p.add_argument("--terms", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_disc_compute)
    p = disc.add_parser("oracle", help="Monte Carlo L2 discrepancy")
    p.add_argument("--space")
    p.add_argument("--points", required=True)
    p.add_argument("--radius-real", required=True, type=_parse_real_radius, help="radians, or forms like 2pi/3")
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_disc_oracle)

    study = top.add_parser("study").add_subparsers(dest="action", required=True)
    p = study.add_parser("rate", help="discrepancy versus N with a fitted exponent")
    p.add_argument("--space", required=True)
    p.add_argument("--generator", required=True)
    p.add_argument("--radius", required=True)
    p.add_argument("--Ns", required=True, type=_parse_ns)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_study_rate)
    p = study.add_parser("prime-scan", help="discrepancy over prime radii")
    p.add_argument("--space", default="s5")
    p.add_argument("--points")
    p.add_argument("--generator", default="uniform")
    p.add_argument("--n", type=int, default=512)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--margin", default="1/3")
    p.add_argument("--cH", type=float, default=3.0)
    p.add_argument("--csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_study_prime_scan)

    jac = top.add_parser("jacobi").add_subparsers(dest="action", required=True)
    p = jac.add_parser("scan", help="min of m^(1/2) |P_m(cos r)|")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--radius", required=True)
    p.add_argument("--mmin", type=int, default=2)
    p.add_argument("--mmax", type=int, default=5000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_jacobi_scan)

    pts = top.add_parser("points").add_subparsers(dest="action", required=True)
    p = pts.add_parser("generate", help="write a points file")
    p.add_argument("--space", required=True)
    p.add_argument("--kind", default="uniform")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=_parse_real_radius, default=math.pi / 10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_points_generate)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is None and os.environ.get("CAPDISC_THREADS"):
        args.threads = int(os.environ["CAPDISC_THREADS"])
    if args.threads is not None:
        if args.threads < 1:
            parser.error("--threads must be >= 1")
        if "numba" not in sys.modules:
            # allow more workers than cores; must precede the numba import
            os.environ["NUMBA_NUM_THREADS"] = str(max(args.threads, os.cpu_count() or 1))
    run = _Run(argv)

    from .errors import CapdiscError, DomainError, NumericError, PointFileError, UnsupportedSpaceError

    try:
        return args.func(args, run)
    except (DomainError, UnsupportedSpaceError) as exc:
        print(f"capdisc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericError as exc:
        print(f"capdisc: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (PointFileError, OSError) as exc:
        print(f"capdisc: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except CapdiscError as exc:
        print(f"capdisc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
