"""Command-line front end: ``tfatom {solve,moments,correction,sweep,verify}``."""

from __future__ import annotations

import argparse
import dataclasses
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import export
from .correction import HARTREE_EV, delta_e_closed, delta_e_oracle, schwinger_coefficient
from .potentials import AtomicModel
from .quadrature import QuadratureError, tf_moments
from .tf_solver import ConvergenceError, ShootingError, TfParams, solve_tf
from .verify import format_table, run_checks

log = logging.getLogger("tfatom")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def parse_z(text: str) -> list[float]:
    """'1,2,3', '1-10' or '1:30:2' (start:stop:step, inclusive)."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ":" in part:
                lo, hi, *step = part.split(":")
                step = float(step[0]) if step else 1.0
                z, hi = float(lo), float(hi)
                while z <= hi + 1e-9:
                    out.append(z)
                    z += step
            elif "-" in part[1:]:
                lo, hi = part.split("-", 1)
                out.extend(float(z) for z in range(int(lo), int(hi) + 1))
            else:
                out.append(float(part))
        except ValueError:
            raise UsageError(f"cannot parse Z specification {part!r}") from None
    if not out:
        raise UsageError("empty Z list")
    if any(z < 1 for z in out):
        raise UsageError("every Z must be >= 1")
    return sorted(set(int(z) if float(z).is_integer() else z for z in out))


def read_config(path: str) -> dict:
    """key=value lines setting TfParams defaults; '#' starts a comment."""
    fields = {f.name: f for f in dataclasses.fields(TfParams)}
    out = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or key not in fields:
                raise UsageError(f"{path}:{n}: unknown setting {line!r}")
            if key == "slope_bracket":
                out[key] = tuple(float(v) for v in value.split(","))
            elif key in ("max_shoot_iters", "series_order", "n_grid"):
                out[key] = int(value)
            else:
                out[key] = float(value)
    return out


def build_params(args) -> TfParams:
    kw = read_config(args.config) if args.config else {}
    if getattr(args, "xmax", None) is not None:
        kw["x_max"] = args.xmax
    if getattr(args, "tol", None) is not None:
        kw["rel_tol"] = args.tol
    return TfParams(**kw)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
        log.info("wrote %s", path)
    else:
        sys.stdout.write(text)


def _oracle_for(args):
    sol, Z = args
    r = delta_e_oracle(sol, AtomicModel(Z))
    return Z, r.delta_e[Z], r.est_error


def _corrections(sol, zs, jobs: int):
    m = tf_moments(sol)
    c = schwinger_coefficient(m)
    closed = delta_e_closed([AtomicModel(z) for z in zs], c)
    tasks = [(sol, z) for z in zs]
    if jobs > 1 and len(zs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            oracle = list(pool.map(_oracle_for, tasks))
    else:
        oracle = [_oracle_for(t) for t in tasks]
    oracle.sort(key=lambda t: t[0])
    return m, c, closed, oracle


def cmd_solve(args) -> int:
    sol = solve_tf(build_params(args))
    log.info("B = %.12f, tail amplitude = %.4f", sol.B, sol.tail.amplitude)
    text = export.solution_csv(sol) if args.format == "csv" else export.dumps(export.solution_dict(sol))
    _emit(text, args.out)
    return EXIT_OK


def cmd_moments(args) -> int:
    sol = solve_tf(build_params(args))
    _emit(export.dumps(export.moments_dict(tf_moments(sol, tol=args.qtol))), args.out)
    return EXIT_OK


def cmd_correction(args) -> int:
    zs = parse_z(args.z)
    sol = solve_tf(build_params(args))
    m, c, closed, oracle = _corrections(sol, zs, args.jobs)
    scale, unit = (HARTREE_EV, "eV") if args.ev else (1.0, "hartree")
    reports = []
    for z, d_oracle, err in oracle:
        est = {"m_f2": m.est_error["m_f2"], "delta_e_oracle": err,
               "delta_e_closed": m.est_error["m_f2"] / m.m_f2 * abs(closed.delta_e[z])}
        reports.append(export.correction_dict(z, closed.delta_e[z], d_oracle, c, m.m_f2, est, scale, unit))
    _emit(export.dumps(reports), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    zs = parse_z(args.z)
    sol = solve_tf(build_params(args))
    _, _, closed, oracle = _corrections(sol, zs, args.jobs)
    rows = [(z, closed.delta_e[z], d) for z, d, _ in oracle]
    if args.format == "json":
        text = export.dumps([{"Z": z, "deltaE_closed": a, "deltaE_oracle": b} for z, a, b in rows])
    else:
        text = export.sweep_csv(rows)
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = run_checks(solve_tf(build_params(args)))
    if args.json:
        text = export.dumps([dataclasses.asdict(c) for c in checks])
    else:
        text = format_table(checks)
    _emit(text, args.out)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tfatom", description=__doc__)
    parser.add_argument("--log-level", default=os.environ.get("TFATOM_LOG_LEVEL", "WARNING"),
                        help="logging level (env TFATOM_LOG_LEVEL)")
    parser.add_argument("--config", help="key=value file with solver defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="json"):
        p.add_argument("--xmax", type=float, help="outer boundary of the integrated range")
        p.add_argument("--tol", type=float, help="relative integrator tolerance")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=fmt_default)

    p = sub.add_parser("solve", help="solve for the Thomas-Fermi function")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("moments", help="integrals of f used by the correction")
    common(p)
    p.add_argument("--qtol", type=float, default=1e-10, help="relative quadrature tolerance")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("correction", help="quantum energy correction for each Z")
    common(p)
    p.add_argument("--z", required=True, help="nuclear charges, e.g. 1,2,3 or 1-10")
    p.add_argument("--ev", action="store_true", help="report energies in eV")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_correction)

    p = sub.add_parser("sweep", help="closed form and oracle over a range of Z")
    common(p, fmt_default="csv")
    p.add_argument("--z", required=True, help="nuclear charges, e.g. 1,2,3 or 1-10 or 1:30:5")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the invariant suite")
    common(p)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        logging.basicConfig(level=args.log_level.upper(), stream=sys.stderr,
                            format="%(levelname)s %(name)s: %(message)s")
        return args.func(args)
    except BrokenPipeError:
        return EXIT_OK
    except (UsageError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except (ConvergenceError, ShootingError, QuadratureError) as exc:
        log.error("%s", exc)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
