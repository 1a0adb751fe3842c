"""Batch CLI: code/array construction, verification, schedule export, and
first-order averaging runs.

Exit codes are a stable contract for CI: 0 success, 1 verification or
tolerance failure, 2 usage/input error.  Every subcommand is
deterministic given its flags (seeds included), and loaded files are
always re-verified -- headers are claims, counts are proofs.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from . import config
from .codes import LinearCode, hamming_code, read_code, write_code
from .decoupling import (bangbang_average, euler_schedule, eulerian_average,
                         exact_evolution, random_drift, read_drift,
                         report_to_json, verify_schedule, write_schedule)
from .euler import (EulerianViolation, euler_cycle_full, eulerian_oa_from_code,
                    verify_eulerian)
from .gf import field_from_order
from .oa import (StrengthViolation, oa_from_code, read_oa_entries,
                 verify_strength, write_oa)
from .weyl import phase_distance


def _fail_input(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _fail_verify(message: str) -> int:
    print(f"FAIL: {message}", file=sys.stderr)
    return 1


def _try_min_distance(code: LinearCode) -> int | None:
    if code.q**code.k > config.ENUMERATION_CAP:
        return None
    return code.min_distance()


# ---------------------------------------------------------------------------
# code
# ---------------------------------------------------------------------------

def cmd_code_hamming(args) -> int:
    try:
        field = field_from_order(args.q)
        code = hamming_code(field, args.m)
    except ValueError as exc:
        return _fail_input(str(exc))
    full = code
    if args.dual:
        code = full.dual()
        d_min = _try_min_distance(code)
        # dual distance of the dual is the Hamming distance itself:
        # enumerate when feasible, else the family value 3 (m >= 2)
        d_dual = _try_min_distance(full) or 3
    else:
        d_min = _try_min_distance(full) or 3
        d_dual = _try_min_distance(full.dual())
    write_code(args.out, code)
    print(f"[n, k, d_min, d_dual] = [{code.n}, {code.k}, "
          f"{d_min if d_min is not None else '?'}, "
          f"{d_dual if d_dual is not None else '?'}]")
    print(f"wrote {args.out}")
    return 0


def cmd_code_info(args) -> int:
    try:
        code = read_code(args.infile)
    except (OSError, ValueError) as exc:
        return _fail_input(str(exc))
    d_min = _try_min_distance(code)
    try:
        d_dual = _try_min_distance(code.dual())
    except ValueError:
        d_dual = None
    print(f"[n, k, d_min, d_dual] = [{code.n}, {code.k}, "
          f"{d_min if d_min is not None else '?'}, "
          f"{d_dual if d_dual is not None else '?'}]")
    return 0


# ---------------------------------------------------------------------------
# oa
# ---------------------------------------------------------------------------

def _resolve_d_dual(code: LinearCode, override: int | None) -> int | str:
    if override is not None:
        return override
    try:
        dual = code.dual()
    except ValueError:
        return code.n + 1   # full-space code: trivial dual, by convention
    if dual.q**dual.k > config.ENUMERATION_CAP:
        return ("dual code too large to enumerate; pass --d-dual explicitly")
    return dual.min_distance()


def cmd_oa_build(args) -> int:
    try:
        code = read_code(args.code)
    except (OSError, ValueError) as exc:
        return _fail_input(str(exc))
    d_dual = _resolve_d_dual(code, args.d_dual)
    if isinstance(d_dual, str):
        return _fail_input(d_dual)
    try:
        oa = oa_from_code(code, d_dual)
    except ValueError as exc:
        return _fail_verify(str(exc))
    write_oa(args.out, oa)
    print(f"OA({oa.N}, {oa.n}, {oa.q}, {oa.t}) lambda = {oa.lam}")
    print(f"wrote {args.out}")
    return 0


def cmd_oa_verify(args) -> int:
    try:
        entries, (N, n, q, t_header, lam_header) = read_oa_entries(args.infile)
    except (OSError, ValueError) as exc:
        return _fail_input(str(exc))
    t = args.t if args.t is not None else t_header
    result = verify_strength(entries, q, t)
    if isinstance(result, StrengthViolation):
        return _fail_verify(f"strength {t}: {result}")
    print(f"OK: strength {t} with lambda = {result}")
    if args.t is None and result != lam_header:
        return _fail_verify(f"header claims lambda = {lam_header}, counted {result}")
    return 0


# ---------------------------------------------------------------------------
# euler
# ---------------------------------------------------------------------------

def cmd_euler_build(args) -> int:
    if args.code is not None:
        try:
            code = read_code(args.code)
        except (OSError, ValueError) as exc:
            return _fail_input(str(exc))
    else:
        if args.q is None or args.k is None:
            return _fail_input("need --code, or --q/--k (with optional --rows)")
        rows = args.rows if args.rows is not None else args.k
        if rows != args.k:
            return _fail_input("without --code only the identity generator is "
                               "supported, which needs rows == k")
        try:
            field = field_from_order(args.q)
            code = LinearCode(field, np.eye(args.k, dtype=np.int64))
        except ValueError as exc:
            return _fail_input(str(exc))
    if args.t is not None:
        t = args.t
    else:
        d_dual = _resolve_d_dual(code, None)
        if isinstance(d_dual, str):
            return _fail_input(d_dual + " (or pass --t)")
        t = d_dual - 1
    try:
        cycle = euler_cycle_full(code.field, code.k)
        eoa = eulerian_oa_from_code(code, cycle, t)
    except ValueError as exc:
        return _fail_verify(str(exc))
    from .euler import write_eulerian_oa
    write_eulerian_oa(args.out, eoa)
    print(f"Eulerian OA({eoa.oa.N}, {eoa.oa.n}, {eoa.oa.q}, {eoa.t}) "
          f"lambda = {eoa.oa.lam}, edge multiplicity = {eoa.edge_multiplicity}")
    print(f"wrote {args.out}")
    return 0


def cmd_euler_verify(args) -> int:
    try:
        entries, (N, n, q, t_header, lam_header) = read_oa_entries(args.infile)
        trailer = [ln for ln in Path(args.infile).read_text().splitlines()
                   if ln.startswith("EULER")]
    except (OSError, ValueError) as exc:
        return _fail_input(str(exc))
    if args.t is not None:
        t = args.t
    elif trailer:
        t = int(trailer[0].split()[1])
    else:
        t = t_header
    field = field_from_order(q)
    strength = verify_strength(entries, q, t)
    if isinstance(strength, StrengthViolation):
        return _fail_verify(f"strength {t}: {strength}")
    result = verify_eulerian(entries, field, t)
    if isinstance(result, EulerianViolation):
        return _fail_verify(f"eulerian {t}: {result}")
    full = all(len(g) == q**t for g in result.gensets.values())
    print(f"OK: Eulerian strength {t}, lambda = {strength}, edge multiplicity "
          f"= {result.edge_multiplicity}, generating sets "
          f"{'all full group' if full else 'proper subsets'}")
    return 0


# ---------------------------------------------------------------------------
# schedule
# ---------------------------------------------------------------------------

def cmd_schedule_export(args) -> int:
    try:
        from .euler import read_eulerian_oa
        eoa = read_eulerian_oa(args.oa)
    except (OSError, ValueError) as exc:
        return _fail_input(str(exc))
    sched = euler_schedule(eoa, args.delta)
    write_schedule(args.out, sched)
    worst = verify_schedule(sched)
    max_h = max(np.linalg.norm(sched.hams[j, k], 2)
                for j in range(sched.N) for k in range(sched.n))
    print(f"{sched.N} segments x {sched.n} qudits, T_c = {sched.cycle_time:g}, "
          f"max ||h|| = {max_h:.6f} (pi/delta = {np.pi / args.delta:.6f}), "
          f"unitary check {worst:.3e}")
    print(f"wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------
# sim
# ---------------------------------------------------------------------------

def _load_array_for_sim(path):
    entries, (N, n, q, t_header, lam_header) = read_oa_entries(path)
    result = verify_strength(entries, q, t_header)
    if isinstance(result, StrengthViolation):
        raise ValueError(f"array failed its claimed strength {t_header}: {result}")
    from .oa import OrthogonalArray
    return OrthogonalArray(q, n, N, t_header, result, entries)


def _sweep(oa, drift, base_tc: float, points: int):
    """Exact-propagator error against the environment-only target, with the
    cycle time halved between runs; returns the fitted log-log slope."""
    errors = []
    times = []
    tc = base_tc
    for _ in range(points):
        sched = euler_schedule(oa, tc / oa.N)
        u = exact_evolution(drift, sched, substeps=1)
        lam, vec = np.linalg.eigh(drift.env_only)
        env_u = (vec * np.exp(-1j * lam * tc)) @ vec.conj().T
        target = np.kron(np.eye(drift.d**drift.n), env_u)
        errors.append(phase_distance(u, target))
        times.append(tc)
        tc /= 2
    slope = float(np.polyfit(np.log(times), np.log(errors), 1)[0])
    return slope, times, errors


def cmd_sim(args) -> int:
    try:
        oa = _load_array_for_sim(args.oa)
    except (OSError, ValueError) as exc:
        return _fail_input(str(exc))
    field = field_from_order(oa.q)
    try:
        d = field.coord_dim()
    except ValueError as exc:
        return _fail_input(str(exc))
    n = args.n if args.n is not None else oa.n
    if n != oa.n:
        return _fail_input(f"--n {n} does not match the array's {oa.n} rows")
    if args.drift is not None:
        try:
            drift = read_drift(args.drift)
        except (OSError, ValueError) as exc:
            return _fail_input(str(exc))
        if (drift.n, drift.d) != (n, d):
            return _fail_input("drift file does not match the array layout")
    else:
        drift = random_drift(n, d, args.t, args.denv, args.seed)

    tol = args.tol
    extra = {"mode": args.mode, "array": str(args.oa), "n": n, "d": d,
             "d_env": drift.d_env, "drift_arity": drift.max_arity,
             "seed": args.seed, "array_strength": oa.t}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if args.mode == "bangbang":
            if tol is None:
                tol = config.TOL_BANGBANG_RESIDUAL
            report = bangbang_average(oa, drift)
        else:
            if tol is None:
                tol = config.TOL_EULERIAN_RESIDUAL
            extra["delta"] = args.delta
            report = eulerian_average(oa, drift, args.delta,
                                      method=args.method, order=args.order)
            if args.sweep_tc:
                dim = d**n * drift.d_env
                if dim > config.EVOLUTION_DIM_CAP:
                    return _fail_input(f"sweep needs d^n*d_E <= "
                                       f"{config.EVOLUTION_DIM_CAP}, got {dim}")
                slope, times, errors = _sweep(oa, drift, args.sweep_base,
                                              args.sweep_tc)
                extra["sweep"] = {"slope": slope, "cycle_times": times,
                                  "errors": errors}
                print(f"convergence slope = {slope:.3f} over {times}")

    data = report_to_json(report, tol, extra)
    if args.report:
        Path(args.report).write_text(json.dumps(data, indent=1) + "\n")
        print(f"wrote {args.report}")
    print(f"residual = {report.residual_norm:.3e} (tolerance {tol:g}), "
          f"env shift = {report.env_shift_norm:.3e}")
    if report.residual_norm > tol:
        return _fail_verify(f"residual {report.residual_norm:.3e} exceeds "
                            f"tolerance {tol:g}")
    print("OK")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eoa",
        description="Eulerian orthogonal arrays from linear codes, with "
                    "decoupling-schedule export and averaging checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_code = sub.add_parser("code", help="build or inspect linear codes")
    code_sub = p_code.add_subparsers(dest="subcommand", required=True)
    p_ham = code_sub.add_parser("hamming", help="Hamming code or its dual")
    p_ham.add_argument("--q", type=int, required=True, help="field order")
    p_ham.add_argument("--m", type=int, required=True, help="redundancy")
    p_ham.add_argument("--dual", action="store_true",
                       help="write the dual (simplex-like) code instead")
    p_ham.add_argument("--out", required=True)
    p_ham.set_defaults(func=cmd_code_hamming)
    p_info = code_sub.add_parser("info", help="report [n, k, d_min, d_dual]")
    p_info.add_argument("--in", dest="infile", required=True)
    p_info.set_defaults(func=cmd_code_info)

    p_oa = sub.add_parser("oa", help="orthogonal arrays from codes")
    oa_sub = p_oa.add_subparsers(dest="subcommand", required=True)
    p_build = oa_sub.add_parser("build", help="codewords-as-columns array")
    p_build.add_argument("--code", required=True, help="CODE file")
    p_build.add_argument("--d-dual", type=int, default=None,
                         help="dual distance (else enumerated)")
    p_build.add_argument("--out", required=True)
    p_build.set_defaults(func=cmd_oa_build)
    p_verify = oa_sub.add_parser("verify", help="re-count an OA file")
    p_verify.add_argument("--in", dest="infile", required=True)
    p_verify.add_argument("--t", type=int, default=None,
                          help="strength to check (default: header claim)")
    p_verify.set_defaults(func=cmd_oa_verify)

    p_euler = sub.add_parser("euler", help="Eulerian orthogonal arrays")
    euler_sub = p_euler.add_subparsers(dest="subcommand", required=True)
    p_ebuild = euler_sub.add_parser("build", help="cycle + codewords array")
    p_ebuild.add_argument("--code", default=None, help="CODE file")
    p_ebuild.add_argument("--q", type=int, default=None)
    p_ebuild.add_argument("--k", type=int, default=None)
    p_ebuild.add_argument("--rows", type=int, default=None,
                          help="row count for the identity-generator toy case")
    p_ebuild.add_argument("--t", type=int, default=None)
    p_ebuild.add_argument("--out", required=True)
    p_ebuild.set_defaults(func=cmd_euler_build)
    p_everify = euler_sub.add_parser("verify", help="re-check the Euler property")
    p_everify.add_argument("--in", dest="infile", required=True)
    p_everify.add_argument("--t", type=int, default=None)
    p_everify.set_defaults(func=cmd_euler_verify)

    p_sched = sub.add_parser("schedule", help="bounded-control schedules")
    sched_sub = p_sched.add_subparsers(dest="subcommand", required=True)
    p_export = sched_sub.add_parser("export", help="per-segment Hamiltonians")
    p_export.add_argument("--oa", required=True, help="Eulerian OA file")
    p_export.add_argument("--delta", type=float, default=config.DEFAULT_DELTA)
    p_export.add_argument("--out", required=True)
    p_export.set_defaults(func=cmd_schedule_export)

    p_sim = sub.add_parser("sim", help="first-order averaging runs")
    sim_sub = p_sim.add_subparsers(dest="mode", required=True)
    for mode in ("bangbang", "eulerian"):
        p_mode = sim_sub.add_parser(mode)
        p_mode.add_argument("--oa", required=True, help="array file")
        p_mode.add_argument("--n", type=int, default=None)
        p_mode.add_argument("--t", type=int, default=2, help="drift term arity")
        p_mode.add_argument("--seed", type=int, default=0)
        p_mode.add_argument("--denv", type=int, default=1,
                            help="environment dimension (1 = closed system)")
        p_mode.add_argument("--drift", default=None, help="drift JSON file")
        p_mode.add_argument("--tol", type=float, default=None)
        p_mode.add_argument("--report", default=None, help="report JSON path")
        if mode == "eulerian":
            p_mode.add_argument("--delta", type=float, default=config.DEFAULT_DELTA)
            p_mode.add_argument("--method", choices=("exact", "quadrature"),
                                default="exact")
            p_mode.add_argument("--order", type=int, default=config.DEFAULT_QUAD_ORDER)
            p_mode.add_argument("--sweep-tc", type=int, default=0,
                                help="convergence sweep point count")
            p_mode.add_argument("--sweep-base", type=float, default=0.4,
                                help="largest cycle time in the sweep")
        p_mode.set_defaults(func=cmd_sim)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
