"""Command-line interface.

Output defaults to effective atomic units; ``--physical-units`` reports
energies and hbar*frequencies in meV, lengths in nm and fields in tesla,
and reads ``--w0``/``--wc-*`` as meV and ``--ell0``/``--r-max`` as nm.

Exit status: 0 success, 1 verification or cross-check failure,
2 input or numerical error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import engine, field, oracle, spectrum, units
from .errors import NoRealFieldError, QesError

ENERGY_KEYS = {
    "w", "w0", "wc", "half_wc", "w_closed", "w_engine", "e_prime", "target",
    "oracle_value", "abs_gap", "e_total", "e_cm", "e_rm", "e_min",
}
LENGTH_KEYS = {"r"}
INV_LENGTH_KEYS = {"beta1_closed", "beta1_engine"}


class CliError(QesError):
    pass


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    if isinstance(x, (list, tuple)):
        return ";".join(_fmt(v) for v in x)
    return str(x)


def _jsonable(x):
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, float) and not np.isfinite(x):
        return None
    return x


class Context:
    """Unit handling derived from the material flags."""

    def __init__(self, args):
        preset = units.MATERIALS[args.material]
        m_star = args.m_star if args.m_star is not None else preset["m_star"]
        eps_r = args.eps_r if args.eps_r is not None else preset["eps_r"]
        self.units = units.effective_units(units.PhysicalParams(m_star=m_star, eps_r=eps_r))
        self.physical = args.physical_units

    def energy_in(self, x):
        return None if x is None else (x / self.units.energy_unit if self.physical else x)

    def length_in(self, x):
        return None if x is None else (x / self.units.length_unit if self.physical else x)

    def convert(self, row: dict) -> dict:
        if not self.physical:
            return row
        u = self.units
        out = {}
        for k, v in row.items():
            if v is None or isinstance(v, bool):
                out[k] = v
            elif k in ENERGY_KEYS:
                out[k] = v * u.energy_unit
            elif k in LENGTH_KEYS:
                out[k] = v * u.length_unit
            elif k in INV_LENGTH_KEYS:
                out[k] = v / u.length_unit
            elif k == "lam":
                out[k] = v / u.length_unit**2
            else:
                out[k] = v
        return out

    def confinement(self, args, default=0.0):
        if getattr(args, "ell0", None) is not None:
            return units.length_to_frequency(self.length_in(args.ell0))
        if getattr(args, "w0", None) is not None:
            return self.energy_in(args.w0)
        return default


def table1_rows(max_j: int, max_abs_m: int, w0: float = 0.0) -> list[dict]:
    """Engine values next to the transcribed closed forms, one row per entry."""
    rows = []
    for j in range(1, max_j + 1):
        for abs_m in range(max_abs_m + 1):
            for sol in engine.solve_qes(j, abs_m):
                n = sol.node_count
                closed = (j, n) in engine.TABLE1_ROWS
                beta_engine = float(sol.p_coeffs[1])
                w_closed = engine.table1_frequency(j, n, abs_m) if closed else None
                beta_closed = engine.beta1_closed_form(j, n, abs_m, sol.w) if closed else None
                try:
                    half_wc = field.cyclotron_from_w(sol.w, w0) / 2
                except NoRealFieldError:
                    half_wc = None
                delta = None
                if closed:
                    delta = max(abs(sol.w / w_closed - 1), abs(beta_closed / beta_engine - 1))
                rows.append({
                    "j": j, "n": n, "abs_m": abs_m, "dE_over_hbar_w": j,
                    "beta1_closed": beta_closed, "beta1_engine": beta_engine,
                    "w_closed": w_closed, "w_engine": sol.w, "half_wc": half_wc,
                    "rel_delta": delta,
                })
    rows.sort(key=lambda r: (r["j"], r["n"], r["abs_m"]))
    return rows


def solution_row(sol: engine.QesSolution, w0=None, wc=None, B=None) -> dict:
    g = sol.g_report
    return {
        "N": sol.N, "abs_m": sol.abs_m, "node_count": sol.node_count, "lam": sol.lam,
        "w": sol.w, "e_prime": sol.e_prime, "coulomb_lock": sol.coulomb_lock,
        "p_coeffs": [float(c) for c in sol.p_coeffs], "g_betas": list(g.betas),
        "g_n_factor": g.n_factor, "g_remainder_norm": g.remainder_norm,
        "w0": w0, "wc": wc, "B": B,
    }


def _cmd_table1(args, ctx):
    w0 = ctx.confinement(args)
    rows = table1_rows(args.max_j, args.max_abs_m, w0)
    agree = all(r["rel_delta"] is None or r["rel_delta"] < 1e-10 for r in rows)
    return rows, {"agree": agree}, 0 if agree else 1


def _cmd_solve(args, ctx):
    rows = []
    for sol in engine.solve_qes(args.n_deg, args.abs_m):
        if args.b_field is not None:
            try:
                c = field.constraint_for_field(sol, args.b_field, ctx.units)
                rows.append(solution_row(sol, c.w0, c.wc, c.B))
            except NoRealFieldError:
                rows.append(solution_row(sol, None, ctx.units.cyclotron_from_field(abs(args.b_field)), abs(args.b_field)))
            continue
        w0 = ctx.confinement(args)
        try:
            c = field.constraint_for(sol, w0, ctx.units)
            rows.append(solution_row(sol, w0, c.wc, c.B if ctx.physical else None))
        except NoRealFieldError:
            rows.append(solution_row(sol, w0, None, None))
    return rows, {}, 0


def _cmd_verify(args, ctx):
    if not 0 < args.tol <= 1e-2:
        raise CliError(f"--tol must lie in (0, 1e-2], got {args.tol}")
    reports = [
        oracle.verify_solution(s, args.method, args.tol)
        for s in engine.solve_qes(args.n_deg, args.abs_m)
    ]
    passed = all(r.passed for r in reports)
    rows = [dict(r.__dict__) for r in reports]
    return rows, {"passed": passed}, 0 if passed else 1


def _cmd_spectrum(args, ctx):
    w0 = ctx.confinement(args, default=None)
    if w0 is None:
        raise CliError("spectrum needs --w0 or --ell0")
    sols = engine.solve_qes(args.n_deg, args.abs_m)
    lines = spectrum.total_spectrum(sols, w0, cm_range=args.cm_max, parity=args.parity)
    rows = [{
        "e_total": ln.e_total, "e_cm": ln.e_cm, "e_rm": ln.e_rm, "n_cm": ln.n_cm,
        "m_cm": ln.m_cm, "m_rel": ln.m_rel, "N": ln.rel.N, "node_count": ln.rel.node_count,
        "w": ln.w, "wc": ln.wc,
    } for ln in lines]
    return rows, {}, 0


def _cmd_sweep(args, ctx):
    w0 = ctx.confinement(args, default=None)
    if w0 is None:
        raise CliError("sweep needs --w0 or --ell0")
    if args.steps < 1:
        raise CliError("--steps must be >= 1")
    lo, hi = ctx.energy_in(args.wc_min), ctx.energy_in(args.wc_max)
    grid = np.linspace(lo, hi, args.steps) if args.steps > 1 else np.array([lo])
    pts = spectrum.ground_state_sweep(w0, grid, range(0, -args.m_max - 1, -1), method=args.method)
    rows = [{"wc": p.wc, "m": p.m, "e_min": p.e_min} for p in pts]
    return rows, {"staircase": spectrum.is_staircase(pts)}, 0


def _cmd_wavefunction(args, ctx):
    sols = engine.solve_qes(args.n_deg, args.abs_m)
    if not 0 <= args.index < len(sols):
        raise CliError(f"--index {args.index} out of range: {len(sols)} solution(s) for this (N, |m|)")
    if args.samples < 1:
        raise CliError("--samples must be >= 1")
    sol = sols[args.index]
    r_max = ctx.length_in(args.r_max)
    r = r_max * np.arange(1, args.samples + 1) / args.samples
    psi = engine.wavefunction_eval(sol, r)
    rows = [{"r": float(a), "psi": float(b)} for a, b in zip(r, psi)]
    header = {"lam": sol.lam, "w": sol.w, "e_prime": sol.e_prime, "node_count": sol.node_count}
    return rows, {"header": header}, 0


COMMANDS = {
    "table1": _cmd_table1,
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "spectrum": _cmd_spectrum,
    "sweep": _cmd_sweep,
    "wavefunction": _cmd_wavefunction,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--material", choices=sorted(units.MATERIALS), default="gaas")
    common.add_argument("--m-star", type=float)
    common.add_argument("--eps-r", type=float)
    conf = common.add_mutually_exclusive_group()
    conf.add_argument("--w0", type=float, help="confinement hbar*w0 (effective Hartree, or meV)")
    conf.add_argument("--ell0", type=float, help="zero-field dot length (effective Bohr, or nm)")
    common.add_argument("--physical-units", action="store_true")
    common.add_argument("--format", choices=("csv", "json"), help="default: json for verify, csv otherwise")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="qesdot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", parents=[common], help="reproduce the closed-form table")
    p.add_argument("--max-j", type=int, default=4)
    p.add_argument("--max-abs-m", type=int, default=3)

    p = sub.add_parser("solve", parents=[common], help="quasi-exact states of degree N")
    p.add_argument("--n-deg", type=int, required=True)
    p.add_argument("--abs-m", type=int, required=True)
    p.add_argument("--b-field", type=float, help="flux density in tesla; reports the w0 it needs")

    p = sub.add_parser("verify", parents=[common], help="check states against an oracle")
    p.add_argument("--n-deg", type=int, required=True)
    p.add_argument("--abs-m", type=int, required=True)
    p.add_argument("--method", choices=("fd", "ritz"), default="ritz")
    p.add_argument("--tol", type=float, default=1e-8)

    p = sub.add_parser("spectrum", parents=[common], help="total two-electron levels")
    p.add_argument("--n-deg", type=int, required=True)
    p.add_argument("--abs-m", type=int, required=True)
    p.add_argument("--cm-max", type=int, default=0)
    p.add_argument("--parity", choices=("even", "odd"))

    p = sub.add_parser("sweep", parents=[common], help="ground state versus cyclotron frequency")
    p.add_argument("--wc-min", type=float, required=True)
    p.add_argument("--wc-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--m-max", type=int, default=4)
    p.add_argument("--method", choices=("fd", "ritz"), default="fd")

    p = sub.add_parser("wavefunction", parents=[common], help="sample psi(r) of one state")
    p.add_argument("--n-deg", type=int, required=True)
    p.add_argument("--abs-m", type=int, required=True)
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--r-max", type=float, required=True)
    return parser


def render(command: str, rows: list[dict], extra: dict, fmt: str, physical: bool, params: dict) -> str:
    if fmt == "json":
        doc = {
            "command": command,
            "units": "physical" if physical else "effective",
            "params": params,
            "rows": rows,
            **extra,
        }
        return json.dumps(_jsonable_tree(doc), indent=2) + "\n"
    buf = io.StringIO()
    if command == "wavefunction":
        for k, v in extra["header"].items():
            buf.write(f"# {k}={_fmt(v)}\n")
    if rows:
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(rows[0]))
        for row in rows:
            writer.writerow([_fmt(v) for v in row.values()])
    return buf.getvalue()


def _jsonable_tree(x):
    if isinstance(x, dict):
        return {k: _jsonable_tree(v) for k, v in x.items()}
    return _jsonable(x)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ctx = Context(args)
        rows, extra, status = COMMANDS[args.command](args, ctx)
    except (QesError, ValueError, ZeroDivisionError) as exc:
        print(f"qesdot: error: {exc}", file=sys.stderr)
        return 2
    rows = [ctx.convert(r) for r in rows]
    if "header" in extra:
        extra = {**extra, "header": ctx.convert(extra["header"])}
    fmt = args.format or ("json" if args.command == "verify" else "csv")
    params = {k: v for k, v in vars(args).items() if k not in ("command", "output", "format")}
    text = render(args.command, rows, extra, fmt, ctx.physical, params)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
