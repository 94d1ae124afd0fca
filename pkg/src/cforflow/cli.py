"""Command-line interface: run cases, analyze filters, export stencils.

Exit codes: 0 success, 2 configuration error, 3 solver failure, 4 I/O
failure.  The default output directory comes from CFORFLOW_OUTDIR.
"""

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .benchmarks import (CASES, CaseConfig, CaseRunError, ConfigError, default_config,
                         load_config, run_case)
from .fields import Field, save_field_csv
from .kernels import HERMITE, RSK, KernelError, KernelSpec, halfgrid_stencil, stencil
from .reference import (CFOR_COLUMNS, ENTROPY_AMPLITUDE, REPRODUCE_POLICY, SHOCK_AMPLITUDE_TOL,
                        SHOCK_CASES, TAYLOR_L2, TAYLOR_LINF, TAYLOR_PPW, VORTEX_L1, VORTEX_L2,
                        VORTEX_LONG, VORTEX_ORDER_40_80, WAVEPACKET_L1_DT1E4,
                        WAVEPACKET_L1_DT5E6, WAVEPACKET_LONG, within_orders)
from .spectral import DEFAULT_TIERS, effective_band, frequency_response, response_table

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_IO = 4


def _outdir(args):
    path = Path(args.output or os.environ.get("CFORFLOW_OUTDIR", "."))
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_manifest(outdir, name, payload):
    payload = dict(payload)
    payload["cforflow_version"] = __version__
    payload["numpy_version"] = np.__version__
    with open(outdir / f"{name}_manifest.json", "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=str)


def write_artifacts(result, outdir, name=None):
    """Write error tables, snapshots, the run log, and a manifest."""
    cfg = result.config
    name = name or (cfg.label or cfg.case)
    rows = []
    for s in result.samples:
        row = {"t": s.t}
        if s.errors is not None:
            row.update({"l1": s.errors.l1, "l2": s.errors.l2, "linf": s.errors.linf})
        row.update(s.diagnostics)
        rows.append(row)
    keys = sorted({k for row in rows for k in row}, key=lambda k: (k != "t", k))
    with open(outdir / f"{name}_errors.csv", "w") as fh:
        fh.write(",".join(keys) + "\n")
        for row in rows:
            fh.write(",".join(_cell(row.get(k)) for k in keys) + "\n")
    for label, snap in result.snapshots.items():
        path = outdir / f"{name}_{label}.csv"
        if isinstance(snap, Field):
            save_field_csv(snap, path)
        else:  # columnar dict of 1-d arrays
            cols = list(snap)
            with open(path, "w") as fh:
                fh.write(",".join(cols) + "\n")
                for vals in zip(*snap.values()):
                    fh.write(",".join(f"{v:.17e}" for v in vals) + "\n")
    result.log.write(outdir / f"{name}_run.log")
    _write_manifest(outdir, name, cfg.to_dict())
    return outdir / f"{name}_errors.csv"


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17e}"
    if isinstance(value, tuple):
        return "(" + ";".join(f"{v:.8g}" for v in value) + ")"
    return str(value)


def _cmd_run(args):
    cfg = load_config(args.config)
    outdir = _outdir(args)
    result = run_case(cfg, progress=not args.quiet)
    path = write_artifacts(result, outdir)
    for s in result.samples:
        if s.errors is not None:
            print(f"t={s.t:g}: L1={s.errors.l1:.6e} L2={s.errors.l2:.6e} Linf={s.errors.linf:.6e}")
        else:
            extra = {k: v for k, v in s.diagnostics.items() if isinstance(v, float)}
            print(f"t={s.t:g}: " + " ".join(f"{k}={v:.6g}" for k, v in extra.items()))
    print(f"artifacts written under {path.parent}")
    return EXIT_OK


def _kernel_spec_from_args(args):
    return KernelSpec(args.family, args.W, args.r, args.n)


def _cmd_analyze(args):
    spec = _kernel_spec_from_args(args)
    outdir = _outdir(args)
    if args.half_grid:
        sw = halfgrid_stencil(spec)
    else:
        sw = stencil(spec, args.q)
    resp = frequency_response(sw, samples=args.samples)
    base = f"response_{args.family}_q{args.q}{'_half' if args.half_grid else ''}_r{args.r:g}"
    response_table(resp, outdir / f"{base}.csv", normalize=args.normalize)
    print(f"# band edges for {args.family} W={args.W} r={args.r} "
          f"{'half-grid' if args.half_grid else f'q={args.q}'} (units 1/delta)")
    tolerances = args.tolerances or DEFAULT_TIERS
    for tol in sorted(tolerances):
        edge = effective_band(resp, tol)
        marker = "" if edge.bracketed else "  (not bracketed)"
        print(f"tol={tol:.1e}: omega* = {edge.omega:.6f} ({edge.omega/np.pi:.4f} pi){marker}")
    print(f"response table: {outdir / (base + '.csv')}")
    _write_manifest(outdir, base, vars(args) | {"command": "analyze"})
    return EXIT_OK


def _cmd_stencil(args):
    spec = _kernel_spec_from_args(args)
    sw = halfgrid_stencil(spec) if args.half_grid else stencil(spec, args.q)
    table = sw.as_table()
    if args.output:
        outdir = _outdir(args)
        base = f"stencil_{args.family}_q{args.q}{'_half' if args.half_grid else ''}_r{args.r:g}.txt"
        (outdir / base).write_text(table)
        print(outdir / base)
    else:
        sys.stdout.write(table)
    return EXIT_OK


def _cmd_list(args):
    print("available cases (defaults shown):")
    for case in CASES:
        cfg = default_config(case)
        pieces = [f"N={cfg.N}"]
        if cfg.k is not None:
            pieces.append(f"k={cfg.k:g}")
        if cfg.kappa is not None:
            pieces.append(f"kappa={cfg.kappa:g}")
        pieces.append(f"dt={cfg.dt:g}" if cfg.dt else f"cfl={cfg.cfl:g}")
        pieces.append(f"t_final={cfg.t_final:g}")
        pieces.append(f"r_lp={cfg.r_lp:g}")
        print(f"  {case:14s} " + " ".join(pieces))
    if args.write_examples:
        outdir = Path(args.write_examples)
        outdir.mkdir(parents=True, exist_ok=True)
        for case in CASES:
            cfg = default_config(case)
            lines = [f"{k} = {v}" for k, v in cfg.to_dict().items()]
            (outdir / f"{case}.cfg").write_text("\n".join(lines) + "\n")
        print(f"example configs written to {outdir}")
    return EXIT_OK


def _row(label, cells, width=12):
    return label.ljust(14) + "".join(str(c).rjust(width) for c in cells)


def _fmt(v):
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.2e}"
    return str(v)


def _reproduce_taylor(outdir, quiet):
    ks = [1, 2, 5, 10, 13]
    print("Taylor problem, velocity errors at t=2 (N=64)")
    print(_row("", [f"k={k}(PPW {TAYLOR_PPW[k]:g})" for k in ks], width=16))
    all_ok = True
    for kernel, r_lp in (("hermite", 2.5), ("rsk", 2.0)):
        l2_row, linf_row = [], []
        for k in ks:
            cfg = default_config("taylor", k=float(k), kernel=kernel, r_lp=r_lp,
                                 label=f"taylor_{kernel}_k{k}")
            res = run_case(cfg, progress=not quiet)
            err = res.errors_at(2.0)
            write_artifacts(res, outdir)
            ok2 = within_orders(err.l2, TAYLOR_L2[kernel][k])
            okf = within_orders(err.linf, TAYLOR_LINF[kernel][k])
            all_ok &= (ok2 is not False) and (okf is not False)
            l2_row.append(f"{_fmt(err.l2)}/{_fmt(TAYLOR_L2[kernel][k])}{_pf(ok2)}")
            linf_row.append(f"{_fmt(err.linf)}/{_fmt(TAYLOR_LINF[kernel][k])}{_pf(okf)}")
        print(_row(f"L2 {kernel}", l2_row, width=24))
        print(_row(f"Linf {kernel}", linf_row, width=24))
    return all_ok


def _pf(ok):
    if ok is None:
        return ""
    return " PASS" if ok else " FAIL"


def _reproduce_wavepacket(outdir, quiet, dt, reference, label):
    ks = sorted(reference)
    times = (2.0, 4.0, 6.0, 8.0, 10.0)
    print(f"Wavepacket L1 errors, dt={dt:g} (computed/reference)")
    print(_row("t", [f"k={k}" for k in ks], width=22))
    results = {}
    for k in ks:
        cfg = default_config("wavepacket", k=float(k), dt=dt, t_final=10.0,
                             sample_times=times, label=f"{label}_k{k}")
        res = run_case(cfg, progress=not quiet)
        write_artifacts(res, outdir)
        results[k] = res
    all_ok = True
    for t in times:
        cells = []
        for k in ks:
            got = results[k].errors_at(t).l1
            ref = reference[k][int(t)]
            ok = within_orders(got, ref)
            all_ok &= ok is not False
            cells.append(f"{_fmt(got)}/{_fmt(ref)}{_pf(ok)}")
        print(_row(f"{t:g}", cells, width=24))
    return all_ok


def _reproduce_vortex(outdir, quiet, which):
    table = VORTEX_L1 if which == "L1" else VORTEX_L2
    print(f"Isentropic vortex {which}(rho) at t=2; CFOR runs recomputed at N=40, 80;")
    print("other schemes and N=160/320 are reference only.")
    runs = {}
    for column, cfl in (("cfor1", 0.5), ("cfor2", 0.01)):
        for N in (40, 80):
            cfg = default_config("vortex", N=N, cfl=cfl, t_final=2.0,
                                 label=f"vortex_{column}_N{N}")
            res = run_case(cfg, progress=not quiet)
            write_artifacts(res, outdir)
            err = res.errors_at(2.0)
            runs[(column, N)] = err.l1 if which == "L1" else err.l2
    all_ok = True
    header = ["N=40", "N=80", "order"]
    print(_row("", header, width=26))
    for column in table:
        if column in CFOR_COLUMNS:
            e40, e80 = runs[(column, 40)], runs[(column, 80)]
            order = np.log2(e40 / e80)
            ok40 = within_orders(e40, table[column][40])
            ok80 = within_orders(e80, table[column][80])
            all_ok &= (ok40 is not False) and (ok80 is not False)
            cells = [f"{_fmt(e40)}/{_fmt(table[column][40])}{_pf(ok40)}",
                     f"{_fmt(e80)}/{_fmt(table[column][80])}{_pf(ok80)}",
                     f"{order:.2f}/{VORTEX_ORDER_40_80[column + '_' + which]:g}"]
            print(_row(column, cells, width=26))
        else:
            cells = [_fmt(table[column][40]), _fmt(table[column][80]), ""]
            print(_row(column + "*", cells, width=26))
    print("* reference only")
    return all_ok


def _reproduce_vortex_long(outdir, quiet):
    times = (2.0, 10.0, 50.0, 100.0)
    print("Isentropic vortex long run, N=80, CFL=0.5 (computed/reference)")
    cfg = default_config("vortex", N=80, cfl=0.5, t_final=100.0,
                         sample_times=times, label="vortex_long")
    res = run_case(cfg, progress=not quiet)
    write_artifacts(res, outdir)
    all_ok = True
    for norm in ("L1", "L2"):
        cells = []
        for t in times:
            err = res.errors_at(t)
            got = err.l1 if norm == "L1" else err.l2
            ref = VORTEX_LONG[norm][int(t)]
            ok = within_orders(got, ref)
            all_ok &= ok is not False
            cells.append(f"{_fmt(got)}/{_fmt(ref)}{_pf(ok)}")
        print(_row(norm, cells, width=26))
    return all_ok


def _reproduce_shock(outdir, quiet):
    print("Shock/entropy-wave interaction case matrix")
    print(_row("case", ["kappa", "N", "PPW", "amplitude", "target", "status"], width=12))
    all_ok = True
    for case_id, (kappa, N, ppw) in SHOCK_CASES.items():
        cfg = default_config("shock_entropy", kappa=float(kappa), N=N,
                             label=f"shock_case{case_id}")
        try:
            res = run_case(cfg, progress=not quiet)
            amp = res.samples[-1].diagnostics["amplitude"]
            write_artifacts(res, outdir)
            tol = SHOCK_AMPLITUDE_TOL.get((kappa, N))
            if tol is None:
                status = "reported"
            else:
                ok = abs(amp / ENTROPY_AMPLITUDE - 1.0) <= tol
                all_ok &= ok
                status = ("PASS" if ok else "FAIL") + f" (tol {tol:.0%})"
            cells = [kappa, N, ppw, f"{amp:.5f}", f"{ENTROPY_AMPLITUDE:.5f}", status]
        except CaseRunError as exc:
            all_ok = False
            cells = [kappa, N, ppw, "-", f"{ENTROPY_AMPLITUDE:.5f}", f"BLOWUP"]
        print(_row(str(case_id), cells, width=12))
    return all_ok


def _cmd_reproduce(args):
    outdir = _outdir(args)
    table = args.table
    ok = True
    if table == 1:
        ok = _reproduce_taylor(outdir, args.quiet)
    elif table == 2:
        ok = _reproduce_wavepacket(outdir, args.quiet, 1e-4, WAVEPACKET_L1_DT1E4, "wp_dt1e4")
    elif table == 3:
        ok = _reproduce_wavepacket(outdir, args.quiet, 5e-6, WAVEPACKET_L1_DT5E6, "wp_dt5e6")
    elif table == 4:
        ok = _reproduce_vortex(outdir, args.quiet, "L1")
    elif table == 5:
        ok = _reproduce_vortex(outdir, args.quiet, "L2")
    elif table == 6:
        ok = _reproduce_vortex_long(outdir, args.quiet)
    elif table == 7:
        ok = _reproduce_shock(outdir, args.quiet)
    print("overall:", "PASS" if ok else "FAIL", f"(policy: within {REPRODUCE_POLICY['orders']:g} orders)")
    return EXIT_OK if ok else EXIT_SOLVER


def build_parser():
    parser = argparse.ArgumentParser(prog="cforflow",
                                     description="Conjugate-filter flow solver benchmarks")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p_run = sub.add_parser("run", help="run a benchmark case from a config file")
    p_run.add_argument("config")
    p_run.add_argument("-o", "--output", default=None)
    p_run.add_argument("-q", "--quiet", action="store_true")
    p_run.set_defaults(func=_cmd_run)

    def add_kernel_args(p):
        p.add_argument("--family", choices=(HERMITE, RSK), default=HERMITE)
        p.add_argument("-W", type=int, default=32)
        p.add_argument("-r", type=float, default=3.05)
        p.add_argument("-n", type=int, default=88)
        p.add_argument("-q", "--q", type=int, default=1, choices=(0, 1, 2))
        p.add_argument("--half-grid", action="store_true")

    p_an = sub.add_parser("analyze", help="frequency response and band edges of a stencil")
    add_kernel_args(p_an)
    p_an.add_argument("--samples", type=int, default=4097)
    p_an.add_argument("--normalize", action="store_true",
                      help="normalize the CSV response to unit peak (plot parity)")
    p_an.add_argument("--tolerances", type=float, nargs="*", default=None)
    p_an.add_argument("-o", "--output", default=None)
    p_an.set_defaults(func=_cmd_analyze)

    p_st = sub.add_parser("stencil", help="export stencil weights as a text table")
    add_kernel_args(p_st)
    p_st.add_argument("-o", "--output", default=None)
    p_st.set_defaults(func=_cmd_stencil)

    p_ls = sub.add_parser("list", help="list benchmark cases and defaults")
    p_ls.add_argument("--write-examples", default=None, metavar="DIR")
    p_ls.set_defaults(func=_cmd_list)

    p_rt = sub.add_parser("reproduce-table", help="recompute a reference table")
    p_rt.add_argument("table", type=int, choices=range(1, 8))
    p_rt.add_argument("-o", "--output", default=None)
    p_rt.add_argument("-q", "--quiet", action="store_true", default=True)
    p_rt.add_argument("--progress", dest="quiet", action="store_false")
    p_rt.set_defaults(func=_cmd_reproduce)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, KernelError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CaseRunError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
