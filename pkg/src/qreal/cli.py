"""Command-line front end: ``qreal check | sweep | generate``.

Exit codes: 0 realizable, 1 I/O or format error, 2 not realizable,
3 assumptions failed, 4 generator retry cap exceeded.
"""
import argparse
import io
import json
import os
import sys as _sys

import numpy as np

from .errors import QrealError
from .freqcond import TOL_POS, GridSpec, check_positivity, sweep
from .realize import generate_system, random_parameters, split_input
from .report import REALIZABLE, Tolerances, analyze
from .riccati import TOL_REL, TOL_SING
from .ssmodel import TOL_GAP, QuantumLinearSystem
from .sysfile import SchemaError, load_system, system_to_dict, write_atomic

EXIT_IO = 1
EXIT_RETRY = 4
MAX_RETRIES = 100


def _color(text, code, stream):
    if os.environ.get("NO_COLOR") is not None or not getattr(stream, "isatty", lambda: False)():
        return text
    return f"\033[{code}m{text}\033[0m"


def _fmt_matrix(rows, indent="    "):
    return "\n".join(indent + " ".join(f"{v:9.4f}" for v in row) for row in rows)


def format_report(rep, stream=None):
    stream = stream or _sys.stdout
    buf = io.StringIO()
    w = buf.write
    code = {"REALIZABLE": "32", "NOT_REALIZABLE": "31"}.get(rep.verdict, "33")
    w(f"system: {rep.label or '(unlabelled)'}\n")
    w("verdict: " + _color(rep.verdict, code, stream) + "\n")
    for c in rep.causes:
        w(f"  cause: {c}\n")
    a = rep.assumptions
    w("assumptions:\n")
    w(f"  hurwitz            {a['hurwitz']} (spectral abscissa {a['spectral_abscissa']:.4f})\n")
    w(f"  minimal            {a['minimal']} (ranks {a['controllability_rank']}, "
      f"{a['observability_rank']})\n")
    w(f"  disjoint spectra   {a['disjoint_spectra']} (gap {a['min_eigenvalue_gap']:.4g})\n")
    w(f"  H spectrum paired  {a['hamiltonian_symmetric']}\n")
    if rep.nsare:
        n = rep.nsare
        w(f"riccati solution X (residual {n['residual']:.2e}, skew defect "
          f"{n['skew_defect']:.2e}, sigma ratio {n['sigma_min_ratio']:.4f}):\n")
        w(_fmt_matrix(n["x"]) + "\n")
    if rep.realization:
        r = rep.realization
        w(f"realization residuals: {r['theorem1_residual_1']:.2e}, "
          f"{r['theorem1_residual_2']:.2e}\n")
        w("  B_v (canonical coordinates):\n" + _fmt_matrix(r["b_v_canonical"], "    ") + "\n")
        w("  B_v (original coordinates):\n" + _fmt_matrix(r["b_v_original"], "    ") + "\n")
    if rep.factorization:
        f = rep.factorization
        w(f"factorization: d1 {f['d1_max_error']:.2e}, d2 {f['d2_ok']}, d3 {f['d3_ok']} "
          f"(gap {f['min_pole_gap']:.3g}), d4 {f['d4_error']:.2e}, "
          f"det identity {f['det_identity_max_rel_error']:.2e}, degree {f['mcmillan_degree_ok']}\n")
    fr = rep.frequency or {}
    if "error" in fr:
        w(f"frequency condition: not evaluated ({fr['error']})\n")
    elif fr:
        w(f"frequency condition: holds={fr['holds']} min det {fr['min_real']:.6f} "
          f"at omega {fr['witness_omega']:.4g}\n")
    return buf.getvalue()


def _tolerances(args):
    return Tolerances(res=args.tol_res, sing=args.tol_sing, gap=args.tol_gap, pos=args.tol_pos)


def cmd_check(args):
    sys_, label = load_system(args.file)
    rep = analyze(sys_, label=label, tol=_tolerances(args))
    if args.out:
        write_atomic(args.out, rep.to_json() + "\n")
    _sys.stdout.write(format_report(rep))
    return rep.exit_code


def sweep_csv(sw):
    lines = ["omega,det_real,det_imag"]
    for w, d in zip(sw.omegas, sw.det_values):
        lines.append(f"{w:.17g},{d.real:.17g},{d.imag:.17g}")
    return "\n".join(lines) + "\n"


def cmd_sweep(args):
    sys_, _ = load_system(args.file)
    custom = any(v is not None for v in (args.omega_min, args.omega_max, args.points))
    d = GridSpec()
    grid = GridSpec(
        omega_min=args.omega_min if args.omega_min is not None else d.omega_min,
        omega_max=args.omega_max if args.omega_max is not None else d.omega_max,
        points=args.points if args.points is not None else d.points,
        endpoints=not custom,
    )
    sw = sweep(sys_, grid)
    if args.csv:
        write_atomic(args.csv, sweep_csv(sw))
    pos = check_positivity(sw, args.tol_pos)
    print(f"points: {sw.omegas.size}")
    print(f"min_real: {sw.min_real:.17g}")
    print(f"witness_omega: {pos.witness_omega:.17g}")
    print(f"condition holds: {pos.holds}")
    return 0


def generated_system(seed, n, n_w, n_y):
    rng = np.random.default_rng(seed)
    params = random_parameters(rng, n, n_w)
    a, b, c, _ = generate_system(params, n_y)
    b_u, _ = split_input(b, n_y)
    return QuantumLinearSystem(a, b_u, c)


def cmd_generate(args):
    n, n_w, n_y = args.n, args.nw, args.ny
    for name, v in (("--n", n), ("--nw", n_w), ("--ny", n_y)):
        if v < 2 or v % 2:
            print(f"error: {name} must be even and positive, got {v}", file=_sys.stderr)
            return EXIT_IO
    if n_w - n_y < 2:
        print("error: --nw must exceed --ny by at least 2 (signal input needs n_u >= 2)",
              file=_sys.stderr)
        return EXIT_IO
    for retry in range(MAX_RETRIES):
        seed = args.seed + retry
        sys_ = generated_system(seed, n, n_w, n_y)
        if analyze(sys_).verdict == REALIZABLE:
            break
    else:
        print(f"error: no realizable system after {MAX_RETRIES} seeds", file=_sys.stderr)
        return EXIT_RETRY
    label = f"generated seed={args.seed} retries={retry}"
    text = json.dumps(system_to_dict(sys_, label), indent=2) + "\n"
    if args.out:
        write_atomic(args.out, text)
    else:
        _sys.stdout.write(text)
    print(f"retries: {retry}", file=_sys.stderr)
    return 0


class _Parser(argparse.ArgumentParser):
    # exit code 2 is reserved for "not realizable"
    def error(self, message):
        self.print_usage(_sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(
        prog="qreal",
        description="Physical realizability of transfer functions with direct "
                    "feedthrough quantum noise.")
    sub = p.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("check", help="run the full realizability analysis")
    pc.add_argument("file")
    pc.add_argument("--out", help="write the JSON report here")
    pc.add_argument("--tol-res", type=float, default=TOL_REL)
    pc.add_argument("--tol-sing", type=float, default=TOL_SING)
    pc.add_argument("--tol-gap", type=float, default=TOL_GAP)
    pc.add_argument("--tol-pos", type=float, default=TOL_POS)
    pc.set_defaults(func=cmd_check)

    ps = sub.add_parser("sweep", help="frequency sweep of the determinant condition")
    ps.add_argument("file")
    ps.add_argument("--csv", help="CSV output path")
    ps.add_argument("--omega-min", type=float)
    ps.add_argument("--omega-max", type=float)
    ps.add_argument("--points", type=int)
    ps.add_argument("--tol-pos", type=float, default=TOL_POS)
    ps.set_defaults(func=cmd_sweep)

    pg = sub.add_parser("generate", help="write a random realizable system file")
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("--n", type=int, default=4)
    pg.add_argument("--nw", type=int, default=4)
    pg.add_argument("--ny", type=int, default=2)
    pg.add_argument("--out")
    pg.set_defaults(func=cmd_generate)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_IO
    except QrealError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=_sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    _sys.exit(main())
