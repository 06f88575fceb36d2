"""Command-line interface: ``quadcurl study`` and ``quadcurl check``."""
from __future__ import annotations

import argparse
import csv
import io
import logging
import sys

from .study import ERROR_KEYS, StudyConfig, SubdomainError, run_convergence

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2

DEFAULT_EPS = {1: (1.0, 1e-2, 1e-5), 2: (1e-6,)}
RATE_NAMES = {"E_L2": "rate_L2", "E_curl": "rate_curl", "E_gc": "rate_gc", "E_energy": "rate_energy"}


class UsageError(Exception):
    pass


def _bool(text):
    low = str(text).lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(prog="quadcurl", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    st = sub.add_parser("study", help="run a mesh-refinement study and write the error table")
    st.add_argument("--example", type=int, choices=(1, 2), default=1)
    st.add_argument("--eps", type=float, action="append", help="repeatable; defaults depend on the example")
    st.add_argument("--n", type=int, action="append", dest="ns", help="repeatable mesh resolution")
    st.add_argument("--n-min", type=int)
    st.add_argument("--n-max", type=int)
    st.add_argument("--n-step", type=int, default=2)
    st.add_argument("--bc", choices=("weak", "strong"), default="weak")
    st.add_argument("--sigma", type=float)
    st.add_argument("--subdomain", type=_bool, nargs="?", const=True, default=False)
    st.add_argument("--quad-assembly", type=int, default=12)
    st.add_argument("--quad-error", type=int, default=14)
    st.add_argument("--quad-load", type=int, default=16)
    st.add_argument("--out", help="output path (stdout when omitted)")
    st.add_argument("--format", choices=("csv", "markdown"), default="csv")

    sub.add_parser("check", help="run the built-in property checks")
    return parser


def _resolutions(args):
    if args.ns and (args.n_min is not None or args.n_max is not None):
        raise UsageError("use either --n or --n-min/--n-max, not both")
    if args.ns:
        ns = sorted(set(args.ns))
    elif args.n_min is not None and args.n_max is not None:
        if args.n_step < 1 or args.n_min > args.n_max:
            raise UsageError("need n-min <= n-max and n-step >= 1")
        ns = list(range(args.n_min, args.n_max + 1, args.n_step))
    else:
        ns = [8, 10, 12]
    if ns[0] < 1:
        raise UsageError("mesh resolutions must be positive")
    return tuple(ns)


def config_from_args(args):
    eps = tuple(args.eps) if args.eps else DEFAULT_EPS[args.example]
    if any(not e > 0 for e in eps):
        raise UsageError("--eps values must be positive")
    if args.example == 1 and any(e > 1 for e in eps):
        raise UsageError("example 1 needs eps in (0, 1]")
    if args.sigma is not None and not args.sigma > 0:
        raise UsageError("--sigma must be positive")
    try:
        return StudyConfig(
            example=args.example, epsilons=eps, Ns=_resolutions(args), bc_flavor=args.bc,
            sigma=args.sigma, subdomain=args.subdomain, quad_assembly=args.quad_assembly,
            quad_error=args.quad_error, quad_load=args.quad_load,
        )
    except SubdomainError as exc:
        raise UsageError(str(exc)) from exc


def _e(x):
    return "" if x is None else f"{x:.3e}"


def _r(x):
    return "" if x is None else f"{x:.2f}"


def csv_table(table):
    cfg = table.config
    header = ["example", "bc", "sigma", "eps", "N", "h"]
    for k in ERROR_KEYS:
        header += [k, RATE_NAMES[k]]
    if cfg.subdomain:
        for k in ERROR_KEYS:
            header += [k + "_sub", RATE_NAMES[k] + "_sub"]
    header.append("status")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in table.rows:
        rep = row.report
        line = [cfg.example, cfg.bc_flavor, f"{cfg.sigma:g}", f"{row.epsilon:g}", row.N,
                f"{rep.h:.4f}" if rep else ""]
        for k in ERROR_KEYS:
            line += [_e(getattr(rep, k) if rep else None), _r(row.rates.get(k))]
        if cfg.subdomain:
            for k in ERROR_KEYS:
                line += [_e(rep.subdomain[k] if rep else None), _r(row.subdomain_rates.get(k))]
        line.append("ok" if rep else row.failure)
        w.writerow(line)
    return buf.getvalue()


def markdown_table(table):
    """Error/rate columns alternating; with a subdomain only the restricted errors."""
    cfg = table.config
    energy = "E_eps_h" if cfg.bc_flavor == "weak" else "E_A"
    names = ["E_L2", "E_curl", "E_gc", energy]
    suffix = ",Omega0" if cfg.subdomain else ""
    cols = ["eps", "h"]
    for n in names:
        cols += [n.replace("E_", "E_{", 1) + suffix + "}", "rate"]
    out = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for row in table.rows:
        rep = row.report
        if rep is None:
            out.append(f"| {row.epsilon:g} | N={row.N} failed: {row.failure} |")
            continue
        src = rep.subdomain if cfg.subdomain else rep.__dict__
        rates = row.subdomain_rates if cfg.subdomain else row.rates
        cells = [f"{row.epsilon:g}", f"{rep.h:.4f}"]
        for k in ERROR_KEYS:
            cells += [_e(src[k]), _r(rates.get(k))]
        out.append("| " + " | ".join(cells) + " |")
    return "\n".join(out) + "\n"


def _study(args):
    try:
        config = config_from_args(args)
    except UsageError as exc:
        print(f"quadcurl study: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    def progress(row):
        state = "ok" if row.report else f"FAILED ({row.failure})"
        logging.getLogger("quadcurl").info("eps=%g N=%d %s in %.1f s", row.epsilon, row.N, state, row.seconds)

    table = run_convergence(config, progress=progress)
    text = csv_table(table) if args.format == "csv" else markdown_table(table)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if all(r.report is not None for r in table.rows) else EXIT_NUMERICAL


def _check():
    from .checks import run_checks

    results = run_checks()
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'}  {r.name:<14} {r.detail}")
    return EXIT_OK if all(r.ok for r in results) else EXIT_NUMERICAL


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "study":
        return _study(args)
    return _check()


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
