"""Command-line front end: `verify`, `fuzz` and `estimates`."""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import ParseError, TorsionSpinError, UnknownTarget
from .estimates import EstimateInput, beta_tw, beta_univ, inequality_suite, killing_criterion, spinor_constants
from .exactfield import ExactScalar, lower, parse_scalar
from .linalg import EXACT, FLOAT
from .report import render
from .verify import run_fuzz, run_verify

EXIT_CAP = 125
EXIT_USAGE = 126


def _exit_code(failed: int) -> int:
    return min(failed, EXIT_CAP)


def _scalar(text: str) -> ExactScalar:
    try:
        return parse_scalar(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--float", action="store_true", help="floating-point arithmetic instead of exact")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--only", metavar="PREFIX", help="keep only checks whose id starts with PREFIX")

    p = argparse.ArgumentParser(prog="torsionspin", description=__doc__)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="verify a catalog space or a JSON space definition")
    v.add_argument("target", help="b7, s3, nk6-table, npg2-table, or a path to a space JSON file")

    f = sub.add_parser("fuzz", parents=[common], help="fuzz the Clifford identities on random 3-forms")
    f.add_argument("--dim", type=int, required=True)
    f.add_argument("--trials", type=int, default=100)

    e = sub.add_parser("estimates", parents=[common], help="evaluate the eigenvalue estimates")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--sca", type=_scalar, required=True, help="minimum of the Riemannian scalar curvature")
    e.add_argument("--tnorm2", type=_scalar, required=True, help="squared torsion length")
    g = e.add_mutually_exclusive_group(required=True)
    g.add_argument("--gamma", type=_scalar, help="T-eigenvalue")
    g.add_argument("--gamma-sq", type=_scalar, help="square of the T-eigenvalue")
    return p


def _estimates(args) -> tuple[dict, list[str]]:
    inp = EstimateInput(args.n, args.sca, args.tnorm2, args.gamma, args.gamma_sq)
    values = {"beta_univ": beta_univ(inp), "killing_gamma_sq": killing_criterion(args.n, args.sca)}
    out = {"n": args.n, "values": {}, "inequalities": None}
    if args.n > 3:
        values["beta_tw"] = beta_tw(inp)
    if args.gamma is not None:
        sc = spinor_constants(args.n, args.gamma, None, args.tnorm2)
        values.update(kappa=sc.kappa, sca_g_from_gamma=sc.sca_g, sca_c_from_gamma=sc.sca_c)
    if 3 < args.n <= 8:
        iq = inequality_suite(inp)
        out["inequalities"] = {
            "torsion_gap": str(iq.torsion_gap), "torsion_status": iq.torsion_status,
            "sca_gap": str(iq.sca_gap), "sca_status": iq.sca_status,
            "killing_flag": iq.killing_flag, "double_equality": iq.double_equality,
        }
    lines = [f"n = {args.n}"]
    for k in sorted(values):
        x = values[k]
        f = lower(x)
        out["values"][k] = {"exact": str(x), "float": render(f, FLOAT)}
        lines.append(f"{k} = {x}  ({render(f, FLOAT)})")
    if out["inequalities"]:
        q = out["inequalities"]
        lines.append(f"torsion inequality: {q['torsion_status']} (gap {q['torsion_gap']})")
        lines.append(f"scalar inequality: {q['sca_status']} (gap {q['sca_gap']})")
        lines.append(f"real Killing spinor flag: {'set' if q['killing_flag'] else 'clear'}")
    return out, lines


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    mode = FLOAT if args.float else EXACT
    try:
        if args.command == "estimates":
            out, lines = _estimates(args)
            text = json.dumps(out, indent=2, sort_keys=True) + "\n" if args.format == "json" else "\n".join(lines) + "\n"
            sys.stdout.write(text)
            return 0
        if args.command == "verify":
            rep = run_verify(args.target, mode, args.only)
        else:
            if args.trials < 0:
                parser.error("--trials must be non-negative")
            rep = run_fuzz(args.dim, args.trials, args.seed, mode).filtered(args.only)
    except UnknownTarget as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except TorsionSpinError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    sys.stdout.write(rep.to_json() if args.format == "json" else rep.to_text())
    return _exit_code(rep.failed)


if __name__ == "__main__":
    sys.exit(main())
