"""Command-line front end.

Distributions are passed as ``X=<path-or-json>`` and ``Y=<path-or-json>``;
the value is read as inline JSON when it starts with ``{`` and as a file path
otherwise.  Exit status: 0 when a checked relation holds (or a computation
succeeds), 1 when it fails, 2 on any input error.

    distorted-sd check --order hdsd --distortion power:0.63 X=x.json Y=y.json
    distorted-sd kstar --side averse X='{"type": "constant", "c": 0.8}' Y=u.json
    distorted-sd curve --distortion power:4 X=x.json Y=y.json > gap.csv
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .distortions import Distortion, Power, parse_distortion
from .distributions import Distribution, from_spec, to_spec
from .dominance import (
    check_fsd,
    check_hdsd,
    check_icx,
    check_mixed,
    check_risk_loving_hdsd,
    check_ssd,
    gap_curve,
)
from .errors import DomainError, NotApplicableError, NotInvertibleError, UnsupportedOperationError
from .kstar import KStarKind, Side, find_kstar
from .risk_measures import distorted_expectation, generalized_gini

ORDERS = ("fsd", "ssd", "icx", "hdsd", "rl-hdsd", "mixed")
_INPUT_ERRORS = (DomainError, NotApplicableError, NotInvertibleError, UnsupportedOperationError)


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _read_distribution(name: str, text: str) -> Distribution:
    text = text.strip()
    if not text.startswith("{"):
        try:
            with open(text, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise CliError(f"{name}: cannot read {text!r} ({exc.strerror})") from None
    try:
        return from_spec(text)
    except DomainError as exc:
        raise CliError(f"{name}: {exc}") from None


def _distributions(items, names):
    """Map ``NAME=VALUE`` arguments (or bare values, in order) onto ``names``."""
    found = {}
    bare = []
    for item in items:
        key, sep, value = item.partition("=")
        if sep and key.strip().upper() in names:
            found[key.strip().upper()] = value
        else:
            bare.append(item)
    for name in names:
        if name not in found and bare:
            found[name] = bare.pop(0)
    if bare:
        raise CliError(f"unexpected argument {bare[0]!r}")
    missing = [n for n in names if n not in found]
    if missing:
        raise CliError(f"{missing[0]}: distribution argument is missing")
    return [_read_distribution(n, found[n]) for n in names]


def _distortion(field: str, text: str | None) -> Distortion:
    if text is None:
        raise CliError(f"{field}: required for this order")
    try:
        return parse_distortion(text)
    except DomainError as exc:
        raise CliError(f"{field}: {exc}") from None


def _pd_distortion(order: float) -> Distortion:
    if not order > 1.0:
        raise CliError(f"--pd-order: must exceed 1, got {order}")
    return Power(1.0 / (order - 1.0))


def _fmt(v) -> str:
    return "none" if v is None else format(float(v), ".17g")


def _cmd_check(args, out) -> int:
    order = args.order
    h = h2 = None
    if order in ("hdsd", "rl-hdsd", "mixed"):
        if args.pd_order is not None and args.distortion is None:
            h = _pd_distortion(args.pd_order)
        else:
            h = _distortion("--distortion", args.distortion)
    if order == "mixed":
        if args.distortion2 is None and args.pd_order is not None:
            h2 = _pd_distortion(args.pd_order)
        else:
            h2 = _distortion("--distortion2", args.distortion2)
    x, y = _distributions(args.dists, ("X", "Y"))
    if order == "fsd":
        verdict = check_fsd(x, y)
    elif order == "ssd":
        verdict = check_ssd(x, y)
    elif order == "icx":
        verdict = check_icx(x, y)
    elif order == "hdsd":
        verdict = check_hdsd(x, y, h)
    elif order == "rl-hdsd":
        verdict = check_risk_loving_hdsd(x, y, h)
    else:
        verdict = check_mixed(x, y, h, h2)
    word = "HOLDS" if verdict.holds else "FAILS"
    out.write(
        f"{word} order={order} min_gap={_fmt(verdict.min_gap)} "
        f"witness={_fmt(verdict.witness)} method={verdict.method.value}\n"
    )
    return 0 if verdict.holds else 1


def _cmd_kstar(args, out) -> int:
    x, y = _distributions(args.dists, ("X", "Y"))
    res = find_kstar(x, y, Side(args.side), args.k_min, args.k_max)
    if res.kind is KStarKind.FSD_HOLDS:
        out.write(f"k*=inf order=1.000000 method={res.method}\n")
    elif res.kind is KStarKind.NONE_IN_RANGE:
        out.write(f"k*=none order=none method={res.method} (fails at k_min={res.search_range[0]:g})\n")
        return 1
    else:
        tail = " at_boundary" if res.at_boundary else ""
        out.write(f"k*={res.k_star:.6f} order={res.order:.6f} method={res.method}{tail}\n")
    return 0


def _cmd_rho(args, out) -> int:
    phi = _distortion("--phi", args.phi)
    (x,) = _distributions(args.dists, ("X",))
    out.write(f"rho={_fmt(distorted_expectation(x, phi))}\n")
    return 0


def _cmd_gini(args, out) -> int:
    if args.n < 1:
        raise CliError(f"--n: must be a positive integer, got {args.n}")
    (x,) = _distributions(args.dists, ("X",))
    rep = generalized_gini(x, args.n)
    out.write(f"xi_{rep.n}={_fmt(rep.xi_n)} gini={_fmt(rep.classic_gini)}\n")
    return 0


def _cmd_curve(args, out) -> int:
    h = _distortion("--distortion", args.distortion)
    if args.n_points < 2:
        raise CliError(f"--n-points: need at least 2, got {args.n_points}")
    x, y = _distributions(args.dists, ("X", "Y"))
    us = np.linspace(0.0, 1.0, args.n_points)
    curve = gap_curve(x, y, h, us)
    out.write("u,D\n")
    for u, d in zip(curve.us, curve.ds):
        out.write(f"{_fmt(u)},{_fmt(d)}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="distorted-sd", description="Distorted stochastic dominance checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    dist_help = "distributions as NAME=path or NAME='{json}'"

    def add(name, help_text, names):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("dists", nargs="*", metavar=names, help=dist_help)
        p.add_argument("--dump-spec", action="store_true", help="print the parsed distributions as JSON and exit")
        return p

    p = add("check", "check a dominance relation between X and Y", "X=... Y=...")
    p.add_argument("--order", required=True, choices=ORDERS)
    p.add_argument("--distortion", help="power:k, identity, phim:m or gp:p")
    p.add_argument("--distortion2", help="risk-loving distortion for --order mixed")
    p.add_argument("--pd-order", type=float, help="power order 1+1/k instead of --distortion")
    p.set_defaults(func=_cmd_check, names=("X", "Y"))

    p = add("kstar", "largest k with power dominance of X over Y", "X=... Y=...")
    p.add_argument("--side", default="averse", choices=[s.value for s in Side])
    p.add_argument("--k-min", type=float, default=1e-6)
    p.add_argument("--k-max", type=float, default=1e6)
    p.set_defaults(func=_cmd_kstar, names=("X", "Y"))

    p = add("rho", "distorted expectation of X", "X=...")
    p.add_argument("--phi", required=True, help="power:k, identity, phim:m or gp:p")
    p.set_defaults(func=_cmd_rho, names=("X",))

    p = add("gini", "generalized Gini index of a non-negative X", "X=...")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_gini, names=("X",))

    p = add("curve", "gap curve u,D as CSV", "X=... Y=...")
    p.add_argument("--distortion", required=True, help="power:k, identity, phim:m or gp:p")
    p.add_argument("--n-points", type=int, default=512)
    p.set_defaults(func=_cmd_curve, names=("X", "Y"))
    return parser


def run(argv=None, out=None, err=None) -> int:
    """Run one command; returns the exit status."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.dump_spec:
            for name, d in zip(args.names, _distributions(args.dists, args.names)):
                out.write(json.dumps({name: to_spec(d)}) + "\n")
            return 0
        return args.func(args, out)
    except CliError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except _INPUT_ERRORS as exc:
        err.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
