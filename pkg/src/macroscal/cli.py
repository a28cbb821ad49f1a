"""Command-line front end.

Exit status: 0 on success, 1 on usage errors, 2 on domain errors,
3 when a numerical method fails to converge.
"""
import argparse
import dataclasses
import json
import math
import os
import re
import sys

from . import berger, dividers, mscal, prolate, spaceform
from ._format import csv_text, fmt_value, json_text, svg_plot
from .errors import ConvergenceError, DomainError

EXIT_USAGE, EXIT_DOMAIN, EXIT_CONVERGENCE = 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_grid(text):
    """Parse ``a,b,c`` or an inclusive ``start:stop:step`` grid."""
    text = text.strip()
    if ":" not in text:
        return [float(x) for x in text.split(",") if x.strip()]
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be start:stop:step, got {text!r}")
    start, stop, step = (float(x) for x in parts)
    if step == 0 or (stop - start) / step < 0:
        raise argparse.ArgumentTypeError(f"step {step} does not reach {stop} from {start}")
    count = int(math.floor((stop - start) / step + 0.5))
    # endpoint kept when within half a step; multiply rather than accumulate
    return [round(start + j * step, 12) for j in range(count + 1)]


def parse_range(text):
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"range must be lo:hi, got {text!r}")
    return float(parts[0]), float(parts[1])


def _grid(text):
    try:
        return parse_grid(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _range(text):
    try:
        return parse_range(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def default_tol(fallback):
    env = os.environ.get("MACROSCAL_TOL")
    if env is None:
        return fallback
    try:
        tol = float(env)
    except ValueError:
        raise _UsageError(f"MACROSCAL_TOL must be a number, got {env!r}")
    if not tol > 0:
        raise _UsageError(f"MACROSCAL_TOL must be positive, got {env!r}")
    return tol


def _scalar_output(fmt, name, value, extra=None):
    fields = dict(extra or {})
    fields[name] = value
    if fmt == "json":
        return json_text(fields)
    if fmt == "csv":
        return csv_text(list(fields), [list(fields.values())])
    return fmt_value(value) + "\n"


def cmd_volume(args):
    v = spaceform.ball_volume(args.dim, args.scal, args.radius)
    return _scalar_output(args.format, "V", v, {"n": args.dim, "s": args.scal, "R": args.radius})


def cmd_quadvolume(args):
    tol = args.tol if args.tol is not None else default_tol(spaceform.QUAD_TOL)
    v = spaceform.ball_volume_quadrature(args.dim, args.scal, args.radius, tol)
    return _scalar_output(args.format, "V", v, {"n": args.dim, "s": args.scal, "R": args.radius})


def cmd_invert(args):
    tol = args.tol if args.tol is not None else default_tol(spaceform.INVERT_TOL)
    s = spaceform.invert_scal(args.dim, args.radius, args.volume, tol)
    return _scalar_output(args.format, "s", s, {"n": args.dim, "R": args.radius, "v": args.volume})


def cmd_kappa(args):
    tol = args.tol if args.tol is not None else default_tol(spaceform.INVERT_TOL)
    k = spaceform.kappa_n(args.dim, args.guth_c, tol)
    return _scalar_output(args.format, "kappa_n", k, {"n": args.dim, "c": args.guth_c})


def cmd_mscal(args):
    tol = args.tol if args.tol is not None else default_tol(spaceform.INVERT_TOL)
    obs = mscal.BallVolumeObservation(R=args.radius, v=args.volume, label=args.label)
    s = mscal.macroscopic_scal(args.dim, obs, tol)
    extra = {"label": obs.label, "n": args.dim, "R": obs.R, "v": obs.v}
    if args.at_least is not None:
        extra["at_least"] = args.at_least
        extra["mscal_at_least"] = mscal.mscal_at_least(args.dim, obs, args.at_least)
        if args.format == "text":
            args.format = "csv"
    return _scalar_output(args.format, "mscal", s, extra)


def cmd_gate(args):
    report = mscal.width_gate(args.dim, args.radius, args.scal, args.guth_c)
    if args.format == "json":
        return json_text(report.to_dict())
    return report.to_csv()


def cmd_figure1(args):
    s_min, s_max = args.scal
    table = spaceform.figure1_table(args.dim, args.radii, s_min, s_max, args.samples)
    if args.format == "svg":
        series = []
        for R in table.radii():
            rows = table.curve(R)
            series.append((f"R = {R:g}", [r[1] for r in rows], [r[4] for r in rows]))
        return svg_plot(series, "s", f"V / b_{args.dim}",
                        f"s -> V^{args.dim}_s(R) / b_{args.dim}", ymax=args.ymax)
    if args.format == "json":
        return json_text({"columns": list(table.columns), "rows": table.rows})
    return table.to_csv()


def cmd_prolate(args):
    eps_grid = args.eps if args.eps is not None else [2.0 ** -j for j in range(args.halvings + 1)]
    rows = prolate.prolate_family(args.dim, args.k, args.radius, eps_grid)
    if args.format == "json":
        return json_text([dataclasses.asdict(r) for r in rows])
    return prolate.family_csv(rows)


def cmd_berger(args):
    samples = berger.berger_family(args.kappa, args.eps, args.margin)
    if args.format == "json":
        return json_text([dataclasses.asdict(x) for x in samples])
    return berger.family_csv(samples)


def cmd_widthbound(args):
    q = berger.WidthBoundQuery(rho=args.rho, L=args.lipschitz, k=args.k)
    value = berger.gromov_width_lower_bound(q)
    return _scalar_output(args.format, "width_lower_bound", value,
                          {"rho": q.rho, "L": q.L, "k": q.k})


def _read_json(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}")


def cmd_dividers(args):
    inst = dividers.DividerInstance.from_json(_read_json(args.input))
    plan = dividers.replace_dividers(inst)
    report = dividers.verify_stability_conclusion(inst, plan)
    return json_text(dividers.plan_report_dict(inst, plan, report))


def cmd_slice(args):
    text = _read_json(args.input)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DomainError("slice profile must be a JSON object")
    p = dividers.SliceProfile.from_dict(doc)
    t, bound = dividers.select_slice_radius(p)
    result = {"t": t, "bound": bound, "trapezoid": dividers.profile_integral(p)}
    if "ball_volume" in doc:
        result["stability_bound"] = dividers.stability_bound(
            p.R, p.r, float(doc["ball_volume"]), float(doc.get("delta", 0.0)))
    if args.format == "csv":
        return csv_text(list(result), [list(result.values())])
    return json_text(result)


def build_parser():
    parser = _Parser(prog="macroscal",
                     description="Space-form volumes, macroscopic scalar curvature and width bounds.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, metavar="COMMAND")
    sub.required = True

    def add(name, func, help, formats=("text", "csv", "json"), default=None):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=formats, default=default or formats[0])
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        return p

    p = add("volume", cmd_volume, "closed-form ball volume V^n_s(R)")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--scal", type=float, required=True)
    p.add_argument("--radius", type=float, required=True)

    p = add("quadvolume", cmd_quadvolume, "ball volume by adaptive quadrature")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--scal", type=float, required=True)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--tol", type=float)

    p = add("invert", cmd_invert, "curvature s with V^n_s(R) = v")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--volume", type=float, required=True)
    p.add_argument("--tol", type=float)

    p = add("kappa", cmd_kappa, "width-gate constant kappa_n for a given Guth constant")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--guth-c", type=float, required=True)
    p.add_argument("--tol", type=float)

    p = add("mscal", cmd_mscal, "macroscopic scalar curvature of a ball-volume observation")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--volume", type=float, required=True)
    p.add_argument("--label", default="")
    p.add_argument("--at-least", type=float, help="also decide mscal >= this value")
    p.add_argument("--tol", type=float)

    p = add("gate", cmd_gate, "width-gate inequality at the optimal inner radius",
            formats=("csv", "json"))
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--scal", type=float, required=True)
    p.add_argument("--guth-c", type=float, required=True)

    p = add("figure1", cmd_figure1, "table or plot of s -> V^n_s(R)/b_n",
            formats=("csv", "json", "svg"))
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--radii", type=_grid, default=parse_grid("0.1:2.5:0.1"))
    p.add_argument("--scal", type=_range, default=(-30.0, 30.0), help="s range lo:hi")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--ymax", type=float, default=None, help="clip the plot's y axis")

    p = add("prolate", cmd_prolate, "prolate hyperellipsoid product family",
            formats=("csv", "json"))
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--radius", type=float, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--eps", type=_grid)
    g.add_argument("--halvings", type=int, default=10, help="eps = 2^0 .. 2^-halvings")

    p = add("berger", cmd_berger, "Berger-metric family on RP^3", formats=("csv", "json"))
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--eps", type=_grid, default=[10.0 ** -j for j in range(1, 7)])
    p.add_argument("--margin", type=float, default=berger.DEFAULT_MARGIN)

    p = add("widthbound", cmd_widthbound, "Gromov lower bound (pi/2) rho / L on the width")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--lipschitz", type=float, required=True)
    p.add_argument("--k", type=int, default=2)

    p = add("dividers", cmd_dividers, "least-area divider replacement plan and stability report",
            formats=("json",))
    p.add_argument("--input", required=True, help='JSON {"d": [...], "s": [...], "delta": x}')

    p = add("slice", cmd_slice, "coarea slice selection on a sampled boundary-area profile",
            formats=("json", "csv"))
    p.add_argument("--input", required=True,
                   help='JSON {"r": .., "R": .., "taus": [...], "areas": [...]}')
    return parser


_NEGATIVE_VALUE = re.compile(r"^-[\d.]")


def _attach_negative_values(argv):
    """Rewrite ``--flag -30:30`` as ``--flag=-30:30``; argparse only accepts bare negative numbers."""
    out = []
    for tok in argv:
        if (out and out[-1].startswith("--") and "=" not in out[-1]
                and _NEGATIVE_VALUE.match(tok)):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def run(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_negative_values(argv))
    try:
        text = args.func(args)
    except _UsageError as exc:
        print(f"macroscal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"macroscal: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"macroscal: no convergence: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
