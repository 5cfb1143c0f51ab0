"""Command-line interface: ``gen``, ``analyze``, ``sweep``, ``vertices``.

Exit codes: 0 success; 2 bad flags or unparsable input; 3 a float box could
not be rationalized exactly; 4 box validation failed (the message names the
violated constraint).  All output is deterministic: canonical JSON key order
and canonical rational strings, so identical invocations are byte-identical.

Rationals on the command line are written ``num/den`` (or a bare integer);
decimal input is rejected to protect exactness.  The env var
``BOXLAB_BUDGET`` overrides the subset-search node budget, as does
``--budget`` where offered.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .boxes import noise_box, noisy_peres_box, peres_box, uniform_box
from .decompose import (
    EXACT,
    contextual_fraction,
    min_nc_dimension,
    peres_strength,
)
from .errors import (
    BoxParseError,
    BoxValidationError,
    NoExactRationalization,
    NotDecomposable,
    ParameterOutOfRange,
)
from .quantum import (
    DEFAULT_MAX_DENOMINATOR,
    DEFAULT_TOLERANCE,
    make_observables,
    make_state,
    quantum_box,
)
from .scenario import (
    BELL_SETTINGS,
    as_rational,
    box_from_json_dict,
    box_to_json_dict,
    format_rational,
    inequality_lhs,
    rational_to_decimal,
)
from .vertices import enumerate_local_vertices, enumerate_nc_vertices
from .witnesses import (
    CSV_COLUMNS,
    classify,
    report_to_csv_row,
    report_to_json_dict,
    sdi_contextuality_check,
)

#: Box families generated directly from exact matrices (no quantum step).
FAMILY_CHOICES = ("peres", "noise", "noisy-peres", "uniform")
STATE_CHOICES = ("max-entangled", "werner", "cc", "rank2", "rank3-rho",
                 "rank3-sigma")
OBSERVABLE_CHOICES = ("peres", "product", "rotated")

SWEEP_COLUMNS = (
    "W", "W_dec", "ineq_lhs", "ineq_lhs_dec", "contextual", "cost",
    "cost_dec", "Q", "Q_dec", "cov_DE", "cov_DE_dec", "peres_strength",
    "peres_strength_dec", "sdi_contextual", "min_nc_dim",
)


def _write_text(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _canonical_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _json_line(data) -> str:
    return json.dumps(data, sort_keys=True)


def _family_box(family: str, w_text: str | None):
    if family == "noisy-peres":
        if w_text is None:
            raise BoxParseError("--family noisy-peres requires --W")
        return noisy_peres_box(as_rational(w_text))
    if w_text is not None:
        raise BoxParseError(f"--W is not a parameter of family {family!r}")
    return {"peres": peres_box, "noise": noise_box,
            "uniform": uniform_box}[family]()


def _quantum_box(state: str, observables: str, w_text: str | None,
                 max_denominator: int, tolerance: float):
    family = state.replace("-", "_")
    w = None
    if state == "werner":
        if w_text is None:
            raise BoxParseError("--state werner requires --W")
        w = as_rational(w_text)
    elif w_text is not None:
        raise BoxParseError(f"--W is not a parameter of state {state!r}")
    rho = make_state(family, w)
    obs = make_observables(observables)
    return quantum_box(rho, obs, max_denominator=max_denominator,
                       tolerance=tolerance)


def cmd_gen(args) -> int:
    if (args.family is None) == (args.state is None):
        raise BoxParseError("choose exactly one of --family or --state")
    if args.family is not None:
        if args.observables is not None:
            raise BoxParseError("--observables requires --state")
        box = _family_box(args.family, args.W)
    else:
        if args.observables is None:
            raise BoxParseError("--state requires --observables")
        box = _quantum_box(args.state, args.observables, args.W,
                           args.max_denominator, args.tolerance)
    if args.label is not None:
        box = box.with_label(args.label)
    _write_text(_canonical_json(box_to_json_dict(box)), args.output)
    return 0


def _load_box(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise BoxParseError(f"cannot read box file: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BoxParseError(f"invalid JSON: {exc}") from exc
    return box_from_json_dict(data)


def cmd_analyze(args) -> int:
    box = _load_box(args.box)
    report = classify(box, budget=args.budget, skip_dims=args.skip_dims)
    if args.format == "json":
        payload = {
            "box": box_to_json_dict(box),
            "report": report_to_json_dict(report),
        }
        _write_text(_canonical_json(payload), args.output)
    else:
        buffer = _CsvBuffer()
        writer = csv.writer(buffer)
        writer.writerow(CSV_COLUMNS)
        writer.writerow(report_to_csv_row(report))
        _write_text(buffer.text(), args.output)
    return 0


class _CsvBuffer:
    """Minimal text sink for the csv module (keeps RFC-4180 line ends)."""

    def __init__(self) -> None:
        self._chunks: list[str] = []

    def write(self, chunk: str) -> None:
        self._chunks.append(chunk)

    def text(self) -> str:
        return "".join(self._chunks)


def _sweep_grid(from_text: str, to_text: str, steps: int) -> list[Fraction]:
    start = as_rational(from_text)
    stop = as_rational(to_text)
    if steps < 2:
        raise BoxParseError("--steps must be at least 2")
    if not start < stop:
        raise BoxParseError("--from must be strictly below --to")
    if start < 0 or stop > 1:
        raise ParameterOutOfRange("sweep range must lie within [0, 1]")
    step = (stop - start) / (steps - 1)
    return [start + i * step for i in range(steps)]


def _sweep_row(w: Fraction, box, budget: int | None) -> dict:
    lhs = inequality_lhs(box)
    fraction = contextual_fraction(box)
    contextual = fraction.cost > 0
    sdi = sdi_contextuality_check(box)
    try:
        ps = peres_strength(box).value
    except NotDecomposable:
        ps = None
    dim_cell = ""
    if not contextual:
        result = min_nc_dimension(box, budget)
        if result.status == EXACT:
            dim_cell = str(result.dimension)
    return {
        "W": format_rational(w),
        "W_dec": rational_to_decimal(w),
        "ineq_lhs": format_rational(lhs),
        "ineq_lhs_dec": rational_to_decimal(lhs),
        "contextual": "true" if contextual else "false",
        "cost": format_rational(fraction.cost),
        "cost_dec": rational_to_decimal(fraction.cost),
        "Q": format_rational(sdi.q_witness),
        "Q_dec": rational_to_decimal(sdi.q_witness),
        "cov_DE": format_rational(sdi.cov_de),
        "cov_DE_dec": rational_to_decimal(sdi.cov_de),
        "peres_strength": "" if ps is None else format_rational(ps),
        "peres_strength_dec": "" if ps is None else rational_to_decimal(ps),
        "sdi_contextual": "true" if sdi.passed else "false",
        "min_nc_dim": dim_cell,
    }


def cmd_sweep(args) -> int:
    if (args.family is None) == (args.state is None):
        raise BoxParseError("choose exactly one of --family or --state")
    if args.family is not None and args.family != "noisy-peres":
        raise BoxParseError("only the noisy-peres family has a parameter")
    if args.state is not None and args.state != "werner":
        raise BoxParseError("only the werner state has a parameter")
    if args.state is not None and args.observables is None:
        raise BoxParseError("--state requires --observables")
    grid = _sweep_grid(args.sweep_from, args.sweep_to, args.steps)
    rows = []
    for w in grid:
        if args.family is not None:
            box = noisy_peres_box(w)
        else:
            box = _quantum_box("werner", args.observables, format_rational(w),
                               args.max_denominator, args.tolerance)
        rows.append(_sweep_row(w, box, args.budget))
    if args.format == "csv":
        buffer = _CsvBuffer()
        writer = csv.writer(buffer)
        writer.writerow(SWEEP_COLUMNS)
        for row in rows:
            writer.writerow([row[c] for c in SWEEP_COLUMNS])
        _write_text(buffer.text(), args.output)
    else:
        lines = "".join(_json_line(row) + "\n" for row in rows)
        _write_text(lines, args.output)
    return 0


def cmd_vertices(args) -> int:
    lines = []
    if args.bell_marginal:
        for vid, vertex in enumerate_local_vertices():
            lines.append(_json_line({
                "label": vid.label,
                "dists": {
                    f"A{x}B{y}": [format_rational(p)
                                  for p in vertex.dist(x, y)]
                    for x, y in BELL_SETTINGS
                },
            }))
    else:
        for vid, vertex in enumerate_nc_vertices():
            lines.append(_json_line(box_to_json_dict(vertex)))
    _write_text("".join(line + "\n" for line in lines), args.output)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boxlab",
        description=("Exact-rational toolbox for the five-context "
                     "parity scenario: generate boxes, classify them, sweep "
                     "noise parameters, and dump polytope vertices."),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a box as canonical JSON")
    gen.add_argument("--family", choices=FAMILY_CHOICES)
    gen.add_argument("--state", choices=STATE_CHOICES)
    gen.add_argument("--observables", choices=OBSERVABLE_CHOICES)
    gen.add_argument("--W", metavar="RATIONAL",
                     help="parameter for noisy-peres / werner, e.g. 1/3")
    gen.add_argument("--max-denominator", type=int,
                     default=DEFAULT_MAX_DENOMINATOR)
    gen.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    gen.add_argument("--label", help="optional label stored in the JSON")
    gen.add_argument("-o", "--output", help="output file (default stdout)")
    gen.set_defaults(func=cmd_gen)

    analyze = sub.add_parser("analyze", help="classify a box file")
    analyze.add_argument("box", help="box JSON file, or - for stdin")
    analyze.add_argument("--format", choices=("json", "csv"), default="json")
    analyze.add_argument("--skip-dims", action="store_true",
                         help="skip the exponential dimension searches")
    analyze.add_argument("--budget", type=int,
                         help="subset-search node budget")
    analyze.add_argument("-o", "--output")
    analyze.set_defaults(func=cmd_analyze)

    sweep = sub.add_parser("sweep", help="sweep a parameterized family")
    sweep.add_argument("--family", choices=FAMILY_CHOICES)
    sweep.add_argument("--state", choices=STATE_CHOICES)
    sweep.add_argument("--observables", choices=OBSERVABLE_CHOICES)
    sweep.add_argument("--from", dest="sweep_from", required=True,
                       metavar="RATIONAL")
    sweep.add_argument("--to", dest="sweep_to", required=True,
                       metavar="RATIONAL")
    sweep.add_argument("--steps", type=int, required=True)
    sweep.add_argument("--format", choices=("csv", "json-lines"),
                       default="csv")
    sweep.add_argument("--max-denominator", type=int,
                       default=DEFAULT_MAX_DENOMINATOR)
    sweep.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    sweep.add_argument("--budget", type=int)
    sweep.add_argument("-o", "--output")
    sweep.set_defaults(func=cmd_sweep)

    vertices = sub.add_parser("vertices", help="dump deterministic vertices")
    vertices.add_argument("--bell-marginal", action="store_true",
                          help="dump the 16 local vertices instead of the 64")
    vertices.add_argument("-o", "--output")
    vertices.set_defaults(func=cmd_vertices)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code in (0, None):
            return 0
        return 2
    try:
        return args.func(args)
    except (BoxParseError, ParameterOutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NoExactRationalization as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except BoxValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
