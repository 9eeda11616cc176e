"""Command-line interface: ``esdlab sweep | threshold | figure | check``.

Exit status: 0 success, 1 usage error, 2 numerical or self-check failure,
3 I/O error.
"""

from __future__ import annotations

import argparse
import io
import math
import re
import sys
from dataclasses import dataclass

from .errors import LeakageError, NumericalError, SizeError
from .pipeline import DEFAULT_STEPS, esd_report, gamma_grid, sweep
from .states import Family, StateFamily

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3

SWEEP_HEADER = ("gamma", "fidelity_uncoded", "concurrence_uncoded", "fidelity_coded", "concurrence_coded")

# figure id -> (alpha, families); figure 1 shows fidelities only
FIGURES = {
    "1a": (math.pi / 12, None),
    "1b": (math.pi / 4, None),
    "2a": (math.pi / 12, Family.PHI),
    "2b": (math.pi / 4, Family.PHI),
    "3a": (math.pi / 12, Family.PSI),
    "3b": (math.pi / 4, Family.PSI),
}
FIGURE1_HEADER = (
    "gamma",
    "fidelity_coded_phi",
    "fidelity_coded_psi",
    "fidelity_coded_varphi",
    "fidelity_uncoded_phi",
    "fidelity_uncoded_psi",
)

_ANGLE = re.compile(r"^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    family: Family = Family.PHI
    alpha: float = math.pi / 4
    beta: float = 0.0
    gamma_min: float = 0.0
    gamma_max: float = 1.0
    steps: int = DEFAULT_STEPS
    code: str = "both"
    output_path: str | None = None

    def __post_init__(self):
        if not 0.0 <= self.gamma_min <= self.gamma_max <= 1.0:
            raise UsageError(f"need 0 <= gamma-min <= gamma-max <= 1, got {self.gamma_min}, {self.gamma_max}")
        if self.steps < 2:
            raise UsageError(f"steps must be at least 2, got {self.steps}")
        if self.code not in ("none", "c41", "both"):
            raise UsageError(f"unknown code {self.code!r}")


def parse_angle(text: str) -> float:
    """Radians from a decimal or a multiple of pi such as ``pi/12``, ``-3pi/4``, ``2*pi``."""
    m = _ANGLE.match(text.lower())
    if m:
        coef, denom = m.groups()
        c = {"": 1.0, "+": 1.0, "-": -1.0}.get(coef, None)
        c = float(coef) if c is None else c
        return c * math.pi / (float(denom) if denom else 1.0)
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid angle {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"invalid angle {text!r}")
    return value


def fmt(x: float | None) -> str:
    return "NA" if x is None else format(x, ".12g")


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def sweep_rows(config: RunConfig):
    spec = StateFamily(config.family, config.alpha, config.beta)
    gammas = gamma_grid(config.gamma_min, config.gamma_max, config.steps)
    results = sweep(spec, gammas, uncoded=config.code in ("none", "both"), coded=config.code in ("c41", "both"))
    return [
        (r.gamma, r.fidelity_uncoded, r.concurrence_uncoded, r.fidelity_coded, r.concurrence_coded)
        for r in results
    ]


def cmd_sweep(config: RunConfig) -> str:
    """CSV text of a damping sweep for one state."""
    return to_csv(SWEEP_HEADER, sweep_rows(config))


def cmd_threshold(config: RunConfig, tol: float = 1e-6) -> str:
    """``key=value`` lines of the ESD report."""
    report = esd_report(StateFamily(config.family, config.alpha, config.beta), tol=tol)
    lines = [
        f"family={report.family}",
        f"alpha={fmt(report.alpha)}",
        f"beta={fmt(report.beta)}",
    ]
    for key in ("gamma_star_uncoded", "gamma_star_coded", "crossover_gamma"):
        value = getattr(report, key)
        lines.append(f"{key}={'NONE' if value is None else fmt(value)}")
    return "\n".join(lines) + "\n"


def figure_data(figure: str, steps: int = DEFAULT_STEPS) -> tuple[tuple[str, ...], list[tuple]]:
    """Header and rows for one figure panel, always with ``beta = 0``."""
    if figure not in FIGURES:
        raise UsageError(f"unknown figure {figure!r}; expected one of {', '.join(FIGURES)}")
    alpha, family = FIGURES[figure]
    gammas = gamma_grid(0.0, 1.0, steps)
    if family is not None:
        config = RunConfig("figure", family, alpha, 0.0, 0.0, 1.0, steps, "both")
        return SWEEP_HEADER, sweep_rows(config)
    coded = {f: sweep(StateFamily(f, alpha), gammas, uncoded=False) for f in Family}
    uncoded = {f: sweep(StateFamily(f, alpha), gammas, coded=False) for f in (Family.PHI, Family.PSI)}
    rows = []
    for i, g in enumerate(gammas):
        rows.append(
            (
                float(g),
                coded[Family.PHI][i].fidelity_coded,
                coded[Family.PSI][i].fidelity_coded,
                coded[Family.VARPHI][i].fidelity_coded,
                uncoded[Family.PHI][i].fidelity_uncoded,
                uncoded[Family.PSI][i].fidelity_uncoded,
            )
        )
    return FIGURE1_HEADER, rows


def cmd_figure(figure: str, steps: int = DEFAULT_STEPS) -> str:
    header, rows = figure_data(figure, steps)
    return to_csv(header, rows)


def plot_csv(csv_text: str, path: str, title: str = "") -> None:
    """Line chart of every column of a CSV against gamma; format from the file suffix."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    lines = csv_text.strip().split("\n")
    header = lines[0].split(",")
    cols = list(zip(*(line.split(",") for line in lines[1:])))
    x = [float(v) for v in cols[0]]
    styles = ["-", "--", ":", "-.", (0, (3, 1, 1, 1, 1, 1))]
    fig, ax = plt.subplots(figsize=(5, 3.6))
    for j, name in enumerate(header[1:], start=1):
        if all(v == "NA" for v in cols[j]):
            continue
        y = [float("nan") if v == "NA" else float(v) for v in cols[j]]
        ax.plot(x, y, linestyle=styles[(j - 1) % len(styles)], label=name)
    ax.set_xlabel(r"$\gamma$")
    ax.set_ylabel(r"$\mathcal{F}$, $\mathcal{C}$")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1.02)
    if title:
        ax.set_title(title)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, metadata={"Date": None} if path.endswith(".svg") else None)
    plt.close(fig)


def cmd_check(code=None) -> tuple[str, bool]:
    """Run the self-check suite; ``code`` swaps in another code for mutation testing."""
    from .checks import run_checks

    results = run_checks() if code is None else run_checks(code)
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in results]
    failed = [r.name for r in results if not r.passed]
    lines.append("all checks passed" if not failed else f"failed: {', '.join(failed)}")
    return "\n".join(lines) + "\n", not failed


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="esdlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def state_args(p):
        p.add_argument("--family", choices=[f.value for f in Family], default="phi")
        p.add_argument("--alpha", type=parse_angle, default=math.pi / 4, help="radians or e.g. pi/12")
        p.add_argument("--beta", type=parse_angle, default=0.0)

    p = sub.add_parser("sweep", help="fidelity and concurrence over a damping grid")
    state_args(p)
    p.add_argument("--gamma-min", type=float, default=0.0)
    p.add_argument("--gamma-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    p.add_argument("--code", choices=["none", "c41", "both"], default="both")
    p.add_argument("--out", help="CSV path (stdout if omitted)")
    p.add_argument("--plot", help="optional chart path (.svg, .pdf or .png)")

    p = sub.add_parser("threshold", help="ESD thresholds and concurrence crossover")
    state_args(p)
    p.add_argument("--tol", type=float, default=1e-6)

    p = sub.add_parser("figure", help="curves of one figure panel")
    p.add_argument("figure", choices=list(FIGURES))
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    p.add_argument("--out", help="CSV path (stdout if omitted)")
    p.add_argument("--plot", help="optional chart path (.svg, .pdf or .png)")

    sub.add_parser("check", help="run the self-check suite")
    return parser


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            config = RunConfig(
                "sweep", Family.parse(args.family), args.alpha, args.beta,
                args.gamma_min, args.gamma_max, args.steps, args.code, args.out,
            )
            text = cmd_sweep(config)
            _emit(text, args.out)
            if args.plot:
                plot_csv(text, args.plot, f"{args.family}, alpha={args.alpha:.4g}")
        elif args.command == "threshold":
            if args.tol <= 0:
                raise UsageError("tol must be positive")
            config = RunConfig("threshold", Family.parse(args.family), args.alpha, args.beta)
            sys.stdout.write(cmd_threshold(config, tol=args.tol))
        elif args.command == "figure":
            if args.steps < 2:
                raise UsageError(f"steps must be at least 2, got {args.steps}")
            text = cmd_figure(args.figure, args.steps)
            _emit(text, args.out)
            if args.plot:
                plot_csv(text, args.plot, f"figure {args.figure}")
        else:
            text, ok = cmd_check()
            sys.stdout.write(text)
            if not ok:
                return EXIT_NUMERIC
    except (UsageError, ImportError) as exc:
        print(f"esdlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, LeakageError, SizeError) as exc:
        print(f"esdlab: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"esdlab: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
