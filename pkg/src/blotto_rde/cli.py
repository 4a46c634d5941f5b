"""Command-line entry point.

Exit codes: 0 success, 1 a verified property failed, 2 usage error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import sys
from dataclasses import asdict, dataclass

from . import report
from .analysis import Orientation, run_analysis
from .bench import run_bench
from .dominance import Mode, eliminate_iterated
from .errors import FormatError, InvalidInput, Unsupported
from .matrix_game import BlottoSpec, build_blotto, dumps_game, format_rational, load_game
from .paper_table import TOLERANCE, reproduce_table
from .rde import run_rde
from .seeding import SEED_BITS
from .solver import SupportCriterion, solve_maximin, support_enumeration

EXIT_OK, EXIT_PROPERTY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

_FORMATS = {
    "gen": ("json",),
    "reduce": ("json", "text"),
    "solve": ("json", "text"),
    "rde": ("json", "text"),
    "analyze": ("json", "csv", "text"),
    "paper-table": ("json", "csv", "text"),
    "bench": ("csv", "json", "text"),
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input_path: str | None = None
    output_path: str | None = None
    g: int | None = None
    p: int | None = None
    mode: str = "weak"
    criterion: str = "indiff"
    seed: int = 0
    trials: int | None = None
    orientation: str = "zerosum"
    format: str | None = None
    reduce: bool = False
    method: str = "both"
    magnitude: float = 0.05
    psa_draws: int = 100
    min_size: int = 4
    max_size: int = 12
    no_timestamp: bool = False

    def validate(self) -> None:
        allowed = _FORMATS[self.command]
        if self.format is None:
            self.format = allowed[0]
        if self.format not in allowed:
            raise UsageError(f"{self.command} does not support --format {self.format}")
        if not 0 <= self.seed < 2 ** SEED_BITS:
            raise UsageError("--seed must be a 64-bit unsigned integer")
        if self.command == "gen":
            if self.g is None or self.p is None:
                raise UsageError("gen needs --g and --p")
        if self.command in ("reduce", "solve", "rde", "analyze"):
            if self.input_path is None and (self.g is None or self.p is None):
                raise UsageError(f"{self.command} needs --in FILE or both --g and --p")
        for name in ("g", "p"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise UsageError(f"--{name} must be a positive integer")
        if self.trials is not None and self.trials < 1:
            raise UsageError("--trials must be at least 1")
        if self.command == "bench" and not 1 <= self.min_size <= self.max_size:
            raise UsageError("bench needs 1 <= --min-size <= --max-size")
        if self.command == "analyze" and not self.magnitude > 0:
            raise UsageError("--magnitude must be positive")

    def public(self) -> dict:
        data = {k: v for k, v in asdict(self).items() if k != "no_timestamp"}
        if not self.no_timestamp:
            data["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat()
        return data


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blotto-rde", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, game_input=True):
        if game_input:
            p.add_argument("--in", dest="input_path", help="game file (JSON)")
            p.add_argument("--g", type=int, help="attacker units")
            p.add_argument("--p", type=int, help="defender units")
        p.add_argument("--out", dest="output_path", help="output file (default: stdout)")
        p.add_argument("--format", choices=("json", "csv", "text"))
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--no-timestamp", action="store_true", help="omit the run timestamp")

    def mode(p):
        p.add_argument("--mode", choices=("weak", "strict"), default="weak")

    def criterion(p):
        p.add_argument("--criterion", choices=("indiff", "active", "nash"), default="indiff")

    gen = sub.add_parser("gen", help="write a two-arsenal Blotto game file")
    common(gen)

    red = sub.add_parser("reduce", help="iterated elimination of dominated strategies")
    common(red)
    mode(red)

    solve = sub.add_parser("solve", help="maximin LP and/or support enumeration")
    common(solve)
    solve.add_argument("--method", choices=("maximin", "enum", "both"), default="both")

    rde = sub.add_parser("rde", help="uniform defence over the indifference support")
    common(rde)
    mode(rde)
    criterion(rde)
    rde.add_argument("--reduce", action="store_true", help="eliminate dominated strategies first")

    ana = sub.add_parser("analyze", help="entropy, regret, tremble and belief-regret experiments")
    common(ana)
    criterion(ana)
    ana.add_argument("--orientation", choices=("zerosum", "complement"), default="zerosum")
    ana.add_argument("--trials", type=int, default=100)
    ana.add_argument("--psa-draws", type=int, default=100)
    ana.add_argument("--magnitude", type=float, default=0.05)

    table = sub.add_parser("paper-table", help="reproduce the published value table")
    common(table, game_input=False)
    criterion(table)

    bench = sub.add_parser("bench", help="time EPA, PSA, maximin and support enumeration")
    common(bench, game_input=False)
    bench.add_argument("--trials", type=int, default=5)
    bench.add_argument("--min-size", type=int, default=4)
    bench.add_argument("--max-size", type=int, default=12)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    fields = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in vars(args).items() if k in fields and v is not None})


def _load(cfg: RunConfig):
    if cfg.input_path is not None:
        return load_game(cfg.input_path)
    return build_blotto(BlottoSpec(cfg.g, cfg.p))


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def cmd_generate(cfg: RunConfig) -> tuple[int, str]:
    return EXIT_OK, dumps_game(build_blotto(BlottoSpec(cfg.g, cfg.p)))


def cmd_reduce(cfg: RunConfig) -> tuple[int, str]:
    game = _load(cfg)
    reduced = eliminate_iterated(game, Mode(cfg.mode))
    if cfg.format == "text":
        lines = [f"{s.player.value} {s.eliminated_label} eliminated by {s.dominator_label}" for s in reduced.trace]
        lines.append("rows: " + " ".join(reduced.game.row_labels))
        lines.append("cols: " + " ".join(reduced.game.col_labels))
        return EXIT_OK, "\n".join(lines) + "\n"
    return EXIT_OK, report.envelope(cfg.public(), report.reduced_game(reduced))


def cmd_solve(cfg: RunConfig) -> tuple[int, str]:
    game = _load(cfg)
    results = {}
    if cfg.method in ("maximin", "both"):
        results["maximin"] = report.solve_result(solve_maximin(game), game)
    if cfg.method in ("enum", "both"):
        results["equilibria"] = [report.solve_result(r, game) for r in support_enumeration(game)]
    if cfg.format == "text":
        lines = []
        if "maximin" in results:
            m = results["maximin"]
            lines.append(f"maximin value {m['value']['exact']}  row {m['row_strategy']['weights']}")
        for i, e in enumerate(results.get("equilibria", [])):
            lines.append(f"equilibrium {i}: row {e['row_strategy']['weights']} "
                         f"column {e['column_strategy']['weights']} value {e['value']['exact']}")
        return EXIT_OK, "\n".join(lines) + "\n"
    return EXIT_OK, report.envelope(cfg.public(), results)


def cmd_rde(cfg: RunConfig) -> tuple[int, str]:
    game = _load(cfg)
    warnings = []
    trace = []
    if cfg.reduce:
        reduced = eliminate_iterated(game, Mode(cfg.mode))
        trace = [s.to_dict() for s in reduced.trace]
        game = reduced.game
    result = run_rde(game, SupportCriterion(cfg.criterion))
    neut = result.neutralization
    if not neut.inequality_holds:
        rows = ", ".join(game.row_labels[i] for i in sorted(neut.witness_rows))
        warnings.append(f"uniform defence is exploitable: rows {rows} earn "
                        f"{format_rational(neut.best_response_value)} > value {format_rational(result.value)}")
    status = EXIT_OK if neut.value_equality_holds and result.value_under_epa == result.value else EXIT_PROPERTY
    if status != EXIT_OK:
        warnings.append("value equality failed")
    if cfg.format == "text":
        text = (f"value {format_rational(result.value)}\n"
                f"p* {result.p_star}\n"
                f"support {[game.col_labels[j] for j in result.support]} (k={result.support.size})\n"
                f"q_epa {result.q_epa}\n"
                f"value under EPA {format_rational(result.value_under_epa)}\n"
                f"exploitability gap {format_rational(result.exploitability_gap)}\n")
        return status, text + "".join(f"warning: {w}\n" for w in warnings)
    results = report.rde_result(result, game)
    if cfg.reduce:
        results["elimination_trace"] = trace
    return status, report.envelope(cfg.public(), results, warnings)


def cmd_analyze(cfg: RunConfig) -> tuple[int, str]:
    game = _load(cfg)
    res = run_analysis(game, seed=cfg.seed, trials=cfg.trials or 100, psa_draws=cfg.psa_draws,
                       magnitude=cfg.magnitude, orientation=Orientation(cfg.orientation),
                       criterion=SupportCriterion(cfg.criterion))
    if cfg.format == "csv":
        rows = [(r.trial, r.seed, r.policy, format_rational(r.delta), float(r.delta)) for r in res.tremble.records]
        return EXIT_OK, _csv(("trial", "seed", "policy", "delta", "delta_decimal"), rows)
    if cfg.format == "text":
        e, r, b = res.entropy, res.regret, res.belief_regret
        lines = [
            f"entropy  EPA {e['epa_bits']:.6f} bits  PSA mean {e['psa_bits']['mean']:.6f}",
            f"regret   EPA {format_rational(r['epa'])}  PSA mean {r['psa']['mean']:.6f}",
            f"belief   EPA {format_rational(b['epa'])}  PSA mean {b['psa']['mean']:.6f}",
        ]
        for name, s in res.tremble.stats.items():
            lines.append(f"tremble  {name:8s} mean|d| {s.mean_abs:.6g}  max|d| {s.max_abs:.6g}")
        return EXIT_OK, "\n".join(lines) + "\n"
    return EXIT_OK, report.envelope(cfg.public(), report.analysis(res))


def cmd_paper_table(cfg: RunConfig) -> tuple[int, str]:
    rows = reproduce_table(SupportCriterion(cfg.criterion))
    status = EXIT_OK if all(r.ok for r in rows) else EXIT_PROPERTY
    warnings = [
        f"{r.policemen}p/{r.guerrillas}g: exact {format_rational(r.nash_value)} is "
        f"{float(abs(r.nash_value - r.printed_value)):.4f} from printed {r.printed}"
        for r in rows if not r.within_tolerance
    ]
    if cfg.format == "csv":
        out = _csv(
            ("policemen", "guerrillas", "printed", "nash", "epa", "nash_decimal", "epa_decimal",
             "exact_match", "within_tolerance", "truncation_match"),
            [(r.policemen, r.guerrillas, r.printed, format_rational(r.nash_value), format_rational(r.epa_value),
              f"{float(r.nash_value):.6f}", f"{float(r.epa_value):.6f}",
              r.exact_match, r.within_tolerance, r.truncation_match) for r in rows],
        )
        return status, out
    if cfg.format == "text":
        lines = [f"{'game':29s} {'printed':>8s} {'Nash':>8s} {'EPA':>8s}  match"]
        for r in rows:
            name = f"{r.policemen} Policemen and {r.guerrillas} Guerillas"
            lines.append(f"{name:29s} {r.printed:>8s} {float(r.nash_value):8.4f} {float(r.epa_value):8.4f}  "
                         f"{'yes' if r.ok else 'NO'}")
        return status, "\n".join(lines + [f"warning: {w}" for w in warnings]) + "\n"
    results = {
        "tolerance": format_rational(TOLERANCE),
        "rows": [
            {
                "policemen": r.policemen, "guerrillas": r.guerrillas, "printed": r.printed,
                "nash": report.rational(r.nash_value), "epa": report.rational(r.epa_value),
                "exact_match": r.exact_match, "within_tolerance": r.within_tolerance,
                "truncation_match": r.truncation_match,
            }
            for r in rows
        ],
        "all_match": status == EXIT_OK,
    }
    return status, report.envelope(cfg.public(), results, warnings)


def cmd_bench(cfg: RunConfig) -> tuple[int, str]:
    rows = run_bench(range(cfg.min_size, cfg.max_size + 1), cfg.trials or 5, cfg.seed)
    if cfg.format == "json":
        return EXIT_OK, report.envelope(cfg.public(), [asdict(r) for r in rows])
    if cfg.format == "text":
        return EXIT_OK, "".join(f"{r.size:>4d} {r.op:20s} {r.median_ns:>14d} ns\n" for r in rows)
    return EXIT_OK, _csv(("size", "op", "median_ns", "trials"), [(r.size, r.op, r.median_ns, r.trials) for r in rows])


COMMANDS = {
    "gen": cmd_generate,
    "reduce": cmd_reduce,
    "solve": cmd_solve,
    "rde": cmd_rde,
    "analyze": cmd_analyze,
    "paper-table": cmd_paper_table,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    cfg = _config(args)
    try:
        cfg.validate()
        status, text = COMMANDS[cfg.command](cfg)
    except (UsageError, InvalidInput, Unsupported) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        if cfg.output_path:
            with open(cfg.output_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return status


if __name__ == "__main__":
    sys.exit(main())
