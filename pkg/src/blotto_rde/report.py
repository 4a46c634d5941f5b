"""JSON-ready renderings of results; rationals appear as ``"p/q"`` plus a decimal."""

from __future__ import annotations

import json
from fractions import Fraction

from .analysis import AnalysisReport, TrembleReport
from .dominance import ReducedGame
from .matrix_game import MatrixGame, format_rational, game_to_dict, strategy_to_dict
from .rde import NeutralizationReport, RdeResult
from .solver import SolveResult, SupportSet


def rational(x: Fraction) -> dict:
    return {"exact": format_rational(x), "decimal": float(x)}


def support(s: SupportSet, labels) -> dict:
    return {
        "indices": list(s.indices),
        "labels": [labels[i] for i in s.indices],
        "size": s.size,
        "criterion": s.criterion.value,
    }


def solve_result(r: SolveResult, game: MatrixGame) -> dict:
    out = {
        "method": r.method.value,
        "value": rational(r.value),
        "row_strategy": strategy_to_dict(r.row_strategy, game.row_labels),
        "row_support": support(r.row_support, game.row_labels),
        "column_support": support(r.column_support, game.col_labels),
    }
    if r.column_strategy is not None:
        out["column_strategy"] = strategy_to_dict(r.column_strategy, game.col_labels)
        out["skipped_singular"] = r.skipped_singular
    return out


def neutralization(rep: NeutralizationReport, game: MatrixGame) -> dict:
    return {
        "support": [game.col_labels[j] for j in rep.support],
        "per_column_payoffs": [format_rational(x) for x in rep.per_column_payoffs],
        "value_under_q": rational(rep.value_under_q),
        "value_equality_holds": rep.value_equality_holds,
        "best_response_value": rational(rep.best_response_value),
        "gap": rational(rep.gap),
        "inequality_holds": rep.inequality_holds,
        "witness_rows": [game.row_labels[i] for i in sorted(rep.witness_rows)],
    }


def rde_result(r: RdeResult, game: MatrixGame) -> dict:
    return {
        "value": rational(r.value),
        "p_star": strategy_to_dict(r.p_star, game.row_labels),
        "support": support(r.support, game.col_labels),
        "q_epa": strategy_to_dict(r.q_epa, game.col_labels),
        "value_under_epa": rational(r.value_under_epa),
        "exploitability_gap": rational(r.exploitability_gap),
        "witness_rows": [game.row_labels[i] for i in sorted(r.witness_rows)],
        "neutralization": neutralization(r.neutralization, game),
    }


def reduced_game(r: ReducedGame) -> dict:
    return {
        "game": game_to_dict(r.game),
        "trace": [step.to_dict() for step in r.trace],
        "row_index_map": list(r.row_index_map),
        "col_index_map": list(r.col_index_map),
    }


def tremble(t: TrembleReport) -> dict:
    return {
        "magnitude": t.magnitude,
        "trials": t.trials,
        "seed": t.seed,
        "policies": {
            name: {"mean_abs_delta": s.mean_abs, "max_abs_delta": s.max_abs, "variance": s.variance}
            for name, s in t.stats.items()
        },
    }


def analysis(a: AnalysisReport) -> dict:
    return {
        "parameters": a.parameters,
        "entropy": a.entropy,
        "regret": {
            "epa": rational(a.regret["epa"]),
            "epa_closed_form": rational(a.regret["epa_closed_form"]),
            "psa": a.regret["psa"],
        },
        "tremble": tremble(a.tremble),
        "belief_regret": {
            "epa": rational(a.belief_regret["epa"]),
            "psa": a.belief_regret["psa"],
            "psa_fraction_below_epa": a.belief_regret["psa_fraction_below_epa"],
        },
    }


def envelope(config: dict, results, warnings=()) -> str:
    return json.dumps({"config": config, "results": results, "warnings": list(warnings)}, indent=2) + "\n"
