"""Exact zero-sum Blotto games, maximin solving and uniform reactive defence."""

from .errors import BlottoError, FormatError, InternalError, InvalidInput, Unsupported
from .matrix_game import (
    BlottoSpec,
    MatrixGame,
    MixedStrategy,
    Split,
    blotto_game,
    blotto_payoff,
    build_blotto,
    load_game,
    save_game,
    splits,
)
from .dominance import Mode, OrderPolicy, Player, dominates, eliminate_iterated
from .solver import (
    SupportCriterion,
    SupportSet,
    best_response_value,
    solve_maximin,
    support_enumeration,
)
from .rde import (
    check_uk_nonconvexity,
    epa_strategy,
    game_value,
    indifference_support,
    psa_strategy,
    run_rde,
    verify_neutralization,
)

__all__ = [
    "BlottoError", "FormatError", "InternalError", "InvalidInput", "Unsupported",
    "BlottoSpec", "MatrixGame", "MixedStrategy", "Split", "blotto_game", "blotto_payoff",
    "build_blotto", "load_game", "save_game", "splits",
    "Mode", "OrderPolicy", "Player", "dominates", "eliminate_iterated",
    "SupportCriterion", "SupportSet", "best_response_value", "solve_maximin", "support_enumeration",
    "check_uk_nonconvexity", "epa_strategy", "game_value", "indifference_support", "psa_strategy",
    "run_rde", "verify_neutralization",
]
