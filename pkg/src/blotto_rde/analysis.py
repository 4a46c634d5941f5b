"""Comparisons of the uniform (EPA) and random (PSA) defender mixtures.

Payoff arithmetic is rational throughout; only entropies and summary
statistics are floats. The comparative claims (robustness to trembles,
regret under uncertainty) are measured here, never asserted.
"""

from __future__ import annotations

import enum
import math
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InternalError, InvalidInput
from .matrix_game import MatrixGame, MixedStrategy, as_rational
from .rde import epa_strategy, psa_batch, run_rde
from .seeding import check_seed, derive_seed, rng_for
from .solver import SupportCriterion, support_enumeration

Matrix = Sequence[Sequence[Fraction]]


class Orientation(enum.Enum):
    ZERO_SUM = "zerosum"
    WIN_COMPLEMENT = "complement"


# --- entropy ------------------------------------------------------------

@dataclass(frozen=True)
class EntropyReport:
    strategy_id: str
    entropy_bits: float
    support_size: int
    max_possible: float


def entropy(q: Sequence, strategy_id: str = "") -> EntropyReport:
    """Shannon entropy in bits, with ``0 log 0 = 0``."""
    weights = [float(w) for w in q]
    if any(w < 0 for w in weights):
        raise InvalidInput("entropy of a vector with negative weights")
    h = -sum(w * math.log2(w) for w in weights if w > 0)
    k = sum(1 for w in weights if w > 0)
    # -0.0 from a single weight of 1
    return EntropyReport(strategy_id, h + 0.0, k, math.log2(k) if k else 0.0)


# --- defender payoffs and regret ------------------------------------------

def column_payoff_matrix(game: MatrixGame, orientation: Orientation = Orientation.ZERO_SUM) -> list[list[Fraction]]:
    """Defender payoffs ``D[i][j]``: defender plays column ``i``, attacker row ``j``.

    ``ZERO_SUM`` gives ``-M^T``; ``WIN_COMPLEMENT`` gives ``1 - M^T`` and
    needs every payoff in ``[0, 1]``.
    """
    if orientation is Orientation.ZERO_SUM:
        return [[-game.payoffs[j][i] for j in range(game.n_rows)] for i in range(game.n_cols)]
    if orientation is Orientation.WIN_COMPLEMENT:
        bad = [x for row in game.payoffs for x in row if not 0 <= x <= 1]
        if bad:
            raise InvalidInput(f"win-complement orientation needs payoffs in [0, 1], got {bad[0]}")
        return [[1 - game.payoffs[j][i] for j in range(game.n_rows)] for i in range(game.n_cols)]
    raise InvalidInput(f"unknown orientation {orientation!r}")


@dataclass(frozen=True)
class RegretReport:
    payoff_matrix_id: str
    regret_matrix: tuple[tuple[Fraction, ...], ...]
    expected_regret: Fraction
    strategy_id: str


def _check_matrix(d: Matrix) -> tuple[int, int]:
    if not d or not d[0]:
        raise InvalidInput("empty payoff matrix")
    width = len(d[0])
    if any(len(row) != width for row in d):
        raise InvalidInput("payoff matrix is not rectangular")
    return len(d), width


def regret_matrix(d: Matrix) -> list[list[Fraction]]:
    """``Regret[i][j] = max_k D[k][j] - D[i][j]``."""
    n, m = _check_matrix(d)
    best = [max(d[k][j] for k in range(n)) for j in range(m)]
    return [[best[j] - d[i][j] for j in range(m)] for i in range(n)]


def expected_regret(d: Matrix, sigma: Sequence, payoff_matrix_id: str = "",
                    strategy_id: str = "") -> RegretReport:
    """``sum_i sigma_i sum_j D[i][j] * Regret[i][j]``.

    Each regret is weighted by the defender's own payoff ``D[i][j]``
    rather than by a distribution over attacker strategies; that is the
    quantity this package compares across defender mixtures.
    """
    d = [[as_rational(x) for x in row] for row in d]
    n, _ = _check_matrix(d)
    sigma = [as_rational(w) for w in sigma]
    if len(sigma) != n:
        raise InvalidInput(f"sigma has {len(sigma)} weights for {n} defender strategies")
    regrets = regret_matrix(d)
    total = sum((s * sum((x * r for x, r in zip(d[i], regrets[i])), Fraction(0))
                 for i, s in enumerate(sigma)), Fraction(0))
    return RegretReport(payoff_matrix_id, tuple(map(tuple, regrets)), total, strategy_id)


def uniform_regret_closed_form(d: Matrix) -> Fraction:
    """``(1/n) sum_j sum_i D[i][j] * Regret[i][j]``, summed column by column."""
    d = [[as_rational(x) for x in row] for row in d]
    n, m = _check_matrix(d)
    acc = Fraction(0)
    for j in range(m):
        column = [d[i][j] for i in range(n)]
        top = max(column)
        acc += sum(x * (top - x) for x in column)
    return acc / n


# --- trembling hands ------------------------------------------------------

MAX_PERTURBATION_ATTEMPTS = 100


@dataclass(frozen=True)
class Perturbation:
    epsilon: tuple[Fraction, ...]
    magnitude_bound: Fraction

    def check(self, p_star: Sequence[Fraction]) -> None:
        if sum(self.epsilon) != 0:
            raise InvalidInput("perturbation components must sum to 0")
        if any(p + e < 0 for p, e in zip(p_star, self.epsilon)):
            raise InvalidInput("perturbed strategy has a negative weight")
        if any(abs(e) > self.magnitude_bound for e in self.epsilon):
            raise InvalidInput("perturbation exceeds its magnitude bound")


def tremble_delta(game: MatrixGame, epsilon: Sequence, q: Sequence) -> Fraction:
    """Change in row payoff, ``eps^T M q``, when ``p*`` trembles by ``eps``."""
    eps = [as_rational(e) for e in epsilon]
    if len(eps) != game.n_rows:
        raise InvalidInput(f"epsilon has {len(eps)} entries for {game.n_rows} rows")
    return sum((e * v for e, v in zip(eps, game.row_values([as_rational(w) for w in q]))), Fraction(0))


def sample_perturbation(p_star: Sequence[Fraction], magnitude: float, rng) -> Perturbation:
    """Zero-sum tremble around ``p_star`` keeping ``p_star + eps`` a distribution.

    Uniform draws on ``(-magnitude, magnitude)`` are centred, clipped at
    ``-p_star``, and the excess mass created by clipping is removed
    proportionally, which keeps every weight nonnegative. Draws whose
    components then exceed ``2 * magnitude`` are rejected.
    """
    p = [as_rational(w) for w in p_star]
    bound = 2 * Fraction(magnitude)
    for _ in range(MAX_PERTURBATION_ATTEMPTS):
        raw = [Fraction(float(x)) for x in rng.uniform(-magnitude, magnitude, len(p))]
        mean = sum(raw) / len(raw)
        eps = [max(x - mean, -w) for x, w in zip(raw, p)]
        excess = sum(eps)
        if excess:
            eps = [(w + e) / (1 + excess) - w for w, e in zip(p, eps)]
        if all(abs(e) <= bound for e in eps):
            pert = Perturbation(tuple(eps), bound)
            pert.check(p)
            return pert
    raise InternalError(f"no valid perturbation after {MAX_PERTURBATION_ATTEMPTS} attempts")


@dataclass(frozen=True)
class PolicyStats:
    mean_abs: float
    max_abs: float
    variance: float


@dataclass(frozen=True)
class TrembleTrial:
    trial: int
    seed: int
    policy: str
    delta: Fraction


@dataclass(frozen=True)
class TrembleReport:
    magnitude: float
    trials: int
    seed: int
    stats: dict[str, PolicyStats]
    records: tuple[TrembleTrial, ...] = field(repr=False)


def tremble_experiment(game: MatrixGame, p_star: Sequence, q_policies: Mapping[str, Sequence] | Sequence,
                       magnitude: float, trials: int, seed: int) -> TrembleReport:
    """Measure ``eps^T M q`` for each defender policy over seeded trembles.

    Trial ``t`` draws from the stream derived from ``(seed, "tremble", t)``,
    and every policy is evaluated against the same perturbation.
    """
    if trials < 1:
        raise InvalidInput("tremble experiment needs at least one trial")
    if not magnitude > 0:
        raise InvalidInput("tremble magnitude must be positive")
    seed = check_seed(seed)
    if not isinstance(q_policies, Mapping):
        q_policies = {f"policy{i}": q for i, q in enumerate(q_policies)}
    policies = {name: [as_rational(w) for w in q] for name, q in q_policies.items()}
    for name, q in policies.items():
        MixedStrategy(q)
        if len(q) != game.n_cols:
            raise InvalidInput(f"policy {name} has {len(q)} weights for {game.n_cols} columns")
    # e_i^T M q per policy, computed once
    row_vals = {name: game.row_values(q) for name, q in policies.items()}
    records = []
    for t in range(trials):
        trial_seed = derive_seed(seed, "tremble", t)
        pert = sample_perturbation(p_star, magnitude, rng_for(seed, "tremble", t))
        for name, vals in row_vals.items():
            delta = sum((e * v for e, v in zip(pert.epsilon, vals)), Fraction(0))
            records.append(TrembleTrial(t, trial_seed, name, delta))
    stats = {}
    for name in policies:
        deltas = [float(r.delta) for r in records if r.policy == name]
        stats[name] = PolicyStats(
            mean_abs=statistics.fmean(abs(x) for x in deltas),
            max_abs=max(abs(x) for x in deltas),
            variance=statistics.pvariance(deltas),
        )
    return TrembleReport(float(magnitude), trials, seed, stats, tuple(records))


# --- incomplete information ---------------------------------------------

@dataclass(frozen=True)
class BeliefSet:
    """Candidate row mixtures ``taus`` with prior probabilities."""

    taus: tuple[MixedStrategy, ...]
    priors: tuple[Fraction, ...]

    def __init__(self, taus, priors):
        taus = tuple(t if isinstance(t, MixedStrategy) else MixedStrategy(t) for t in taus)
        # floats are converted exactly; the sum check allows their rounding
        priors = tuple(Fraction(p) if not isinstance(p, str) else as_rational(p) for p in priors)
        if not taus or len(taus) != len(priors):
            raise InvalidInput(f"{len(taus)} beliefs with {len(priors)} priors")
        if any(p < 0 for p in priors) or abs(float(sum(priors)) - 1.0) > 1e-12:
            raise InvalidInput("priors must be nonnegative and sum to 1")
        if len({len(t) for t in taus}) != 1:
            raise InvalidInput("belief strategies have different lengths")
        object.__setattr__(self, "taus", taus)
        object.__setattr__(self, "priors", priors)


def belief_regret(column_payoffs: Matrix, beliefs: BeliefSet, sigma: Sequence) -> Fraction:
    """Average regret of defender mixture ``sigma`` under uncertain attacker play.

    ``column_payoffs[i][r]`` is the defender's payoff for strategy ``i``
    against attacker pure strategy ``r``. For each believed attacker mix
    ``tau`` the defender's payoff vector is ``P_i = sum_r D[i][r] tau[r]``;
    the regret is ``max_i P_i - sum_i sigma_i P_i``, averaged over priors.
    """
    d = [[as_rational(x) for x in row] for row in column_payoffs]
    n, m = _check_matrix(d)
    sigma = [as_rational(w) for w in sigma]
    if len(sigma) != n:
        raise InvalidInput(f"sigma has {len(sigma)} weights for {n} defender strategies")
    if len(beliefs.taus[0]) != m:
        raise InvalidInput(f"beliefs cover {len(beliefs.taus[0])} attacker strategies, matrix has {m}")
    total = Fraction(0)
    for tau, prior in zip(beliefs.taus, beliefs.priors):
        payoff = [sum((x * t for x, t in zip(row, tau)), Fraction(0)) for row in d]
        total += prior * (max(payoff) - sum((s * x for s, x in zip(sigma, payoff)), Fraction(0)))
    return total


# --- combined experiment -----------------------------------------------

@dataclass
class AnalysisReport:
    parameters: dict
    entropy: dict
    regret: dict
    tremble: TrembleReport
    belief_regret: dict


def _summary(values: Sequence[float]) -> dict:
    return {
        "mean": statistics.fmean(values),
        "min": min(values),
        "max": max(values),
    }


def run_analysis(game: MatrixGame, *, seed: int = 0, trials: int = 100, psa_draws: int = 100,
                 magnitude: float = 0.05,
                 orientation: Orientation = Orientation.ZERO_SUM,
                 criterion: SupportCriterion = SupportCriterion.INDIFFERENCE_SET) -> AnalysisReport:
    """Entropy, regret, tremble and belief-regret comparison on one game.

    Regret and belief regret use the defender payoff matrix restricted to
    the active support, so EPA and every PSA draw are compared on the same
    strategy set.
    """
    seed = check_seed(seed)
    rde = run_rde(game, criterion)
    support = rde.support.indices
    n = game.n_cols
    q_epa = epa_strategy(support, n)
    psa = psa_batch(support, n, derive_seed(seed, "psa"), psa_draws)

    ent_epa = entropy(q_epa, "epa")
    ent_psa = [entropy(q, f"psa{i}").entropy_bits for i, q in enumerate(psa)]

    d_full = column_payoff_matrix(game, orientation)
    d_active = [d_full[j] for j in support]
    epa_active = [q_epa[j] for j in support]
    reg_epa = expected_regret(d_active, epa_active, orientation.value, "epa")
    reg_psa = [float(expected_regret(d_active, [q[j] for j in support]).expected_regret) for q in psa]

    policies = {"epa": q_epa}
    policies.update({f"psa{i}": q for i, q in enumerate(psa[:5])})
    if (nash := _nash_column(game)) is not None:
        policies["nash"] = nash
    tremble = tremble_experiment(game, rde.p_star, policies, magnitude, trials, seed)

    # beliefs: attacker plays p* or any pure row, uniform prior
    taus = [rde.p_star] + [MixedStrategy.pure(game.n_rows, i) for i in range(game.n_rows)]
    beliefs = BeliefSet(taus, [Fraction(1, len(taus))] * len(taus))
    br_epa = belief_regret(d_active, beliefs, epa_active)
    br_psa = [float(belief_regret(d_active, beliefs, [q[j] for j in support])) for q in psa]

    return AnalysisReport(
        parameters={
            "seed": seed, "trials": trials, "psa_draws": psa_draws, "magnitude": magnitude,
            "orientation": orientation.value, "criterion": criterion.value,
            "support": list(support),
        },
        entropy={
            "epa_bits": ent_epa.entropy_bits,
            "log2_k": ent_epa.max_possible,
            "psa_bits": _summary(ent_psa),
            "psa_never_above_epa": all(h <= ent_epa.max_possible for h in ent_psa),
        },
        regret={
            "epa": reg_epa.expected_regret,
            "epa_closed_form": uniform_regret_closed_form(d_active),
            "psa": _summary(reg_psa),
        },
        tremble=tremble,
        belief_regret={
            "epa": br_epa,
            "psa": _summary(br_psa),
            "psa_fraction_below_epa": sum(1 for r in br_psa if r < float(br_epa)) / len(br_psa),
        },
    )


def _nash_column(game: MatrixGame):
    found = support_enumeration(game)
    return found[0].column_strategy if found else None
