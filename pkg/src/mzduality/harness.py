"""Randomized end-to-end checks of the duality relations.

Each trial draws an interferometer setting and a guessing strategy from a
seed derived from ``(master_seed, trial_index)``, evaluates every quantity
through the closed forms, and records the slack of each inequality. A slack
below ``-1e-9`` is a violation; the theory predicts none.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from typing import Sequence

import numpy as np

from . import operators as ops
from . import tolerances as tol
from .errors import DegeneratePortError, DomainError
from .interferometer import (
    InterferometerConfig,
    a_priori_visibility,
    detection_probability_from_state,
    final_state,
    fringe_visibility,
    path_weights,
    predictability,
    visibility_ratio,
)
from .sampling import haar_unitary, random_density, random_qubit_state
from .unsharp import (
    guess_effect_bruteforce,
    guess_observable,
    interference_effect_bruteforce,
    interference_observable,
    jm_closed_form,
    oracle_search,
)
from .which_path import (
    Strategy,
    distinguishability,
    eta_values,
    gamma_term,
    optimal_strategy,
)

__all__ = [
    "TrialConfig",
    "TrialRecord",
    "DualityReport",
    "trial_seed",
    "sample_config",
    "evaluate_trial",
    "run_suite",
    "cross_validate_povms",
    "SLACKS",
]

SLACKS = ("slack_eq9", "slack_sqrt_eta", "slack_duality", "slack_no_gamma")
_R_RANGE = (0.01, 0.99)


@dataclass(frozen=True)
class TrialConfig:
    seed: int
    trial_index: int
    detector_dim: int
    config: InterferometerConfig
    strategy: Strategy


@dataclass
class TrialRecord:
    trial: int
    seed: int
    detector_dim: int
    r: float
    phi: float
    w_plus: float
    coherence: float
    P: float
    V0: float
    V: float
    visibility_ratio: float
    eta_s: float
    eta_s_u: float
    D_S: float
    gamma_S: float
    slack_eq9: float
    slack_sqrt_eta: float
    slack_duality: float
    slack_no_gamma: float
    jm_margin: float
    jm_oracle_agrees: bool | None
    status: str = "ok"


def trial_seed(master_seed: int, trial_index: int) -> int:
    """64-bit per-trial seed, independent of execution order."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(trial_index,))
    return int(ss.generate_state(1, np.uint64)[0])


def sample_config(
    master_seed: int,
    trial_index: int,
    detector_dim: int,
    *,
    pure_states: bool = False,
    optimal: bool = False,
) -> TrialConfig:
    """Draw one reproducible trial.

    ``pure_states`` samples the particle on the Bloch sphere instead of the
    ball. ``optimal`` replaces the random strategy with the eigenbasis
    optimum for the sampled detector.
    """
    if not 2 <= detector_dim <= 8:
        raise DomainError(f"detector_dim must lie in [2, 8], got {detector_dim}")
    seed = trial_seed(master_seed, trial_index)
    rng = np.random.default_rng(seed)
    rho = random_qubit_state(rng, pure=pure_states)
    rho_d = random_density(detector_dim, rng)
    u = haar_unitary(detector_dim, rng)
    r = rng.uniform(*_R_RANGE)
    phi = rng.uniform(0.0, 2.0 * math.pi)
    basis = haar_unitary(detector_dim, rng).T
    size = int(rng.integers(1, detector_dim))
    subset = frozenset(int(i) for i in rng.choice(detector_dim, size=size, replace=False))
    config = InterferometerConfig(r, phi, rho, rho_d, u)
    strategy = Strategy(basis, subset)
    if optimal:
        w1, w2 = path_weights(config).for_port(config.port)
        strategy = optimal_strategy(rho_d, u, w1, w2)
    return TrialConfig(seed, trial_index, detector_dim, config, strategy)


def _ratio_term(p: float, v0: float, v: float, ratio: float) -> float:
    """``(1 - P^2) V^2 / V0^2``, falling back on ``V / V0 = |tr(rho_D U)|`` as V0 -> 0."""
    if v0 > 1e-12:
        return (1.0 - p * p) * (v / v0) ** 2
    return (1.0 - p * p) * ratio * ratio


def evaluate_trial(trial: TrialConfig, check_jm: bool = True) -> TrialRecord:
    cfg = trial.config
    nan = math.nan
    base = dict(
        trial=trial.trial_index,
        seed=trial.seed,
        detector_dim=trial.detector_dim,
        r=cfg.r,
        phi=cfg.phi,
        w_plus=cfg.w_plus,
        coherence=abs(cfg.coherence),
    )
    try:
        w1, w2 = path_weights(cfg).for_port(cfg.port)
        p = predictability(cfg)
        v0 = a_priori_visibility(cfg)
        v = fringe_visibility(cfg)
    except DegeneratePortError:
        filler = {f.name: nan for f in fields(TrialRecord) if f.name not in base}
        filler.update(jm_oracle_agrees=None, status="degenerate_port")
        return TrialRecord(**base, **filler)
    ratio = visibility_ratio(cfg)
    etas = eta_values(trial.strategy, cfg.detector_state, cfg.detector_unitary)
    d_s = distinguishability(w1, w2, etas)
    gamma = gamma_term(w1, w2, etas)
    overlap = math.sqrt(etas.eta_s * etas.eta_s_u) + math.sqrt(etas.eta_sbar * etas.eta_sbar_u)
    ratio_term = _ratio_term(p, v0, v, ratio)

    obs_m = guess_observable(trial.strategy, cfg.detector_state, cfg.detector_unitary)
    obs_n = interference_observable(cfg)
    closed = jm_closed_form(obs_m, obs_n)
    agrees = None
    if check_jm:
        agrees = oracle_search(obs_m, obs_n).jointly_measurable == closed.jointly_measurable

    return TrialRecord(
        **base,
        P=p,
        V0=v0,
        V=v,
        visibility_ratio=ratio,
        eta_s=etas.eta_s,
        eta_s_u=etas.eta_s_u,
        D_S=d_s,
        gamma_S=gamma,
        slack_eq9=1.0 - p * p - v0 * v0,
        slack_sqrt_eta=overlap - ratio,
        slack_duality=1.0 - gamma * gamma - d_s * d_s - ratio_term,
        slack_no_gamma=1.0 - d_s * d_s - ratio_term,
        jm_margin=closed.margin,
        jm_oracle_agrees=agrees,
    )


def cross_validate_povms(trial: TrialConfig) -> float:
    """Largest deviation between closed-form and partial-trace constructions.

    Compares both induced effects entrywise, and checks the click and
    guess probabilities against the full joint state.
    """
    cfg = trial.config
    n_closed = interference_observable(cfg).effect()
    n_brute = interference_effect_bruteforce(cfg)
    m_closed = guess_observable(trial.strategy, cfg.detector_state, cfg.detector_unitary).effect()
    m_brute = guess_effect_bruteforce(cfg, trial.strategy)

    rho = cfg.particle_state
    rho_f = final_state(cfg)
    p_click = detection_probability_from_state(cfg)
    p_guess = float(np.trace(ops.tensor(ops.IDENTITY2, trial.strategy.projector()) @ rho_f).real)
    return max(
        float(np.max(np.abs(n_closed - n_brute))),
        float(np.max(np.abs(m_closed - m_brute))),
        abs(p_click - float(np.trace(rho @ n_closed).real)),
        abs(p_guess - float(np.trace(rho @ m_closed).real)),
    )


@dataclass
class DualityReport:
    records: list[TrialRecord]
    summary: dict

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        names = [f.name for f in fields(TrialRecord)]
        writer.writerow(names)
        for rec in self.records:
            writer.writerow([_format_cell(getattr(rec, n)) for n in names])
        return buf.getvalue()

    def summary_json(self) -> str:
        return json.dumps(self.summary, indent=2, sort_keys=True)

    @property
    def violation_count(self) -> int:
        return self.summary["violation_count"]


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _json_float(x: float):
    return None if math.isnan(x) else float(format(x, ".17g"))


def _summarize(records: list[TrialRecord]) -> dict:
    ok = [r for r in records if r.status == "ok"]
    summary: dict = {
        "n_trials": len(records),
        "n_evaluated": len(ok),
        "degenerate_count": len(records) - len(ok),
        "min_slack": {},
        "violations": {},
        "boundary": {},
    }
    for name in SLACKS:
        values = np.array([getattr(r, name) for r in ok])
        summary["min_slack"][name] = _json_float(float(values.min())) if len(ok) else None
        summary["violations"][name] = int(np.sum(values < -tol.VIOLATION))
        summary["boundary"][name] = int(np.sum(np.abs(values) <= tol.VIOLATION))
    summary["violation_count"] = sum(summary["violations"].values())
    checked = [r for r in ok if r.jm_oracle_agrees is not None]
    disagree = [r for r in checked if not r.jm_oracle_agrees]
    summary["jm_checked"] = len(checked)
    summary["jm_agreement_rate"] = (
        _json_float(1.0 - len(disagree) / len(checked)) if checked else None
    )
    summary["jm_max_disagreement_margin"] = _json_float(
        max((abs(r.jm_margin) for r in disagree), default=0.0)
    )
    summary["jm_min_margin"] = (
        _json_float(min(r.jm_margin for r in ok)) if ok else None
    )
    return summary


def run_suite(
    master_seed: int,
    n_trials: int,
    detector_dim: int | Sequence[int] = 2,
    *,
    pure_states: bool = False,
    optimal: bool = False,
    check_jm: bool = True,
    threads: int = 1,
) -> DualityReport:
    """Sample and evaluate ``n_trials`` trials and aggregate their slacks.

    A sequence of detector dimensions is cycled through by trial index. The
    report depends only on the arguments, never on ``threads``.
    """
    if n_trials < 1:
        raise DomainError("n_trials must be at least 1")
    dims = [detector_dim] if isinstance(detector_dim, int) else list(detector_dim)
    if not dims or any(not 2 <= d <= 8 for d in dims):
        raise DomainError(f"detector dimensions must lie in [2, 8], got {dims}")

    def one(i: int) -> TrialRecord:
        trial = sample_config(
            master_seed, i, dims[i % len(dims)], pure_states=pure_states, optimal=optimal
        )
        return evaluate_trial(trial, check_jm=check_jm)

    if threads <= 1:
        records = [one(i) for i in range(n_trials)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(one, range(n_trials)))
    summary = _summarize(records)
    summary["config"] = {
        "master_seed": master_seed,
        "detector_dims": dims,
        "pure_states": pure_states,
        "optimal_strategy": optimal,
        "check_jm": check_jm,
    }
    return DualityReport(records, summary)

