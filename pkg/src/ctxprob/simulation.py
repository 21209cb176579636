"""Synthetic context-transition experiments with reproducible sampling.

Three scenario families generate ground truth:

* :class:`DirectScenario` — explicit probabilities for every context;
* :class:`TwoSlitScenario` — two-path interference with amplitudes ``m1`` and
  ``m2 * e^{i*phase}``: per-path probabilities ``m1**2`` and ``m2**2``,
  combined probability ``|m1 + m2*e^{i*phase}|**2``;
* :class:`HyperbolicUrnScenario` — a pre-transition pair that stays additive
  while the post-transition pair deviates strongly (``|lambda| > 1``).

Each context is an independent experimental run.  Sampling draws one uniform
variate per trial from a Philox (4x64) substream keyed by
``SeedSequence((seed, stream_id))`` and compares it against the context's
probability, so results are bit-identical across runs and platforms and
adding a context never shifts another context's draws.  Stream ids 0-4 are
the context sampling streams in :data:`CONTEXT_LABELS` order; bootstrap
resampling uses ids 16-20 so that reusing one seed across the pipeline never
aliases streams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .calculus import (
    ContextTriple,
    Degenerate,
    Hyperbolic,
    Probability,
    TransitionAnalysis,
    Trigonometric,
    analyze,
)
from .errors import InvalidScenario, RegimeMismatch, ZeroTrials

__all__ = [
    "CONTEXT_LABELS",
    "GENERATOR_NAME",
    "CountRow",
    "CountTable",
    "DirectScenario",
    "TwoSlitScenario",
    "HyperbolicUrnScenario",
    "Scenario",
    "EstimationReport",
    "scenario_truth",
    "sample_counts",
    "estimate",
    "theta_recovery_error",
]

CONTEXT_LABELS = ("S", "S1", "S2", "S1p", "S2p")
_STREAM_ID = {label: i for i, label in enumerate(CONTEXT_LABELS)}
_BOOTSTRAP_STREAM_BASE = 16
_SAMPLE_CHUNK = 1 << 22

GENERATOR_NAME = "philox4x64-seedseq-v1"


def _context_rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, stream))))


def _check_seed(seed) -> int:
    s = int(seed)
    if s != seed or not (0 <= s < 2**64):
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    return s


@dataclass(frozen=True)
class CountRow:
    """Outcome counts of one context's run: successes out of trials."""

    label: str
    successes: int
    trials: int

    def __post_init__(self) -> None:
        if self.label not in CONTEXT_LABELS:
            raise ValueError(f"unknown context label {self.label!r}")
        if int(self.trials) != self.trials or self.trials < 1:
            raise ZeroTrials(f"{self.label}: trials must be a positive integer, got {self.trials!r}")
        if int(self.successes) != self.successes or not (0 <= self.successes <= self.trials):
            raise ValueError(
                f"{self.label}: successes must lie in [0, trials], got {self.successes!r}"
            )
        object.__setattr__(self, "successes", int(self.successes))
        object.__setattr__(self, "trials", int(self.trials))

    @property
    def proportion(self) -> float:
        return self.successes / self.trials


@dataclass(frozen=True)
class CountTable:
    """Per-context counts of one experiment; rows are kept in canonical order.

    Labels must be unique and include at least S, S1p and S2p.
    """

    rows: tuple[CountRow, ...]

    def __post_init__(self) -> None:
        rows = tuple(self.rows)
        labels = [r.label for r in rows]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate context labels in {labels!r}")
        missing = {"S", "S1p", "S2p"} - set(labels)
        if missing:
            raise ValueError(f"missing required context rows: {sorted(missing)!r}")
        object.__setattr__(
            self, "rows", tuple(sorted(rows, key=lambda r: _STREAM_ID[r.label]))
        )

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(r.label for r in self.rows)

    def row(self, label: str) -> CountRow | None:
        for r in self.rows:
            if r.label == label:
                return r
        return None

    def proportion(self, label: str) -> float:
        r = self.row(label)
        if r is None:
            raise KeyError(label)
        return r.proportion


@dataclass(frozen=True)
class DirectScenario:
    """Explicitly specified context probabilities."""

    p_s: Probability
    p1_prime: Probability
    p2_prime: Probability
    p1: Probability | None = None
    p2: Probability | None = None

    def __post_init__(self) -> None:
        triple = ContextTriple(self.p_s, self.p1_prime, self.p2_prime, self.p1, self.p2)
        object.__setattr__(self, "p_s", triple.p_s)
        object.__setattr__(self, "p1_prime", triple.p1_prime)
        object.__setattr__(self, "p2_prime", triple.p2_prime)
        object.__setattr__(self, "p1", triple.p1)
        object.__setattr__(self, "p2", triple.p2)


@dataclass(frozen=True)
class TwoSlitScenario:
    """Two-path interference with amplitudes m1 and m2*e^{i*phase}.

    Every derived probability (m1**2, m2**2 and the combined
    |m1 + m2*e^{i*phase}|**2) must lie in [0, 1]; the combined probability
    peaks at (m1+m2)**2 when the phase vanishes.  The phase must lie in
    [0, pi] up to a slack of 1e-6, tolerating decimal-rounded endpoint
    inputs such as 3.1415927.
    """

    a1_modulus: float
    a2_modulus: float
    phase: float

    _PHASE_SLACK = 1e-6

    def __post_init__(self) -> None:
        m1 = float(self.a1_modulus)
        m2 = float(self.a2_modulus)
        t = float(self.phase)
        if not (math.isfinite(m1) and m1 >= 0.0 and math.isfinite(m2) and m2 >= 0.0):
            raise InvalidScenario(f"amplitude moduli must be finite and >= 0, got {m1!r}, {m2!r}")
        if not (-self._PHASE_SLACK <= t <= math.pi + self._PHASE_SLACK):
            raise InvalidScenario(f"phase must lie in [0, pi], got {self.phase!r}")
        p_s = m1 * m1 + m2 * m2 + 2.0 * m1 * m2 * math.cos(t)
        for name, p in (("m1**2", m1 * m1), ("m2**2", m2 * m2), ("combined probability", p_s)):
            if p > 1.0 + Probability.ROUND_OFF:
                raise InvalidScenario(f"{name} = {p!r} exceeds 1")


@dataclass(frozen=True)
class HyperbolicUrnScenario:
    """Additive pre-transition pair with a strongly deviating post pair.

    The combined probability is p1 + p2 (which must not exceed 1), and the
    parameters must actually produce a hyperbolic transition: the
    coefficient computed from them must satisfy |lambda| > 1.
    """

    p1: Probability
    p2: Probability
    p1_prime: Probability
    p2_prime: Probability

    def __post_init__(self) -> None:
        for name in ("p1", "p2", "p1_prime", "p2_prime"):
            object.__setattr__(self, name, Probability(getattr(self, name)))
        p_s = float(self.p1) + float(self.p2)
        if p_s > 1.0 + Probability.ROUND_OFF:
            raise InvalidScenario(f"p1 + p2 = {p_s!r} exceeds 1")
        a = float(self.p1_prime)
        b = float(self.p2_prime)
        if a == 0.0 or b == 0.0:
            raise InvalidScenario("post-transition probabilities must be positive")
        lam = (min(p_s, 1.0) - a - b) / (2.0 * math.sqrt(a * b))
        if abs(lam) <= 1.0:
            raise InvalidScenario(
                f"parameters give |lambda| = {abs(lam)!r} <= 1: not a hyperbolic transition"
            )


Scenario = Union[DirectScenario, TwoSlitScenario, HyperbolicUrnScenario]


@dataclass(frozen=True)
class EstimationReport:
    """Point analysis plus bootstrap uncertainty for one count table.

    ``lambda_interval`` and the per-context ``context_intervals`` are
    empirical percentile intervals at level ``confidence``;
    ``regime_stability`` is the fraction of replicates classified like the
    point estimate; ``theta_std`` is the bootstrap standard deviation of the
    phase among regime-matching replicates.  All of these are None when
    ``replicates`` is 0 or the quantity is unavailable.
    """

    point: TransitionAnalysis
    lambda_interval: tuple[float, float] | None
    context_intervals: dict[str, tuple[float, float] | None]
    regime_stability: float | None
    theta_std: float | None
    seed: int
    replicates: int
    confidence: float


def scenario_truth(scenario: Scenario) -> ContextTriple:
    """Exact context probabilities implied by a scenario."""
    if isinstance(scenario, DirectScenario):
        return ContextTriple(
            scenario.p_s, scenario.p1_prime, scenario.p2_prime, scenario.p1, scenario.p2
        )
    if isinstance(scenario, TwoSlitScenario):
        m1 = float(scenario.a1_modulus)
        m2 = float(scenario.a2_modulus)
        p_s = m1 * m1 + m2 * m2 + 2.0 * m1 * m2 * math.cos(float(scenario.phase))
        return ContextTriple(Probability(p_s), Probability(m1 * m1), Probability(m2 * m2))
    if isinstance(scenario, HyperbolicUrnScenario):
        p_s = Probability(float(scenario.p1) + float(scenario.p2))
        return ContextTriple(p_s, scenario.p1_prime, scenario.p2_prime, scenario.p1, scenario.p2)
    raise TypeError(f"unknown scenario type: {scenario!r}")


def _bernoulli_successes(rng: np.random.Generator, trials: int, p: float) -> int:
    # One uniform draw per trial, thresholded against p; chunked to bound
    # memory without changing the consumed stream.
    successes = 0
    remaining = trials
    while remaining > 0:
        k = min(remaining, _SAMPLE_CHUNK)
        successes += int(np.count_nonzero(rng.random(k) < p))
        remaining -= k
    return successes


def sample_counts(scenario: Scenario, trials_per_context: int, seed: int = 0) -> CountTable:
    """Draw finite counts for every context defined by a scenario.

    Each context runs ``trials_per_context`` independent Bernoulli trials at
    its true probability on its own named substream; identical
    (scenario, trials, seed) yields an identical table bit-for-bit.
    """
    n = int(trials_per_context)
    if n != trials_per_context or n < 1:
        raise ValueError(f"trials_per_context must be a positive integer, got {trials_per_context!r}")
    s = _check_seed(seed)
    truth = scenario_truth(scenario)
    probs = {
        "S": float(truth.p_s),
        "S1p": float(truth.p1_prime),
        "S2p": float(truth.p2_prime),
    }
    if truth.p1 is not None and truth.p2 is not None:
        probs["S1"] = float(truth.p1)
        probs["S2"] = float(truth.p2)
    rows = []
    for label in CONTEXT_LABELS:
        if label not in probs:
            continue
        rng = _context_rng(s, _STREAM_ID[label])
        rows.append(CountRow(label, _bernoulli_successes(rng, n, probs[label]), n))
    return CountTable(tuple(rows))


def _regime_code(regime) -> int:
    if isinstance(regime, Trigonometric):
        return 0
    if isinstance(regime, Hyperbolic):
        return 1 if regime.sign > 0 else 2
    return 3


def estimate(
    counts: CountTable,
    replicates: int = 1000,
    confidence: float = 0.95,
    seed: int = 0,
) -> EstimationReport:
    """Estimate the transition analysis from counts, with bootstrap uncertainty.

    The point estimate plugs the per-context success proportions into the
    calculus.  Uncertainty comes from a parametric bootstrap: each context's
    successes are redrawn from Binomial(trials, p_hat) on a dedicated
    substream, the coefficient is recomputed per replicate, and intervals
    are empirical percentiles (linear interpolation).  A zero post-transition
    proportion is flagged as a degenerate point regime, never raised;
    replicates with a degenerate denominator carry no coefficient and are
    classified degenerate for stability purposes.
    """
    r = int(replicates)
    if r != replicates or r < 0:
        raise ValueError(f"replicates must be a nonnegative integer, got {replicates!r}")
    c = float(confidence)
    if not (0.0 < c < 1.0):
        raise ValueError(f"confidence must lie in (0, 1), got {confidence!r}")
    s = _check_seed(seed)
    for row in counts.rows:
        if row.trials < 1:
            raise ZeroTrials(f"{row.label}: zero trials")

    p_hat = {row.label: row.proportion for row in counts.rows}
    point = analyze(
        ContextTriple(
            Probability(p_hat["S"]), Probability(p_hat["S1p"]), Probability(p_hat["S2p"])
        )
    )
    if r == 0:
        return EstimationReport(
            point=point,
            lambda_interval=None,
            context_intervals={row.label: None for row in counts.rows},
            regime_stability=None,
            theta_std=None,
            seed=s,
            replicates=0,
            confidence=c,
        )

    q_lo = (1.0 - c) / 2.0
    q_hi = 1.0 - q_lo
    boot = {}
    for row in counts.rows:
        rng = _context_rng(s, _BOOTSTRAP_STREAM_BASE + _STREAM_ID[row.label])
        boot[row.label] = rng.binomial(row.trials, p_hat[row.label], size=r) / row.trials
    context_intervals = {
        label: (float(np.quantile(v, q_lo)), float(np.quantile(v, q_hi)))
        for label, v in boot.items()
    }

    delta_b = boot["S"] - boot["S1p"] - boot["S2p"]
    denom = 2.0 * np.sqrt(boot["S1p"] * boot["S2p"])
    lam_b = np.full(r, np.nan)
    ok = denom > 0.0
    lam_b[ok] = delta_b[ok] / denom[ok]

    code_b = np.where(
        np.isnan(lam_b), 3, np.where(np.abs(lam_b) <= 1.0, 0, np.where(lam_b > 0.0, 1, 2))
    )
    point_code = _regime_code(point.regime)
    regime_stability = float(np.mean(code_b == point_code))

    lambda_interval = None
    if point.lam is not None and bool(ok.any()):
        valid = lam_b[ok]
        lambda_interval = (float(np.quantile(valid, q_lo)), float(np.quantile(valid, q_hi)))

    theta_std = None
    if point.lam is not None:
        match = lam_b[code_b == point_code]
        if match.size >= 2:
            if point_code == 0:
                thetas = np.arccos(np.clip(match, -1.0, 1.0))
            else:
                thetas = np.arccosh(np.maximum(np.abs(match), 1.0))
            theta_std = float(np.std(thetas, ddof=1))

    return EstimationReport(
        point=point,
        lambda_interval=lambda_interval,
        context_intervals=context_intervals,
        regime_stability=regime_stability,
        theta_std=theta_std,
        seed=s,
        replicates=r,
        confidence=c,
    )


def theta_recovery_error(
    true_theta: float, report: EstimationReport, expected_kind: str | None = None
) -> float:
    """Absolute error of the estimated phase against the generating truth.

    ``expected_kind`` ("trigonometric" or "hyperbolic") pins the regime the
    truth was generated in; when omitted, any non-degenerate point regime is
    accepted.  A mismatching (or degenerate) point regime raises
    :class:`RegimeMismatch` since its phase would not be comparable.
    """
    regime = report.point.regime
    if isinstance(regime, Degenerate):
        raise RegimeMismatch("point regime is degenerate: no phase was estimated")
    kind = "trigonometric" if isinstance(regime, Trigonometric) else "hyperbolic"
    if expected_kind is not None and kind != expected_kind:
        raise RegimeMismatch(f"point regime is {kind}, expected {expected_kind}")
    return abs(regime.theta - float(true_theta))
