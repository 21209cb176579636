"""
Hyperbolic transitions
======================

Deviations too large for the trigonometric rule (|lambda| > 1) cannot be
carried by any complex phase; they belong to the hyperbolic regime.  The
urn-style scenario keeps the original pair additive (0.4 + 0.5 = 0.9) while
the transition lands on a tiny reference pair (0.1, 0.1), which forces
lambda = 3.5.  The estimator recovers the regime from counts, and the
additivity diagnostic confirms that S1/S2 really decompose S.
"""

from ctxprob import (
    HyperbolicUrnScenario,
    InvalidScenario,
    additivity_check,
    estimate,
    sample_counts,
    scenario_truth,
)

scenario = HyperbolicUrnScenario(p1=0.4, p2=0.5, p1_prime=0.1, p2_prime=0.1)
truth = scenario_truth(scenario)
print("ground truth")
print(f"  p_s = {float(truth.p_s):.2f}, p1 = {float(truth.p1):.2f}, "
      f"p2 = {float(truth.p2):.2f}, p1' = {float(truth.p1_prime):.2f}, "
      f"p2' = {float(truth.p2_prime):.2f}  ->  lambda = 3.5")
print()

counts = sample_counts(scenario, 10**6, seed=7)
print("sampled counts (seed 7)")
for row in counts.rows:
    print(f"  {row.label:>3}: {row.successes:>7} / {row.trials}")
print()

report = estimate(counts, replicates=1000, confidence=0.95, seed=7)
lo, hi = report.lambda_interval
print("estimation")
print(f"  lambda_hat        = {report.point.lam:.5f}")
print(f"  95% interval      = [{lo:.5f}, {hi:.5f}]")
print(f"  point regime      = {report.point.regime}")
print(f"  regime stability  = {report.regime_stability:.3f}")
print()

check = additivity_check(counts)
print("additivity diagnostic (do S1/S2 decompose S?)")
print(f"  z = {check.z_statistic:+.3f}, consistent = {check.consistent}")
print()

# Parameters that do not actually deviate beyond |lambda| = 1 are rejected
# at construction: the scenario family is hyperbolic by contract.
try:
    HyperbolicUrnScenario(p1=0.3, p2=0.2, p1_prime=0.3, p2_prime=0.2)
except InvalidScenario as error:
    print(f"rejected non-hyperbolic parameters: {error}")
