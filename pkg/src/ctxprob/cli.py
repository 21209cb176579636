"""Command-line interface.

Subcommands: ``analyze`` (count file or direct probabilities to a report),
``simulate`` (scenario to a count file, truth on stderr), ``sweep``
(reconstructed probability over a coefficient grid) and ``range``
(admissible coefficient bounds).  ``--output -`` means standard output;
file outputs are written atomically.  All numeric output carries 17
significant digits.

Exit codes: 0 success, 1 usage error, 2 data/parse error, 3 inadmissible
input.  Every failure prints one machine-parsable line to standard error:
``error: <kind>: <message>`` with kind in {usage, parse, io, inadmissible}.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .amplitudes import ComplexAmplitude, wave_from_analysis
from .calculus import (
    ContextTriple,
    Degenerate,
    Hyperbolic,
    Probability,
    TransitionAnalysis,
    Trigonometric,
    analyze,
    classify,
    lambda_range,
    reconstruct_probability,
)
from .data import (
    SCHEMA_VERSION,
    AdditivityCheck,
    ContextSummary,
    Reproducibility,
    ReportDocument,
    WaveSummary,
    additivity_check,
    parse_counts,
    write_bytes_atomic,
    write_counts,
    write_report,
)
from .errors import (
    AdditivityViolation,
    DegenerateDenominator,
    DegenerateVariance,
    InadmissibleLambda,
    InvalidProbability,
    InvalidScenario,
    NonFinite,
    ParseError,
)
from .simulation import (
    GENERATOR_NAME,
    CountTable,
    DirectScenario,
    EstimationReport,
    HyperbolicUrnScenario,
    TwoSlitScenario,
    estimate,
    sample_counts,
    scenario_truth,
)

DEFAULT_SEED = 0
DEFAULT_REPLICATES = 1000
DEFAULT_CONFIDENCE = 0.95
DEFAULT_TRIALS = 10000


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _g17(x: float) -> str:
    return f"{float(x):.17g}"


def _add_run_options(parser, trials: bool = False) -> None:
    if trials:
        parser.add_argument("--trials", type=int, default=DEFAULT_TRIALS,
                            help=f"trials per context (default {DEFAULT_TRIALS})")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"64-bit generator seed (default {DEFAULT_SEED})")
    parser.add_argument("--output", default="-",
                        help="output path, or - for standard output (default -)")


def _build_parser() -> _Parser:
    parser = _Parser(prog="ctxprob",
                     description="Contextual probability interference toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a count file or direct probabilities")
    p.add_argument("counts", nargs="?",
                   help="count CSV path, or - for standard input")
    p.add_argument("--p-s", dest="p_s", type=float, help="combined-context probability")
    p.add_argument("--p1p", type=float, help="first post-transition probability")
    p.add_argument("--p2p", type=float, help="second post-transition probability")
    p.add_argument("--p1", type=float, help="first pre-transition subcontext probability")
    p.add_argument("--p2", type=float, help="second pre-transition subcontext probability")
    p.add_argument("--replicates", type=int, default=DEFAULT_REPLICATES,
                   help=f"bootstrap replicates (default {DEFAULT_REPLICATES})")
    p.add_argument("--confidence", type=float, default=DEFAULT_CONFIDENCE,
                   help=f"interval confidence level (default {DEFAULT_CONFIDENCE})")
    _add_run_options(p)

    p = sub.add_parser("simulate", help="sample a scenario into a count file")
    scen = p.add_subparsers(dest="scenario", required=True)

    q = scen.add_parser("two-slit", help="two-path interference scenario")
    q.add_argument("--p1", type=float, required=True, help="first path probability")
    q.add_argument("--p2", type=float, required=True, help="second path probability")
    q.add_argument("--theta", type=float, required=True, help="relative phase in [0, pi]")
    _add_run_options(q, trials=True)

    q = scen.add_parser("hyperbolic-urn", help="strongly deviating transition scenario")
    q.add_argument("--p1", type=float, required=True)
    q.add_argument("--p2", type=float, required=True)
    q.add_argument("--p1p", type=float, required=True)
    q.add_argument("--p2p", type=float, required=True)
    _add_run_options(q, trials=True)

    q = scen.add_parser("direct", help="explicit context probabilities")
    q.add_argument("--p-s", dest="p_s", type=float, required=True)
    q.add_argument("--p1p", type=float, required=True)
    q.add_argument("--p2p", type=float, required=True)
    q.add_argument("--p1", type=float)
    q.add_argument("--p2", type=float)
    _add_run_options(q, trials=True)

    p = sub.add_parser("sweep", help="reconstruct probabilities over a coefficient grid")
    p.add_argument("--p1p", type=float, required=True)
    p.add_argument("--p2p", type=float, required=True)
    p.add_argument("--lambda-min", dest="lambda_min", type=float, required=True)
    p.add_argument("--lambda-max", dest="lambda_max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True, help="grid size, at least 2")
    p.add_argument("--output", default="-")

    p = sub.add_parser("range", help="print the admissible coefficient interval")
    p.add_argument("--p1p", type=float, required=True)
    p.add_argument("--p2p", type=float, required=True)

    return parser


def _prob_flag(value: float, flag: str) -> Probability:
    try:
        return Probability(value)
    except InvalidProbability:
        raise InvalidProbability(f"{flag} must lie in [0, 1], got {value!r}") from None


def _check_seed_flag(seed: int) -> int:
    if seed < 0 or seed >= 2**64:
        raise _UsageError(f"--seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as handle:
        return handle.read()


def _write_output(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        write_bytes_atomic(path, data)


def _regime_kind(regime) -> str:
    if isinstance(regime, Trigonometric):
        return "trigonometric"
    if isinstance(regime, Hyperbolic):
        return "hyperbolic"
    return "degenerate"


def _wave_summary(p1_prime, p2_prime, analysis: TransitionAnalysis) -> WaveSummary | None:
    if isinstance(analysis.regime, Degenerate):
        return None
    wave = wave_from_analysis(p1_prime, p2_prime, analysis)
    if isinstance(wave, ComplexAmplitude):
        return WaveSummary(kind="complex", components=(wave.re, wave.im))
    return WaveSummary(kind="split-complex", components=(wave.re, wave.hy))


def _counts_document(
    counts: CountTable,
    report: EstimationReport,
    additivity: AdditivityCheck | None,
) -> ReportDocument:
    inputs = {
        row.label: ContextSummary(
            p_hat=row.proportion,
            successes=row.successes,
            trials=row.trials,
            interval=report.context_intervals.get(row.label),
        )
        for row in counts.rows
    }
    return ReportDocument(
        schema_version=SCHEMA_VERSION,
        inputs=inputs,
        delta=report.point.delta,
        lam=report.point.lam,
        regime=report.point.regime,
        lambda_interval=report.lambda_interval,
        regime_stability=report.regime_stability,
        additivity=additivity,
        wave=_wave_summary(counts.proportion("S1p"), counts.proportion("S2p"), report.point),
        reproducibility=Reproducibility(
            seed=report.seed, replicates=report.replicates, generator_name=GENERATOR_NAME
        ),
    )


def _direct_document(triple: ContextTriple, analysis: TransitionAnalysis, seed: int) -> ReportDocument:
    inputs = {"S": ContextSummary(p_hat=float(triple.p_s))}
    if triple.p1 is not None:
        inputs["S1"] = ContextSummary(p_hat=float(triple.p1))
        inputs["S2"] = ContextSummary(p_hat=float(triple.p2))
    inputs["S1p"] = ContextSummary(p_hat=float(triple.p1_prime))
    inputs["S2p"] = ContextSummary(p_hat=float(triple.p2_prime))
    return ReportDocument(
        schema_version=SCHEMA_VERSION,
        inputs=inputs,
        delta=analysis.delta,
        lam=analysis.lam,
        regime=analysis.regime,
        lambda_interval=None,
        regime_stability=None,
        additivity=None,
        wave=_wave_summary(triple.p1_prime, triple.p2_prime, analysis),
        reproducibility=Reproducibility(
            seed=seed, replicates=0, generator_name=GENERATOR_NAME
        ),
    )


def _cmd_analyze(args) -> int:
    direct_flags = [args.p_s, args.p1p, args.p2p, args.p1, args.p2]
    file_mode = args.counts is not None
    if file_mode and any(v is not None for v in direct_flags):
        raise _UsageError("give a counts file or direct probabilities, not both")
    if not file_mode and any(v is None for v in (args.p_s, args.p1p, args.p2p)):
        raise _UsageError("direct mode requires --p-s, --p1p and --p2p")
    if (args.p1 is None) != (args.p2 is None):
        raise _UsageError("--p1 and --p2 must be given together")
    if args.replicates < 0:
        raise _UsageError(f"--replicates must be >= 0, got {args.replicates}")
    if not (0.0 < args.confidence < 1.0):
        raise _UsageError(f"--confidence must lie in (0, 1), got {args.confidence}")
    seed = _check_seed_flag(args.seed)

    if file_mode:
        source = "<stdin>" if args.counts == "-" else args.counts
        counts = parse_counts(_read_input(args.counts), source=source).table
        report = estimate(
            counts, replicates=args.replicates, confidence=args.confidence, seed=seed
        )
        doc = _counts_document(counts, report, additivity_check(counts))
    else:
        triple = ContextTriple(
            _prob_flag(args.p_s, "--p-s"),
            _prob_flag(args.p1p, "--p1p"),
            _prob_flag(args.p2p, "--p2p"),
            None if args.p1 is None else _prob_flag(args.p1, "--p1"),
            None if args.p2 is None else _prob_flag(args.p2, "--p2"),
        )
        doc = _direct_document(triple, analyze(triple), seed)
    _write_output(args.output, write_report(doc))
    return 0


def _truth_line(truth: ContextTriple) -> str:
    parts = [
        f"p_s={_g17(truth.p_s)}",
        f"p1p={_g17(truth.p1_prime)}",
        f"p2p={_g17(truth.p2_prime)}",
    ]
    if truth.p1 is not None:
        parts.append(f"p1={_g17(truth.p1)}")
        parts.append(f"p2={_g17(truth.p2)}")
    analysis = analyze(truth)
    parts.append(f"delta={_g17(analysis.delta)}")
    regime = analysis.regime
    parts.append(f"regime={_regime_kind(regime)}")
    if analysis.lam is not None:
        parts.append(f"lambda={_g17(analysis.lam)}")
        parts.append(f"theta={_g17(regime.theta)}")
        if isinstance(regime, Hyperbolic):
            parts.append(f"sign={regime.sign:+d}")
    return "truth " + " ".join(parts)


def _cmd_simulate(args) -> int:
    if args.trials < 1:
        raise _UsageError(f"--trials must be >= 1, got {args.trials}")
    seed = _check_seed_flag(args.seed)
    if args.scenario == "two-slit":
        p1 = _prob_flag(args.p1, "--p1")
        p2 = _prob_flag(args.p2, "--p2")
        scenario = TwoSlitScenario(
            a1_modulus=math.sqrt(p1), a2_modulus=math.sqrt(p2), phase=args.theta
        )
    elif args.scenario == "hyperbolic-urn":
        scenario = HyperbolicUrnScenario(
            p1=_prob_flag(args.p1, "--p1"),
            p2=_prob_flag(args.p2, "--p2"),
            p1_prime=_prob_flag(args.p1p, "--p1p"),
            p2_prime=_prob_flag(args.p2p, "--p2p"),
        )
    else:
        if (args.p1 is None) != (args.p2 is None):
            raise _UsageError("--p1 and --p2 must be given together")
        scenario = DirectScenario(
            p_s=_prob_flag(args.p_s, "--p-s"),
            p1_prime=_prob_flag(args.p1p, "--p1p"),
            p2_prime=_prob_flag(args.p2p, "--p2p"),
            p1=None if args.p1 is None else _prob_flag(args.p1, "--p1"),
            p2=None if args.p2 is None else _prob_flag(args.p2, "--p2"),
        )
    table = sample_counts(scenario, args.trials, seed)
    print(_truth_line(scenario_truth(scenario)), file=sys.stderr)
    _write_output(args.output, write_counts(table))
    return 0


def _cmd_sweep(args) -> int:
    if args.steps < 2:
        raise _UsageError(f"--steps must be >= 2, got {args.steps}")
    if not (args.lambda_min < args.lambda_max):
        raise _UsageError(
            f"--lambda-min must be strictly below --lambda-max, "
            f"got [{args.lambda_min}, {args.lambda_max}]"
        )
    a = _prob_flag(args.p1p, "--p1p")
    b = _prob_flag(args.p2p, "--p2p")
    lo, hi = lambda_range(a, b)
    slack = 1e-12
    if args.lambda_min < lo - slack or args.lambda_max > hi + slack:
        raise InadmissibleLambda(
            f"requested [{args.lambda_min}, {args.lambda_max}] exceeds the admissible "
            f"interval [{_g17(lo)}, {_g17(hi)}]"
        )
    lines = ["lambda,theta,regime,p_s"]
    for lam in np.linspace(args.lambda_min, args.lambda_max, args.steps):
        lam = float(lam)
        regime = classify(lam)
        p_s = reconstruct_probability(a, b, lam)
        lines.append(
            f"{_g17(lam)},{_g17(regime.theta)},{_regime_kind(regime)},{_g17(p_s)}"
        )
    _write_output(args.output, ("\n".join(lines) + "\n").encode("utf-8"))
    return 0


def _cmd_range(args) -> int:
    a = _prob_flag(args.p1p, "--p1p")
    b = _prob_flag(args.p2p, "--p2p")
    lo, hi = lambda_range(a, b)
    line = (
        f"lambda_min={_g17(lo)} lambda_max={_g17(hi)} "
        f"regime_at_min={_regime_kind(classify(lo))} "
        f"regime_at_max={_regime_kind(classify(hi))}"
    )
    print(line)
    return 0


_COMMANDS = {
    "analyze": _cmd_analyze,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "range": _cmd_range,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as e:
        print(f"error: usage: {e}", file=sys.stderr)
        return 1
    except ParseError as e:
        print(f"error: parse: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: io: {e}", file=sys.stderr)
        return 2
    except (
        InvalidProbability,
        AdditivityViolation,
        InadmissibleLambda,
        InvalidScenario,
        DegenerateDenominator,
        DegenerateVariance,
        NonFinite,
    ) as e:
        print(f"error: inadmissible: {e}", file=sys.stderr)
        return 3


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
