"""Count-file ingestion and canonical report serialization.

Count files are CSV with the exact header ``context,successes,trials``.
Context labels are S, S1, S2, S1p, S2p; values are non-negative integers
with successes <= trials and trials >= 1; rows may appear in any order but
labels must be unique and S, S1p, S2p must be present.  UTF-8 with LF or
CRLF line endings; blank lines and lines starting with ``#`` are ignored.

Reports serialize to a canonical JSON document: fixed key order, real
numbers rendered with 17 significant digits (enough to round-trip doubles
exactly), newline-terminated.  ``parse_report(write_report(doc))`` always
returns a document equal to ``doc``.
"""

from __future__ import annotations

import enum
import json
import math
import os
import re
import tempfile
from dataclasses import dataclass

from .calculus import Degenerate, DegenerateReason, Hyperbolic, Regime, Trigonometric
from .errors import DegenerateVariance, ParseError
from .simulation import CONTEXT_LABELS, CountRow, CountTable

__all__ = [
    "SCHEMA_VERSION",
    "COUNTS_HEADER",
    "ParseErrorKind",
    "CountFile",
    "AdditivityCheck",
    "ContextSummary",
    "WaveSummary",
    "Reproducibility",
    "ReportDocument",
    "parse_counts",
    "additivity_check",
    "write_report",
    "parse_report",
    "write_counts",
    "write_bytes_atomic",
]

SCHEMA_VERSION = "1"
COUNTS_HEADER = "context,successes,trials"
_INTEGER = re.compile(r"[0-9]+")


class ParseErrorKind(enum.Enum):
    """Machine-readable cause attached to every :class:`ParseError`."""

    ENCODING = "encoding"
    BAD_HEADER = "bad-header"
    MALFORMED_ROW = "malformed-row"
    BAD_INTEGER = "bad-integer"
    UNKNOWN_LABEL = "unknown-label"
    DUPLICATE_LABEL = "duplicate-label"
    SUCCESSES_EXCEED_TRIALS = "successes-exceed-trials"
    ZERO_TRIALS = "zero-trials"
    MISSING_LABELS = "missing-labels"
    BAD_DOCUMENT = "bad-document"


@dataclass(frozen=True)
class CountFile:
    """A parsed count table plus where each row came from."""

    table: CountTable
    source: str
    line_numbers: dict[str, int]


@dataclass(frozen=True)
class AdditivityCheck:
    """z-statistic for the pre-transition additive decomposition."""

    z_statistic: float
    consistent: bool


def parse_counts(text: bytes | str, source: str = "<memory>") -> CountFile:
    """Parse and validate a count CSV; errors carry line number and kind."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            line = text.count(b"\n", 0, e.start) + 1
            raise ParseError(
                f"{source}: invalid UTF-8 at byte {e.start}",
                line=line,
                kind=ParseErrorKind.ENCODING,
            ) from None
    lines = text.split("\n")
    rows: list[CountRow] = []
    line_numbers: dict[str, int] = {}
    header_seen = False
    last_line = max(len(lines), 1)
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not header_seen:
            if line != COUNTS_HEADER:
                raise ParseError(
                    f"{source}: expected header {COUNTS_HEADER!r}, got {line!r}",
                    line=lineno,
                    kind=ParseErrorKind.BAD_HEADER,
                )
            header_seen = True
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise ParseError(
                f"{source}: expected 3 comma-separated fields, got {len(parts)}",
                line=lineno,
                kind=ParseErrorKind.MALFORMED_ROW,
            )
        label, successes_text, trials_text = parts
        if label not in CONTEXT_LABELS:
            raise ParseError(
                f"{source}: unknown context label {label!r}",
                line=lineno,
                kind=ParseErrorKind.UNKNOWN_LABEL,
            )
        if label in line_numbers:
            raise ParseError(
                f"{source}: duplicate context label {label!r} "
                f"(first seen at line {line_numbers[label]})",
                line=lineno,
                kind=ParseErrorKind.DUPLICATE_LABEL,
            )
        for name, value in (("successes", successes_text), ("trials", trials_text)):
            if not _INTEGER.fullmatch(value):
                raise ParseError(
                    f"{source}: {name} must be a non-negative integer, got {value!r}",
                    line=lineno,
                    kind=ParseErrorKind.BAD_INTEGER,
                )
        successes = int(successes_text)
        trials = int(trials_text)
        if trials == 0:
            raise ParseError(
                f"{source}: trials must be positive",
                line=lineno,
                kind=ParseErrorKind.ZERO_TRIALS,
            )
        if successes > trials:
            raise ParseError(
                f"{source}: successes {successes} exceed trials {trials}",
                line=lineno,
                kind=ParseErrorKind.SUCCESSES_EXCEED_TRIALS,
            )
        line_numbers[label] = lineno
        rows.append(CountRow(label, successes, trials))
    if not header_seen:
        raise ParseError(
            f"{source}: empty input, expected header {COUNTS_HEADER!r}",
            line=last_line,
            kind=ParseErrorKind.BAD_HEADER,
        )
    missing = [label for label in ("S", "S1p", "S2p") if label not in line_numbers]
    if missing:
        raise ParseError(
            f"{source}: missing required context rows {missing!r}",
            line=last_line,
            kind=ParseErrorKind.MISSING_LABELS,
        )
    return CountFile(table=CountTable(tuple(rows)), source=source, line_numbers=line_numbers)


def additivity_check(counts: CountTable, threshold: float = 3.0) -> AdditivityCheck | None:
    """Test whether the S1/S2 counts additively decompose the S counts.

    Returns None when either subcontext row is absent.  Otherwise computes
    ``z = (p_S - p_S1 - p_S2) / sqrt(v_S + v_S1 + v_S2)`` with the usual
    binomial variances ``v = p*(1-p)/trials`` and flags the decomposition
    consistent when ``|z| <= threshold``.  An exactly zero variance sum with
    a nonzero difference raises :class:`DegenerateVariance`.
    """
    r_s = counts.row("S")
    r_1 = counts.row("S1")
    r_2 = counts.row("S2")
    if r_1 is None or r_2 is None:
        return None
    diff = r_s.proportion - r_1.proportion - r_2.proportion
    variance = sum(
        r.proportion * (1.0 - r.proportion) / r.trials for r in (r_s, r_1, r_2)
    )
    if variance == 0.0:
        if diff == 0.0:
            return AdditivityCheck(z_statistic=0.0, consistent=True)
        raise DegenerateVariance(
            f"all variances vanish but the difference is {diff!r}: "
            "the decomposition is deterministically violated"
        )
    z = diff / math.sqrt(variance)
    return AdditivityCheck(z_statistic=z, consistent=abs(z) <= threshold)


@dataclass(frozen=True)
class ContextSummary:
    """One context's empirical summary inside a report."""

    p_hat: float
    successes: int | None = None
    trials: int | None = None
    interval: tuple[float, float] | None = None


@dataclass(frozen=True)
class WaveSummary:
    """Wave components attached to a report: complex or split-complex."""

    kind: str
    components: tuple[float, float]

    def __post_init__(self) -> None:
        if self.kind not in ("complex", "split-complex"):
            raise ValueError(f"wave kind must be 'complex' or 'split-complex', got {self.kind!r}")
        object.__setattr__(
            self, "components", (float(self.components[0]), float(self.components[1]))
        )


@dataclass(frozen=True)
class Reproducibility:
    """Everything needed to regenerate the randomized parts of a report."""

    seed: int
    replicates: int
    generator_name: str


@dataclass(frozen=True)
class ReportDocument:
    """Complete analysis report; serializes canonically via :func:`write_report`."""

    schema_version: str
    inputs: dict[str, ContextSummary]
    delta: float
    lam: float | None
    regime: Regime
    lambda_interval: tuple[float, float] | None
    regime_stability: float | None
    additivity: AdditivityCheck | None
    wave: WaveSummary | None
    reproducibility: Reproducibility

    def __post_init__(self) -> None:
        if self.schema_version != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {self.schema_version!r}")
        unknown = set(self.inputs) - set(CONTEXT_LABELS)
        if unknown:
            raise ValueError(f"unknown context labels {sorted(unknown)!r}")
        missing = {"S", "S1p", "S2p"} - set(self.inputs)
        if missing:
            raise ValueError(f"missing required context summaries {sorted(missing)!r}")
        ordered = {
            label: self.inputs[label] for label in CONTEXT_LABELS if label in self.inputs
        }
        object.__setattr__(self, "inputs", ordered)


def _format_real(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x!r}")
    return f"{x:.17g}"


def _render(node, indent: int) -> str:
    pad = "  " * indent
    if node is None:
        return "null"
    if node is True:
        return "true"
    if node is False:
        return "false"
    if isinstance(node, int):
        return str(node)
    if isinstance(node, float):
        return _format_real(node)
    if isinstance(node, str):
        return json.dumps(node)
    if isinstance(node, (list, tuple)):
        return "[" + ", ".join(_render(v, indent) for v in node) + "]"
    if isinstance(node, dict):
        if not node:
            return "{}"
        inner = ",\n".join(
            f"{pad}  {json.dumps(k)}: {_render(v, indent + 1)}" for k, v in node.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(node).__name__}")


def _regime_tree(regime: Regime) -> dict:
    if isinstance(regime, Trigonometric):
        return {"kind": "trigonometric", "theta": float(regime.theta)}
    if isinstance(regime, Hyperbolic):
        return {"kind": "hyperbolic", "sign": int(regime.sign), "theta": float(regime.theta)}
    if isinstance(regime, Degenerate):
        return {"kind": "degenerate", "reason": regime.reason.value}
    raise TypeError(f"unknown regime type: {regime!r}")


def _pair(value: tuple[float, float] | None) -> list[float] | None:
    if value is None:
        return None
    return [float(value[0]), float(value[1])]


def _document_tree(doc: ReportDocument) -> dict:
    inputs = {}
    for label, summary in doc.inputs.items():
        inputs[label] = {
            "p_hat": float(summary.p_hat),
            "successes": summary.successes,
            "trials": summary.trials,
            "interval": _pair(summary.interval),
        }
    if doc.additivity is None:
        additivity = {"present": False}
    else:
        additivity = {
            "present": True,
            "z_statistic": float(doc.additivity.z_statistic),
            "consistent": bool(doc.additivity.consistent),
        }
    wave = None
    if doc.wave is not None:
        wave = {"kind": doc.wave.kind, "components": list(doc.wave.components)}
    return {
        "schema_version": doc.schema_version,
        "inputs": inputs,
        "delta": float(doc.delta),
        "lambda": None if doc.lam is None else float(doc.lam),
        "regime": _regime_tree(doc.regime),
        "lambda_interval": _pair(doc.lambda_interval),
        "regime_stability": None if doc.regime_stability is None else float(doc.regime_stability),
        "additivity_check": additivity,
        "wave": wave,
        "reproducibility": {
            "seed": int(doc.reproducibility.seed),
            "replicates": int(doc.reproducibility.replicates),
            "generator_name": doc.reproducibility.generator_name,
        },
    }


def write_report(doc: ReportDocument) -> bytes:
    """Serialize a report canonically: fixed key order, 17-digit reals."""
    return (_render(_document_tree(doc), 0) + "\n").encode("utf-8")


def _bad_document(message: str, line: int = 1) -> ParseError:
    return ParseError(message, line=line, kind=ParseErrorKind.BAD_DOCUMENT)


def _opt_float(value, name: str) -> float | None:
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _bad_document(f"{name} must be a number or null, got {value!r}")
    return float(value)


def _req_float(value, name: str) -> float:
    x = _opt_float(value, name)
    if x is None:
        raise _bad_document(f"{name} must be a number, got null")
    return x


def _opt_int(value, name: str) -> int | None:
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise _bad_document(f"{name} must be an integer or null, got {value!r}")
    return value


def _opt_pair(value, name: str) -> tuple[float, float] | None:
    if value is None:
        return None
    if not isinstance(value, list) or len(value) != 2:
        raise _bad_document(f"{name} must be a two-element array or null, got {value!r}")
    return (_req_float(value[0], name), _req_float(value[1], name))


def _parse_regime(node) -> Regime:
    if not isinstance(node, dict) or "kind" not in node:
        raise _bad_document(f"regime must be an object with a kind, got {node!r}")
    kind = node["kind"]
    if kind == "trigonometric":
        return Trigonometric(theta=_req_float(node.get("theta"), "regime.theta"))
    if kind == "hyperbolic":
        sign = node.get("sign")
        if sign not in (-1, 1):
            raise _bad_document(f"regime.sign must be +1 or -1, got {sign!r}")
        return Hyperbolic(sign=sign, theta=_req_float(node.get("theta"), "regime.theta"))
    if kind == "degenerate":
        try:
            reason = DegenerateReason(node.get("reason"))
        except ValueError:
            raise _bad_document(f"unknown degeneracy reason {node.get('reason')!r}") from None
        return Degenerate(reason=reason)
    raise _bad_document(f"unknown regime kind {kind!r}")


def parse_report(data: bytes | str) -> ReportDocument:
    """Parse a serialized report back into an equal :class:`ReportDocument`."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError:
            raise ParseError(
                "report is not valid UTF-8", line=1, kind=ParseErrorKind.ENCODING
            ) from None
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as e:
        raise ParseError(
            f"invalid report JSON: {e.msg}", line=e.lineno, kind=ParseErrorKind.BAD_DOCUMENT
        ) from None
    if not isinstance(obj, dict):
        raise _bad_document("report root must be an object")
    expected = {
        "schema_version", "inputs", "delta", "lambda", "regime", "lambda_interval",
        "regime_stability", "additivity_check", "wave", "reproducibility",
    }
    if set(obj) != expected:
        raise _bad_document(
            f"report keys {sorted(set(obj) ^ expected)!r} missing or unexpected"
        )
    if obj["schema_version"] != SCHEMA_VERSION:
        raise _bad_document(f"unsupported schema version {obj['schema_version']!r}")
    if not isinstance(obj["inputs"], dict):
        raise _bad_document("inputs must be an object")
    inputs = {}
    for label, node in obj["inputs"].items():
        if label not in CONTEXT_LABELS or not isinstance(node, dict):
            raise _bad_document(f"bad input entry {label!r}")
        inputs[label] = ContextSummary(
            p_hat=_req_float(node.get("p_hat"), f"inputs.{label}.p_hat"),
            successes=_opt_int(node.get("successes"), f"inputs.{label}.successes"),
            trials=_opt_int(node.get("trials"), f"inputs.{label}.trials"),
            interval=_opt_pair(node.get("interval"), f"inputs.{label}.interval"),
        )
    add_node = obj["additivity_check"]
    if not isinstance(add_node, dict) or not isinstance(add_node.get("present"), bool):
        raise _bad_document("additivity_check must carry a boolean 'present'")
    additivity = None
    if add_node["present"]:
        consistent = add_node.get("consistent")
        if not isinstance(consistent, bool):
            raise _bad_document("additivity_check.consistent must be a boolean")
        additivity = AdditivityCheck(
            z_statistic=_req_float(add_node.get("z_statistic"), "additivity_check.z_statistic"),
            consistent=consistent,
        )
    wave_node = obj["wave"]
    wave = None
    if wave_node is not None:
        if not isinstance(wave_node, dict):
            raise _bad_document("wave must be an object or null")
        pair = _opt_pair(wave_node.get("components"), "wave.components")
        if pair is None:
            raise _bad_document("wave.components must be a two-element array")
        try:
            wave = WaveSummary(kind=wave_node.get("kind"), components=pair)
        except (TypeError, ValueError) as e:
            raise _bad_document(str(e)) from None
    repro_node = obj["reproducibility"]
    if not isinstance(repro_node, dict):
        raise _bad_document("reproducibility must be an object")
    seed = _opt_int(repro_node.get("seed"), "reproducibility.seed")
    replicates = _opt_int(repro_node.get("replicates"), "reproducibility.replicates")
    generator_name = repro_node.get("generator_name")
    if seed is None or replicates is None or not isinstance(generator_name, str):
        raise _bad_document("reproducibility must carry seed, replicates and generator_name")
    try:
        return ReportDocument(
            schema_version=obj["schema_version"],
            inputs=inputs,
            delta=_req_float(obj["delta"], "delta"),
            lam=_opt_float(obj["lambda"], "lambda"),
            regime=_parse_regime(obj["regime"]),
            lambda_interval=_opt_pair(obj["lambda_interval"], "lambda_interval"),
            regime_stability=_opt_float(obj["regime_stability"], "regime_stability"),
            additivity=additivity,
            wave=wave,
            reproducibility=Reproducibility(
                seed=seed, replicates=replicates, generator_name=generator_name
            ),
        )
    except ValueError as e:
        raise _bad_document(str(e)) from None


def write_counts(table: CountTable) -> bytes:
    """Serialize a count table as canonical CSV (rows in canonical order)."""
    lines = [COUNTS_HEADER]
    lines.extend(f"{r.label},{r.successes},{r.trials}" for r in table.rows)
    return ("\n".join(lines) + "\n").encode("utf-8")


def write_bytes_atomic(path, data: bytes) -> None:
    """Write a file atomically: temp file in the same directory, then rename."""
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ctxprob-")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
