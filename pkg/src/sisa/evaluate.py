"""Corpus evaluation across lexicon and rule configurations.

A manifest pairs CoNLL-U files with gold polarity labels. Each run
configuration names one of the four standard setups (single vs merged
lexicon, with vs without operations); accuracy reports for all four can be
folded into an impact table of pairwise percentage-point differences.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .classify import classify_document
from .conllu import parse_document
from .errors import ManifestError, SisaError, UsageError
from .lexicon import SentimentLexicon, WordList
from .operations import OperationDefinition
from .util import format_so

logger = logging.getLogger(__name__)

CONFIG_IDS = ("SL-O", "SL+O", "ML-O", "ML+O")
GOLD_LABELS = ("positive", "negative")


@dataclass(frozen=True)
class CorpusManifest:
    """Ordered (file path, gold label) pairs under one corpus name."""

    name: str
    items: tuple[tuple[Path, str], ...]


def load_manifest(path: str | Path, name: str | None = None) -> CorpusManifest:
    """Load a ``relative/path.conllu<TAB>label`` manifest.

    Relative paths resolve against the manifest's own directory.
    """
    path = Path(path)
    base = path.parent
    items: list[tuple[Path, str]] = []
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        columns = line.split("\t")
        if len(columns) != 2:
            raise ManifestError(
                f"expected 2 tab-separated fields, got {len(columns)}", str(path), line_no
            )
        item_path, label = columns
        if label not in GOLD_LABELS:
            raise ManifestError(f"unknown gold label {label!r}", str(path), line_no)
        resolved = Path(item_path)
        if not resolved.is_absolute():
            resolved = base / resolved
        items.append((resolved, label))
    return CorpusManifest(name=name or path.stem, items=tuple(items))


@dataclass(frozen=True)
class RunConfig:
    """One evaluation setup: which lexicon, which rules (empty = none)."""

    config_id: str
    lexicon: SentimentLexicon
    rules: tuple[OperationDefinition, ...] = ()

    def __post_init__(self) -> None:
        if self.config_id not in CONFIG_IDS:
            raise UsageError(f"unknown config id {self.config_id!r}")
        object.__setattr__(self, "rules", tuple(self.rules))


@dataclass(frozen=True)
class ItemResult:
    """Outcome for one manifest item; ``error`` is set when it was skipped."""

    path: str
    gold: str
    predicted: str | None
    so: float | None
    error: str | None = None


@dataclass(frozen=True)
class EvaluationReport:
    """Accuracy of one configuration over one manifest."""

    config_id: str
    manifest_name: str
    correct: int
    total: int
    accuracy: float
    errored: int
    items: tuple[ItemResult, ...]


def evaluate(
    manifest: CorpusManifest,
    cfg: RunConfig,
    lists: Mapping[str, WordList] | None = None,
    *,
    agg: str = "sum",
    tie: str = "pos",
) -> EvaluationReport:
    """Classify every manifest item and count label agreement.

    Items that cannot be read or parsed are recorded as errored and excluded
    from the accuracy denominator; a manifest with no readable items at all
    is a usage error.
    """
    items: list[ItemResult] = []
    correct = 0
    total = 0
    errored = 0
    for item_path, gold in manifest.items:
        try:
            text = Path(item_path).read_text(encoding="utf-8")
            doc = parse_document(text, source_id=Path(item_path).stem)
            result = classify_document(doc, cfg.lexicon, cfg.rules, lists, agg=agg, tie=tie)
        except (OSError, SisaError) as exc:
            errored += 1
            logger.warning("skipping %s: %s", item_path, exc)
            items.append(ItemResult(str(item_path), gold, None, None, error=str(exc)))
            continue
        total += 1
        if result.label == gold:
            correct += 1
        items.append(ItemResult(str(item_path), gold, result.label, result.so))
    if total == 0:
        raise UsageError(f"manifest {manifest.name!r} has no readable items")
    return EvaluationReport(
        config_id=cfg.config_id,
        manifest_name=manifest.name,
        correct=correct,
        total=total,
        accuracy=correct / total,
        errored=errored,
        items=tuple(items),
    )


@dataclass(frozen=True)
class ImpactTable:
    """Pairwise percentage-point differences between the four configurations:
    the operation effect per lexicon, and the merged-lexicon effect with and
    without operations."""

    o_effect_sl: float
    o_effect_ml: float
    ml_effect_no_ops: float
    ml_effect_ops: float


def _delta_points(a: EvaluationReport, b: EvaluationReport) -> float:
    # Integer cross-multiplication keeps the difference exact up to one
    # correctly-rounded division, so decimal-exact accuracies produce
    # decimal-exact deltas (65.63% - 62.95% is 2.68, not 2.6799999...).
    return (a.correct * b.total - b.correct * a.total) * 100 / (a.total * b.total)


def compare_configs(reports: Iterable[EvaluationReport]) -> ImpactTable:
    """Derive the impact table from the four configuration reports."""
    reports = list(reports)
    by_id = {report.config_id: report for report in reports}
    if len(reports) != 4 or sorted(by_id) != sorted(CONFIG_IDS):
        raise UsageError(
            f"need exactly one report per config {CONFIG_IDS}, got "
            f"{[r.config_id for r in reports]}"
        )
    names = {report.manifest_name for report in reports}
    totals = {report.total for report in reports}
    if len(names) != 1 or len(totals) != 1:
        raise UsageError("reports cover mismatched manifests")
    sl_no, sl_ops = by_id["SL-O"], by_id["SL+O"]
    ml_no, ml_ops = by_id["ML-O"], by_id["ML+O"]
    return ImpactTable(
        o_effect_sl=_delta_points(sl_ops, sl_no),
        o_effect_ml=_delta_points(ml_ops, ml_no),
        ml_effect_no_ops=_delta_points(ml_no, sl_no),
        ml_effect_ops=_delta_points(ml_ops, sl_ops),
    )


def render_report(report: EvaluationReport, verbose: bool = False) -> str:
    """Tab-separated report line(s): config, correct, total, accuracy."""
    lines = [
        f"{report.config_id}\t{report.correct}\t{report.total}\t{report.accuracy:.4f}"
    ]
    if verbose:
        for item in report.items:
            predicted = item.predicted if item.predicted is not None else "error"
            so = format_so(item.so) if item.so is not None else "-"
            lines.append(f"item\t{report.config_id}\t{item.path}\t{item.gold}\t{predicted}\t{so}")
    return "\n".join(lines) + "\n"


def render_impact(impact: ImpactTable) -> str:
    """Tab-separated impact lines, one per pairwise difference."""
    rows = (
        ("o_effect_sl", impact.o_effect_sl),
        ("o_effect_ml", impact.o_effect_ml),
        ("ml_effect_no_ops", impact.ml_effect_no_ops),
        ("ml_effect_ops", impact.ml_effect_ops),
    )
    return "".join(f"impact\t{key}\t{format_so(value)}\n" for key, value in rows)


def summary_dict(
    reports: Sequence[EvaluationReport], impact: ImpactTable | None
) -> dict:
    """JSON-ready structured summary of an evaluation run."""
    return {
        "manifest": reports[0].manifest_name if reports else None,
        "reports": [
            {
                "config_id": report.config_id,
                "correct": report.correct,
                "total": report.total,
                "accuracy": report.accuracy,
                "errored": report.errored,
                "items": [
                    {
                        "path": item.path,
                        "gold": item.gold,
                        "predicted": item.predicted,
                        "so": item.so,
                        "error": item.error,
                    }
                    for item in report.items
                ],
            }
            for report in reports
        ],
        "impact": None
        if impact is None
        else {
            "o_effect_sl": impact.o_effect_sl,
            "o_effect_ml": impact.o_effect_ml,
            "ml_effect_no_ops": impact.ml_effect_no_ops,
            "ml_effect_ops": impact.ml_effect_ops,
        },
    }
