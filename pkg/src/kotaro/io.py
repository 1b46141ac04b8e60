"""On-disk formats: dataset CSV, scene file, model file, results CSV.

All floats are written with Python's repr, the shortest decimal string that
round-trips to the same binary value, so save/load cycles are bit-exact.
Every structured format starts with a `format_version:` line and readers
refuse unknown versions instead of guessing.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .core import AdaptiveKernelModel, Dataset, FloorPolicy, NeighborScales
from .errors import (
    FormatVersionError,
    MultipleNegativeValuesError,
    NonNumericFeatureError,
    ParseError,
)
from .solver import parse_strategy, strategy_label
from .synth import HypersphereScene

if TYPE_CHECKING:  # pragma: no cover
    from .evaluation import ExperimentReport

FORMAT_VERSION = 1
STD_FLOOR = 1e-12


def _fmt(value: float) -> str:
    return repr(float(value))


def _fmt_vector(values: np.ndarray) -> str:
    return " ".join(_fmt(v) for v in values)


# ---------------------------------------------------------------------------
# dataset CSV


@dataclass(frozen=True)
class ColumnSpec:
    """How to read a labeled CSV: which column is the label, which raw value
    maps to +1 (the minority class), and whether to z-score the features."""

    label_column: str
    positive_label_value: str
    feature_columns: Optional[Sequence[str]] = None
    normalize: str = "none"  # "none" or "zscore"

    def __post_init__(self):
        if self.normalize not in ("none", "zscore"):
            raise ValueError(f"normalize must be 'none' or 'zscore', got {self.normalize!r}")


@dataclass(frozen=True)
class NormalizationParams:
    """Per-feature mean and stddev from a training set; stddev floored so
    constant columns do not divide by zero."""

    mean: np.ndarray
    std: np.ndarray


def zscore_params(features: np.ndarray) -> NormalizationParams:
    x = np.asarray(features, dtype=float)
    return NormalizationParams(
        mean=x.mean(axis=0),
        std=np.maximum(x.std(axis=0), STD_FLOOR),
    )


def apply_normalization(features: np.ndarray, params: NormalizationParams) -> np.ndarray:
    return (np.asarray(features, dtype=float) - params.mean) / params.std


def load_csv(path, spec: ColumnSpec) -> tuple[Dataset, Optional[NormalizationParams]]:
    """Read a labeled dataset. The label column must hold exactly two distinct
    values: spec.positive_label_value maps to +1, the single other value to -1.

    With normalize='zscore' the returned features are standardized using
    full-dataset statistics (appropriate for standalone loading only; the CV
    driver refits normalization per training split).
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file, header row required") from None
        if spec.label_column not in header:
            raise ParseError(f"{path}: label column {spec.label_column!r} not in header {header}")
        if spec.feature_columns is not None:
            missing = [c for c in spec.feature_columns if c not in header]
            if missing:
                raise ParseError(f"{path}: feature columns not in header: {missing}")
            feature_cols = list(spec.feature_columns)
        else:
            feature_cols = [c for c in header if c != spec.label_column]
        if not feature_cols:
            raise ParseError(f"{path}: no feature columns")
        col_idx = [header.index(c) for c in feature_cols]
        label_idx = header.index(spec.label_column)

        rows = []
        raw_labels = []
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ParseError(f"{path}:{line_no}: expected {len(header)} fields, got {len(row)}")
            values = []
            for name, j in zip(feature_cols, col_idx):
                try:
                    values.append(float(row[j]))
                except ValueError:
                    raise NonNumericFeatureError(
                        f"{path}:{line_no}: column {name!r}: not a number: {row[j]!r}"
                    ) from None
            rows.append(values)
            raw_labels.append(row[label_idx].strip())

    if not rows:
        raise ParseError(f"{path}: no data rows")
    negatives = sorted(set(raw_labels) - {spec.positive_label_value})
    if len(negatives) > 1:
        raise MultipleNegativeValuesError(
            f"{path}: label column has {1 + len(negatives)} distinct values "
            f"(positive {spec.positive_label_value!r} plus {negatives}); expected two total"
        )
    if spec.positive_label_value not in raw_labels:
        raise ParseError(
            f"{path}: positive label value {spec.positive_label_value!r} never occurs"
        )

    features = np.asarray(rows, dtype=float)
    labels = np.where(np.asarray(raw_labels) == spec.positive_label_value, 1, -1)
    params = None
    if spec.normalize == "zscore":
        params = zscore_params(features)
        features = apply_normalization(features, params)
    return Dataset(features=features, labels=labels, feature_names=feature_cols), params


def save_csv(dataset: Dataset, path) -> None:
    """Write a dataset with a 'label' column holding 1 / -1."""
    names = dataset.feature_names or [f"x{j}" for j in range(dataset.n_features)]
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(list(names) + ["label"])
        for row, label in zip(dataset.features, dataset.labels):
            writer.writerow([_fmt(v) for v in row] + [str(int(label))])


def load_feature_csv(path, drop_columns: Sequence[str] = ()) -> tuple[np.ndarray, list[str]]:
    """Read a plain numeric CSV, skipping any listed columns (e.g. a label)."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file, header row required") from None
        keep = [(name, j) for j, name in enumerate(header) if name not in set(drop_columns)]
        if not keep:
            raise ParseError(f"{path}: no feature columns after dropping {list(drop_columns)}")
        rows = []
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ParseError(f"{path}:{line_no}: expected {len(header)} fields, got {len(row)}")
            values = []
            for name, j in keep:
                try:
                    values.append(float(row[j]))
                except ValueError:
                    raise NonNumericFeatureError(
                        f"{path}:{line_no}: column {name!r}: not a number: {row[j]!r}"
                    ) from None
            rows.append(values)
    if not rows:
        raise ParseError(f"{path}: no data rows")
    return np.asarray(rows, dtype=float), [name for name, _ in keep]


# ---------------------------------------------------------------------------
# key-value block helpers (model and scene files)


def _read_kv_block(lines: list[str], path, expected_kind: str) -> dict[str, str]:
    """Parse leading 'key: value' lines; validates version and kind."""
    kv: dict[str, str] = {}
    for line in lines:
        if ":" not in line:
            break
        key, _, value = line.partition(":")
        kv[key.strip()] = value.strip()
    version = kv.get("format_version")
    if version is None:
        raise FormatVersionError(f"{path}: missing format_version line")
    if version != str(FORMAT_VERSION):
        raise FormatVersionError(f"{path}: unsupported format_version {version!r}")
    if kv.get("kind") != expected_kind:
        raise ParseError(f"{path}: expected kind {expected_kind!r}, got {kv.get('kind')!r}")
    return kv


def _require(kv: Mapping[str, str], key: str, path) -> str:
    if key not in kv:
        raise ParseError(f"{path}: missing required key {key!r}")
    return kv[key]


def _parse_vector(text: str, expected_len: int, key: str, path, dtype=float) -> np.ndarray:
    parts = text.split()
    if len(parts) != expected_len:
        raise ParseError(f"{path}: key {key!r} has {len(parts)} entries, expected {expected_len}")
    try:
        return np.array([dtype(p) for p in parts])
    except ValueError:
        raise ParseError(f"{path}: key {key!r} holds a non-numeric entry") from None


# ---------------------------------------------------------------------------
# model persistence


def save_model(model: AdaptiveKernelModel, path) -> None:
    """Versioned plain-text model file; inspectable and diff-able."""
    n, m = model.train_features.shape
    lines = [
        f"format_version: {FORMAT_VERSION}",
        "kind: adaptive_kernel_model",
        f"dim: {m}",
        f"n_train: {n}",
        f"n_neighbors: {model.scales.n_neighbors}",
        f"solve_strategy: {strategy_label(model.solve_strategy)}",
        f"floor_policy: {_fmt(model.floor_policy.relative_floor)}",
        f"fit_residual: {_fmt(model.fit_residual)}",
        f"condition_estimate: {_fmt(model.condition_estimate)}",
        "labels: " + " ".join(str(int(v)) for v in model.train_labels),
        "d: " + _fmt_vector(model.scales.d),
        "gamma: " + _fmt_vector(model.scales.gamma),
        "floor_applied: " + " ".join("1" if v else "0" for v in model.scales.floor_applied),
        "weights: " + _fmt_vector(model.weights),
        "features:",
    ]
    lines += [_fmt_vector(row) for row in model.train_features]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path) -> AdaptiveKernelModel:
    """Parse a model file written by :func:`save_model`.

    The whole file is validated before any object is built, so a truncated
    or corrupted file raises and never yields a partial model.
    """
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    kv = _read_kv_block(lines, path, "adaptive_kernel_model")
    try:
        m = int(_require(kv, "dim", path))
        n = int(_require(kv, "n_train", path))
        n_neighbors = int(_require(kv, "n_neighbors", path))
    except ValueError:
        raise ParseError(f"{path}: dim, n_train, and n_neighbors must be integers") from None
    strategy = parse_strategy(_require(kv, "solve_strategy", path))
    floor_policy = FloorPolicy(relative_floor=float(_require(kv, "floor_policy", path)))
    labels = _parse_vector(_require(kv, "labels", path), n, "labels", path, dtype=int)
    d = _parse_vector(_require(kv, "d", path), n, "d", path)
    gamma = _parse_vector(_require(kv, "gamma", path), n, "gamma", path)
    floor_applied = _parse_vector(_require(kv, "floor_applied", path), n, "floor_applied", path, dtype=int)
    weights = _parse_vector(_require(kv, "weights", path), n, "weights", path)

    try:
        marker = lines.index("features:")
    except ValueError:
        raise ParseError(f"{path}: missing features: block") from None
    feature_lines = [ln for ln in lines[marker + 1 :] if ln.strip()]
    if len(feature_lines) != n:
        raise ParseError(f"{path}: expected {n} feature rows, found {len(feature_lines)}")
    features = np.vstack([
        _parse_vector(ln, m, f"features row {i}", path) for i, ln in enumerate(feature_lines)
    ])

    scales = NeighborScales(
        d=d,
        gamma=gamma,
        n_neighbors=n_neighbors,
        floor_applied=floor_applied.astype(bool),
    )
    return AdaptiveKernelModel(
        train_features=features,
        train_labels=labels.astype(np.int64),
        scales=scales,
        weights=weights,
        solve_strategy=strategy,
        floor_policy=floor_policy,
        fit_residual=float(_require(kv, "fit_residual", path)),
        condition_estimate=float(_require(kv, "condition_estimate", path)),
    )


# ---------------------------------------------------------------------------
# scene persistence


def save_scene(scene: HypersphereScene, path) -> None:
    lines = [
        f"format_version: {FORMAT_VERSION}",
        "kind: hypersphere_scene",
        f"dim: {scene.dim}",
        f"box_side: {_fmt(scene.box_side)}",
        f"seed: {scene.seed}",
        f"spheres: {scene.sphere_count}",
    ]
    for center, radius in zip(scene.centers, scene.radii):
        lines.append(_fmt_vector(center) + " " + _fmt(radius))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_scene(path) -> HypersphereScene:
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    kv = _read_kv_block(lines, path, "hypersphere_scene")
    try:
        dim = int(_require(kv, "dim", path))
        count = int(_require(kv, "spheres", path))
        seed = int(_require(kv, "seed", path))
    except ValueError:
        raise ParseError(f"{path}: dim, spheres, and seed must be integers") from None
    box_side = float(_require(kv, "box_side", path))
    sphere_lines = [ln for ln in lines if ":" not in ln and ln.strip()]
    if len(sphere_lines) != count:
        raise ParseError(f"{path}: expected {count} sphere lines, found {len(sphere_lines)}")
    rows = [_parse_vector(ln, dim + 1, f"sphere {i}", path) for i, ln in enumerate(sphere_lines)]
    data = np.vstack(rows)
    return HypersphereScene(
        dim=dim,
        box_side=box_side,
        centers=data[:, :dim],
        radii=data[:, dim],
        seed=seed,
    )


# ---------------------------------------------------------------------------
# results CSV


def save_report(reports: Union["ExperimentReport", Iterable["ExperimentReport"]], path) -> None:
    """Long-format results CSV.

    Columns: trial, classifier, ratio_or_fold, metric, value, stderr.
    Per-trial rows leave stderr empty; each metric gets one aggregate row
    with trial=AGG carrying the mean and the standard error over trials.
    The ratio_or_fold cell of an aggregate row repeats the shared subset
    when all trials agree on one (sweeps) and says 'all' otherwise (CV).
    """
    if hasattr(reports, "trials"):
        report_list = [reports]
    else:
        report_list = list(reports)
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["trial", "classifier", "ratio_or_fold", "metric", "value", "stderr"])
        for report in report_list:
            for t in report.trials:
                for metric, value in t.values.items():
                    writer.writerow([t.trial, report.classifier, t.subset, metric, _fmt(value), ""])
            subsets = {t.subset for t in report.trials}
            agg_subset = subsets.pop() if len(subsets) == 1 else "all"
            for metric, (mean, stderr) in report.aggregate.items():
                writer.writerow(["AGG", report.classifier, agg_subset, metric, _fmt(mean), _fmt(stderr)])
