"""Command-line front end.

Subcommands compose the library into reproducible experiments:

  generate   synthetic train/test CSVs plus the scene file
  train      fit a model from a labeled CSV and persist it
  predict    decision values and labels for a CSV of points
  cv         repeated stratified k-fold cross-validation
  sweep      accuracy vs imbalance ratio for several classifiers
  boundary   decision-value grid for a 2-D model (optionally an SVG)

Exit codes: 0 success, 2 flag validation, 1 runtime error. Diagnostics go
to stderr; data only ever goes to files. Every run writes a config_echo
file listing all resolved parameters so it can be reproduced exactly.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import core, evaluation, io, synth
from .errors import KotaroError, NotTwoDimensionalError
from .solver import Pseudoinverse, Ridge

DEFAULT_RATIOS = (0.1, 0.3, 0.5, 1.0)
CLASSIFIER_NAMES = ("kotaro", "fixed", "knn", "majority")


def _echo_path(out: Path, is_dir: bool) -> Path:
    return out / "config_echo.txt" if is_dir else out.with_name(out.name + ".config_echo.txt")


def _write_config_echo(args: argparse.Namespace, out: Path, is_dir: bool) -> None:
    resolved = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    lines = [f"subcommand: {args.subcommand}"]
    lines += [f"{key}: {value}" for key, value in resolved.items()]
    _echo_path(out, is_dir).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _solve_strategy(args: argparse.Namespace):
    if args.solver == "pinv":
        return Pseudoinverse(rcond=args.rcond)
    return Ridge(lam=args.ridge_lambda)


def _default_spheres(dim: int, spheres) -> int:
    if spheres is not None:
        return spheres
    return 2 if dim == 2 else 3


def _ratio(text: str) -> float:
    value = float(text)
    if not (0.0 < value <= 1.0):
        raise argparse.ArgumentTypeError(f"ratio must be in (0, 1], got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


# ---------------------------------------------------------------------------
# subcommand bodies


def _cmd_generate(args: argparse.Namespace) -> None:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    spheres = _default_spheres(args.dim, args.spheres)
    scene = synth.random_scene(args.dim, args.box_side, spheres, args.seed)
    flavor = synth.Flavor.from_string(args.flavor)
    spec = synth.ImbalanceSpec(total=args.total, ratio=args.ratio, flavor=flavor)
    train_ss, test_ss = np.random.SeedSequence(args.seed).spawn(2)
    train_set = synth.generate(scene, spec, np.random.default_rng(train_ss))
    test_set = synth.generate_balanced_test(
        scene, flavor, args.test_per_class, np.random.default_rng(test_ss)
    )
    io.save_scene(scene, out / "scene.txt")
    io.save_csv(train_set, out / "train.csv")
    io.save_csv(test_set, out / "test.csv")
    args.spheres = spheres
    _write_config_echo(args, out, is_dir=True)
    print(f"wrote {out / 'train.csv'}, {out / 'test.csv'}, {out / 'scene.txt'}")


def _cmd_train(args: argparse.Namespace) -> None:
    spec = io.ColumnSpec(label_column=args.label_col, positive_label_value=args.positive)
    dataset, _ = io.load_csv(args.data, spec)
    model = core.fit(
        dataset,
        n=args.n,
        solve_strategy=_solve_strategy(args),
        floor_policy=core.FloorPolicy(relative_floor=args.floor),
    )
    out = Path(args.out_model)
    io.save_model(model, out)
    _write_config_echo(args, out, is_dir=False)
    print(
        f"fit {dataset.n_samples} samples, {dataset.n_features} features; "
        f"residual {model.fit_residual:.3e}, condition {model.condition_estimate:.3e}"
    )


def _cmd_predict(args: argparse.Namespace) -> None:
    model = io.load_model(args.model)
    features, _ = io.load_feature_csv(args.data, drop_columns=(args.label_col,))
    values = core.decision_values(model, features)
    labels = core.labels_from_values(values)
    out = Path(args.out)
    with out.open("w", newline="", encoding="utf-8") as handle:
        handle.write("index,decision_value,predicted_label\n")
        for i, (value, label) in enumerate(zip(values, labels)):
            handle.write(f"{i},{float(value)!r},{int(label)}\n")
    _write_config_echo(args, out, is_dir=False)
    print(f"predicted {len(labels)} points -> {out}")


def _cmd_cv(args: argparse.Namespace) -> None:
    spec = io.ColumnSpec(label_column=args.label_col, positive_label_value=args.positive)
    dataset, _ = io.load_csv(args.data, spec)
    config = evaluation.make_config(
        args.classifier, n_neighbors=args.n, knn_k=args.knn_k, strategy=_solve_strategy(args)
    )
    report = evaluation.cross_validate(
        dataset,
        config,
        k=args.k,
        repeats=args.repeats,
        seed=args.seed,
        allow_small_minority=args.allow_small_minority,
        normalize=args.normalize,
    )
    out = Path(args.out)
    io.save_report(report, out)
    _write_config_echo(args, out, is_dir=False)
    for metric, (mean, stderr) in report.aggregate.items():
        print(f"{config.name} {metric}: {mean:.4f} +/- {stderr:.4f}")


def _cmd_sweep(args: argparse.Namespace) -> None:
    spheres = _default_spheres(args.dim, args.spheres)
    scene = synth.random_scene(args.dim, args.box_side, spheres, args.seed)
    flavor = synth.Flavor.from_string(args.flavor)
    configs = [
        evaluation.make_config(name, n_neighbors=args.n, knn_k=args.knn_k)
        for name in args.classifiers
    ]
    reports = evaluation.imbalance_sweep(
        scene,
        flavor,
        ratios=args.ratios,
        total=args.total,
        per_class_test=args.test_per_class,
        trials=args.trials,
        seed=args.seed,
        configs=configs,
    )
    out = Path(args.out)
    ordered = [reports[(cfg.name, float(r))] for r in args.ratios for cfg in configs]
    io.save_report(ordered, out)
    if args.svg:
        _sweep_svg(reports, args.ratios, [cfg.name for cfg in configs], Path(args.svg))
    args.spheres = spheres
    _write_config_echo(args, out, is_dir=False)
    for r in args.ratios:
        parts = []
        for cfg in configs:
            mean, stderr = reports[(cfg.name, float(r))].aggregate["accuracy"]
            parts.append(f"{cfg.name}={mean:.3f}+/-{stderr:.3f}")
        print(f"ratio {r}: " + "  ".join(parts))


def _cmd_boundary(args: argparse.Namespace) -> None:
    model = io.load_model(args.model)
    if model.n_features != 2:
        raise NotTwoDimensionalError(
            f"boundary grids need a 2-D model, this one has {model.n_features} features"
        )
    xmin, xmax, ymin, ymax = args.bounds
    xs = np.linspace(xmin, xmax, args.grid_res)
    ys = np.linspace(ymin, ymax, args.grid_res)
    grid = np.array([[x, y] for y in ys for x in xs])
    values = core.decision_values(model, grid)
    out = Path(args.out)
    with out.open("w", newline="", encoding="utf-8") as handle:
        handle.write("x,y,decision_value\n")
        for (x, y), value in zip(grid, values):
            handle.write(f"{float(x)!r},{float(y)!r},{float(value)!r}\n")
    if args.svg:
        signs = (values > 0.0).reshape(args.grid_res, args.grid_res)
        _boundary_svg(xs, ys, signs, model, args.bounds, Path(args.svg))
    _write_config_echo(args, out, is_dir=False)
    print(f"wrote {args.grid_res * args.grid_res} grid values -> {out}")


# ---------------------------------------------------------------------------
# SVG emitters (plot-ready sugar; the CSVs are the contract)

_PALETTE = {"kotaro": "#d62728", "fixed": "#1f77b4", "knn": "#2ca02c", "majority": "#7f7f7f"}


def _sweep_svg(reports, ratios, names, path: Path) -> None:
    width, height, margin = 640, 440, 60

    def sx(r):
        return margin + (width - 2 * margin) * r

    def sy(a):
        return height - margin - (height - 2 * margin) * a

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>',
    ]
    for tick in (0.0, 0.25, 0.5, 0.75, 1.0):
        parts.append(
            f'<text x="{sx(tick):.1f}" y="{height - margin + 18}" font-size="11" text-anchor="middle">{tick}</text>'
        )
        parts.append(
            f'<text x="{margin - 8}" y="{sy(tick):.1f}" font-size="11" text-anchor="end">{tick}</text>'
        )
    parts.append(
        f'<text x="{width / 2}" y="{height - 12}" font-size="13" text-anchor="middle">imbalance ratio (minority / majority)</text>'
    )
    parts.append(
        f'<text x="16" y="{height / 2}" font-size="13" text-anchor="middle" transform="rotate(-90 16 {height / 2})">accuracy</text>'
    )
    for j, name in enumerate(names):
        color = _PALETTE.get(name, "#000000")
        points = []
        for r in ratios:
            mean, stderr = reports[(name, float(r))].aggregate["accuracy"]
            x, y = sx(r), sy(mean)
            points.append(f"{x:.1f},{y:.1f}")
            parts.append(
                f'<line x1="{x:.1f}" y1="{sy(mean - stderr):.1f}" x2="{x:.1f}" y2="{sy(mean + stderr):.1f}" stroke="{color}"/>'
            )
            parts.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="3" fill="{color}"/>')
        parts.append(
            f'<polyline points="{" ".join(points)}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{width - margin + 6}" y="{margin + 14 * j}" font-size="12" fill="{color}">{name}</text>'
        )
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n", encoding="utf-8")


def _boundary_svg(xs, ys, signs, model, bounds, path: Path) -> None:
    """Positive-sign region as row run-length rectangles plus training points."""
    xmin, xmax, ymin, ymax = bounds
    size = 560
    margin = 20

    def sx(x):
        return margin + (size - 2 * margin) * (x - xmin) / (xmax - xmin)

    def sy(y):
        return size - margin - (size - 2 * margin) * (y - ymin) / (ymax - ymin)

    cell_w = (sx(xs[1]) - sx(xs[0])) if len(xs) > 1 else size
    cell_h = (sy(ys[0]) - sy(ys[1])) if len(ys) > 1 else size
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">',
        f'<rect width="{size}" height="{size}" fill="#eef3fa"/>',
    ]
    for iy, row in enumerate(signs):
        run_start = None
        for ix, positive in enumerate(list(row) + [False]):
            if positive and run_start is None:
                run_start = ix
            elif not positive and run_start is not None:
                x0 = sx(xs[run_start]) - cell_w / 2
                w = (ix - run_start) * cell_w
                y0 = sy(ys[iy]) - cell_h / 2
                parts.append(
                    f'<rect x="{x0:.1f}" y="{y0:.1f}" width="{w:.1f}" height="{cell_h + 0.5:.1f}" fill="#fbe8e8"/>'
                )
                run_start = None
    for point, label in zip(model.train_features, model.train_labels):
        color = "#d62728" if label == 1 else "#1f77b4"
        parts.append(
            f'<circle cx="{sx(point[0]):.1f}" cy="{sy(point[1]):.1f}" r="3" fill="{color}" stroke="black" stroke-width="0.4"/>'
        )
    parts.append(
        f'<rect x="{margin}" y="{margin}" width="{size - 2 * margin}" height="{size - 2 * margin}" fill="none" stroke="black"/>'
    )
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kotaro",
        description="Density-adaptive kernel classifier for imbalanced binary data.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub_kwargs = {"formatter_class": argparse.ArgumentDefaultsHelpFormatter}

    p = sub.add_parser("generate", **sub_kwargs, help="write synthetic train/test CSVs and a scene file")
    p.add_argument("--dim", type=_positive_int, required=True, help="feature-space dimension")
    p.add_argument("--spheres", type=_positive_int, default=None,
                   help="default: 2 in 2-D, 3 otherwise")
    p.add_argument("--total", type=_positive_int, default=300, help="training sample count")
    p.add_argument("--ratio", type=_ratio, required=True, help="minority/majority in (0, 1]")
    p.add_argument("--flavor", choices=("ei", "di"), required=True,
                   help="which region holds the minority class")
    p.add_argument("--test-per-class", type=_positive_int, default=50,
                   help="balanced test points per class")
    p.add_argument("--box-side", type=float, default=5.0, help="side of the bounding box")
    p.add_argument("--seed", type=int, default=0, help="seed for scene and draws")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("train", **sub_kwargs, help="fit a model from a labeled CSV")
    p.add_argument("--data", required=True, help="labeled CSV")
    p.add_argument("--label-col", default="label", help="name of the label column")
    p.add_argument("--positive", default="1", help="raw label value mapped to +1")
    p.add_argument("--n", type=_positive_int, default=core.DEFAULT_N_NEIGHBORS,
                   help="neighbor count for the per-sample bandwidth")
    p.add_argument("--solver", choices=("pinv", "ridge"), default="pinv",
                   help="weight solve strategy")
    p.add_argument("--rcond", type=float, default=1e-10,
                   help="relative singular-value cutoff for pinv")
    p.add_argument("--ridge-lambda", type=float, default=1e-6, help="ridge penalty")
    p.add_argument("--floor", type=float, default=1e-8,
                   help="relative floor for zero neighbor distances")
    p.add_argument("--out-model", required=True, help="model file to write")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("predict", **sub_kwargs, help="decision values and labels for a CSV of points")
    p.add_argument("--model", required=True, help="model file from `kotaro train`")
    p.add_argument("--data", required=True, help="CSV of points")
    p.add_argument("--label-col", default="label", help="column to ignore if present")
    p.add_argument("--out", required=True, help="prediction CSV to write")
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("cv", **sub_kwargs, help="repeated stratified k-fold cross-validation")
    p.add_argument("--data", required=True, help="labeled CSV")
    p.add_argument("--label-col", default="label", help="name of the label column")
    p.add_argument("--positive", default="1", help="raw label value mapped to +1")
    p.add_argument("--k", type=_positive_int, default=5, help="fold count")
    p.add_argument("--repeats", type=_positive_int, default=1, help="CV repetitions")
    p.add_argument("--classifier", choices=CLASSIFIER_NAMES, default="kotaro",
                   help="classifier to evaluate")
    p.add_argument("--n", type=_positive_int, default=core.DEFAULT_N_NEIGHBORS,
                   help="neighbor count for kotaro/fixed")
    p.add_argument("--knn-k", type=_positive_int, default=5, help="k for the knn baseline")
    p.add_argument("--solver", choices=("pinv", "ridge"), default="pinv",
                   help="weight solve strategy")
    p.add_argument("--rcond", type=float, default=1e-10,
                   help="relative singular-value cutoff for pinv")
    p.add_argument("--ridge-lambda", type=float, default=1e-6, help="ridge penalty")
    p.add_argument("--normalize", action="store_true", help="z-score per training split")
    p.add_argument("--allow-small-minority", action="store_true",
                   help="permit folds without minority samples")
    p.add_argument("--seed", type=int, default=0, help="fold-assignment seed")
    p.add_argument("--out", required=True, help="results CSV to write")
    p.set_defaults(func=_cmd_cv)

    p = sub.add_parser("sweep", **sub_kwargs, help="accuracy vs imbalance ratio on synthetic scenes")
    p.add_argument("--dim", type=_positive_int, required=True, help="feature-space dimension")
    p.add_argument("--flavor", choices=("ei", "di"), required=True,
                   help="which region holds the minority class")
    p.add_argument("--ratios", type=_ratio, nargs="+", default=list(DEFAULT_RATIOS),
                   help="imbalance ratios to sweep")
    p.add_argument("--trials", type=_positive_int, default=20, help="trials per ratio")
    p.add_argument("--total", type=_positive_int, default=300,
                   help="training sample count per trial")
    p.add_argument("--test-per-class", type=_positive_int, default=50,
                   help="balanced test points per class")
    p.add_argument("--classifiers", nargs="+", choices=CLASSIFIER_NAMES,
                   default=list(CLASSIFIER_NAMES), help="classifiers to compare")
    p.add_argument("--spheres", type=_positive_int, default=None,
                   help="default: 2 in 2-D, 3 otherwise")
    p.add_argument("--box-side", type=float, default=5.0, help="side of the bounding box")
    p.add_argument("--n", type=_positive_int, default=core.DEFAULT_N_NEIGHBORS,
                   help="neighbor count for kotaro/fixed")
    p.add_argument("--knn-k", type=_positive_int, default=5, help="k for the knn baseline")
    p.add_argument("--seed", type=int, default=0, help="seed for scene, draws, and trials")
    p.add_argument("--out", required=True, help="results CSV to write")
    p.add_argument("--svg", default=None, help="optional accuracy-curve SVG")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("boundary", **sub_kwargs, help="decision-value grid for a 2-D model")
    p.add_argument("--model", required=True, help="2-D model file")
    p.add_argument("--grid-res", type=_positive_int, default=200, help="grid points per axis")
    p.add_argument("--bounds", type=float, nargs=4, default=[0.0, 5.0, 0.0, 5.0],
                   metavar=("XMIN", "XMAX", "YMIN", "YMAX"), help="grid rectangle")
    p.add_argument("--out", required=True, help="grid CSV to write")
    p.add_argument("--svg", default=None, help="optional sign-region SVG")
    p.set_defaults(func=_cmd_boundary)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (KotaroError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
