"""Command-line interface: train, evaluate, sweep, serve.

The evaluation protocol is reproducible end to end: every command is
deterministic given its inputs and --seed. Exit codes: 0 success, 2 data
error, 3 model/data compatibility error, 4 runtime error.

Typical session:

    sympredict sweep --out out            # pick the neighbor count
    sympredict train --out out            # weights, summary, model.json
    sympredict evaluate --model out/model.json --out out
    sympredict serve --model out/model.json
"""

from __future__ import annotations

import argparse
import importlib.resources
import os
import sys

import numpy as np

from .dataset import LabeledDataset, SplitSpec, binarize, parse_raw_csv, split
from .ensemble import (
    MEMBER_NAMES,
    EnsembleModel,
    MemberParams,
    MemberWeight,
    WeightReport,
    ensemble_predict_batch,
    evaluate_members,
    fuse_posteriors,
    knn_sweep,
    train_members,
)
from .errors import ConfigError, ParseError, SympredictError
from .evaluation import confusion_matrix, precision_recall
from .classifiers import KnnModel, NbModel, RfModel
from .classifiers.knn import knn_predict_batch
from .classifiers.naive_bayes import nb_predict_batch
from .classifiers.forest import rf_predict_batch
from .recommender import load_table_file
from .records import RecordStore
from .serialization import load_model, load_training_info, save_model

EXIT_OK = 0
EXIT_DATA = 2
EXIT_COMPAT = 3
EXIT_RUNTIME = 4

DEFAULT_KNN_N = 5  # used when no sweep result is available


def _data_file(name: str) -> str:
    return str(importlib.resources.files("sympredict").joinpath("data", name))


def bundled_dataset_path() -> str:
    return _data_file("symptom_cases.csv")


def bundled_recommendations_path() -> str:
    return _data_file("recommendations.json")


def bundled_schemes_path() -> str:
    return _data_file("schemes.json")


def _load_dataset(path: str) -> LabeledDataset:
    with open(path, encoding="utf-8") as fh:
        return binarize(parse_raw_csv(fh.read()))


def _env(name: str, default):
    return os.environ.get(f"SYMPREDICT_{name}", default)


def _resolve_knn_n(args) -> tuple[int, str]:
    if args.knn_n is not None:
        return args.knn_n, "--knn-n flag"
    sweep_csv = os.path.join(args.out, "sweep.csv")
    if os.path.exists(sweep_csv):
        with open(sweep_csv, encoding="utf-8") as fh:
            lines = fh.read().strip().splitlines()[1:]
        entries = [(int(n), float(m)) for n, m in (line.split(",") for line in lines)]
        best_n = entries[int(np.argmax([m for _, m in entries]))][0]
        return best_n, f"best n from {sweep_csv}"
    return DEFAULT_KNN_N, "built-in default (run `sympredict sweep` first to tune)"


def _member_params(args, knn_n: int) -> MemberParams:
    return MemberParams(
        knn_n=knn_n,
        nb_smoothing=args.nb_smoothing,
        rf_trees=args.rf_trees,
        rf_max_features=args.rf_max_features,
    )


def _mean_metrics(posteriors_by_run, y_true_by_run, n_classes) -> dict:
    """Mean accuracy / macro precision / macro recall over evaluation runs."""
    accs, precs, recs = [], [], []
    for probs, y_true in zip(posteriors_by_run, y_true_by_run):
        pred = np.argmax(probs, axis=1)
        report = precision_recall(confusion_matrix(y_true, pred, n_classes))
        accs.append(report.accuracy)
        precs.append(report.macro_precision)
        recs.append(report.macro_recall)
    return {
        "accuracy": float(np.mean(accs)),
        "precision": float(np.mean(precs)),
        "recall": float(np.mean(recs)),
    }


def cmd_train(args) -> int:
    try:
        ds = _load_dataset(args.data)
    except (OSError, ParseError) as exc:
        print(f"error: cannot load dataset: {exc}", file=sys.stderr)
        return EXIT_DATA

    os.makedirs(args.out, exist_ok=True)
    knn_n, knn_n_source = _resolve_knn_n(args)
    params = _member_params(args, knn_n)
    print(f"dataset: {ds.n_rows} rows, {ds.n_features} symptoms, {ds.n_classes} diseases")
    print(f"neighbor count: {knn_n} ({knn_n_source})")
    print(f"evaluating members over alpha={args.alpha} stratified holdout runs ...")

    try:
        samples, traces = evaluate_members(
            ds, args.alpha, args.seed, params, args.test_fraction, collect_traces=True
        )
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA

    weights = {name: float(np.mean(vals)) for name, vals in samples.items()}
    report = WeightReport(
        members={
            name: MemberWeight(
                samples=vals, mean=weights[name], std=float(np.std(vals))
            )
            for name, vals in samples.items()
        },
        alpha=args.alpha,
        seed=args.seed,
    )

    # score the fixed-weight fusion on the same runs, reusing cached posteriors
    fused_by_run = [fuse_posteriors(t.posteriors, weights) for t in traces]
    y_by_run = [t.y_true for t in traces]
    summary = {
        name: _mean_metrics([t.posteriors[name] for t in traces], y_by_run, ds.n_classes)
        for name in MEMBER_NAMES
    }
    summary["ensemble"] = _mean_metrics(fused_by_run, y_by_run, ds.n_classes)

    print(f"\n{'classifier':<16}{'accuracy':>10}{'precision':>11}{'recall':>9}")
    for name in ("random_forest", "naive_bayes", "knn", "ensemble"):
        m = summary[name]
        print(
            f"{name:<16}{100 * m['accuracy']:>10.2f}{100 * m['precision']:>11.2f}"
            f"{100 * m['recall']:>9.2f}"
        )

    # train the published model on a fresh holdout split at the base seed
    train_part, _ = split(
        ds, SplitSpec(test_fraction=args.test_fraction, seed=args.seed)
    )
    knn, nb, rf = train_members(train_part, params, args.seed)
    model = EnsembleModel(knn=knn, nb=nb, rf=rf, weights=weights)
    training_info = {
        "data": os.path.abspath(args.data),
        "seed": args.seed,
        "test_fraction": args.test_fraction,
        "alpha": args.alpha,
        "knn_n": knn_n,
        "rf_trees": args.rf_trees,
        "rf_max_features": rf.max_features,
        "nb_smoothing": args.nb_smoothing,
        "summary": summary,
    }

    model_path = os.path.join(args.out, "model.json")
    save_model(model, model_path, training_info)
    with open(os.path.join(args.out, "weights.csv"), "w", encoding="utf-8") as fh:
        fh.write(report.to_csv())
    with open(os.path.join(args.out, "weights.json"), "w", encoding="utf-8") as fh:
        fh.write(report.to_json())
    print(f"\nwrote {model_path}, weights.csv, weights.json")
    return EXIT_OK


def _predict_with(model, features: np.ndarray) -> np.ndarray:
    if isinstance(model, EnsembleModel):
        return ensemble_predict_batch(model, features)
    if isinstance(model, KnnModel):
        return knn_predict_batch(model, features)
    if isinstance(model, NbModel):
        return nb_predict_batch(model, features)
    if isinstance(model, RfModel):
        return rf_predict_batch(model, features)
    raise ConfigError(f"cannot predict with {type(model).__name__}")


def cmd_evaluate(args) -> int:
    try:
        model = load_model(args.model)
        info = load_training_info(args.model)
    except (OSError, SympredictError) as exc:
        print(f"error: cannot load model: {exc}", file=sys.stderr)
        return EXIT_DATA
    try:
        ds = _load_dataset(args.data)
    except (OSError, ParseError) as exc:
        print(f"error: cannot load dataset: {exc}", file=sys.stderr)
        return EXIT_DATA

    if tuple(model.vocabulary.symptoms) != tuple(ds.vocabulary.symptoms):
        print(
            "error: model and dataset vocabularies differ; "
            "evaluate against the data the model was built for",
            file=sys.stderr,
        )
        return EXIT_COMPAT
    if tuple(model.class_names) != tuple(ds.class_names):
        print("error: model and dataset class lists differ", file=sys.stderr)
        return EXIT_COMPAT

    seed = args.seed if args.seed is not None else int(info.get("seed", 0))
    test_fraction = (
        args.test_fraction
        if args.test_fraction is not None
        else float(info.get("test_fraction", 0.2))
    )
    if args.split == "all":
        part = ds
    else:
        train_part, test_part = split(
            ds, SplitSpec(test_fraction=test_fraction, seed=seed)
        )
        part = test_part if args.split == "test" else train_part

    probs = _predict_with(model, part.features)
    pred = np.argmax(probs, axis=1)
    cm = confusion_matrix(part.labels, pred, ds.n_classes, ds.class_names)
    report = precision_recall(cm)

    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, "confusion.csv"), "w", encoding="utf-8") as fh:
        fh.write(cm.to_csv())
    with open(os.path.join(args.out, "metrics.json"), "w", encoding="utf-8") as fh:
        fh.write(report.to_json())
    print(
        f"evaluated {part.n_rows} rows ({args.split} split): "
        f"accuracy {100 * report.accuracy:.2f}, "
        f"macro precision {100 * report.macro_precision:.2f}, "
        f"macro recall {100 * report.macro_recall:.2f}"
    )
    print(f"wrote {args.out}/confusion.csv, {args.out}/metrics.json")
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        ds = _load_dataset(args.data)
    except (OSError, ParseError) as exc:
        print(f"error: cannot load dataset: {exc}", file=sys.stderr)
        return EXIT_DATA
    try:
        result = knn_sweep(
            ds,
            n_range=(args.n_min, args.n_max),
            alpha=args.alpha,
            seed=args.seed,
            test_fraction=args.test_fraction,
        )
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA

    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, "sweep.csv"), "w", encoding="utf-8") as fh:
        fh.write(result.to_csv())
    with open(os.path.join(args.out, "sweep.json"), "w", encoding="utf-8") as fh:
        fh.write(result.to_json())
    for n, mean in result.entries:
        print(f"n={n:<3d} mean score {100 * mean:.2f}")
    print(f"best n: {result.best_n}")
    print(f"wrote {args.out}/sweep.csv, {args.out}/sweep.json")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    if not os.path.exists(args.model):
        print(f"error: model file not found: {args.model}", file=sys.stderr)
        return EXIT_RUNTIME
    try:
        model = load_model(args.model)
        if not isinstance(model, EnsembleModel):
            print("error: serve requires an ensemble model file", file=sys.stderr)
            return EXIT_RUNTIME
        recommendations = load_table_file(args.recommendations)
        store = RecordStore(journal_path=args.journal)
    except SympredictError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME

    app = create_app(
        model=model,
        store=store,
        recommendations=recommendations,
        schemes_path=args.schemes,
        cors_origins=[o.strip() for o in args.cors_origin.split(",")],
    )
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except (OSError, SystemExit) as exc:
        print(f"error: server failed to start: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sympredict", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--data", default=_env("DATA", bundled_dataset_path()))
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--test-fraction", type=float, default=0.2)
        p.add_argument("--out", default=_env("OUT", "out"))

    p_train = sub.add_parser("train", help="compute weights, train and save the ensemble")
    common(p_train)
    p_train.add_argument("--alpha", type=int, default=50,
                         help="number of holdout evaluation runs per member")
    p_train.add_argument("--knn-n", type=int, default=None,
                         help="neighbor count; default: sweep result, else 5")
    p_train.add_argument("--rf-trees", type=int, default=100)
    p_train.add_argument("--rf-max-features", type=int, default=None)
    p_train.add_argument("--nb-smoothing", type=float, default=1.0)
    p_train.set_defaults(func=cmd_train)

    p_eval = sub.add_parser("evaluate", help="confusion matrix and metrics for a saved model")
    p_eval.add_argument("--model", default=_env("MODEL", "out/model.json"))
    p_eval.add_argument("--data", default=_env("DATA", bundled_dataset_path()))
    p_eval.add_argument("--seed", type=int, default=None,
                        help="split seed; default: the model's training seed")
    p_eval.add_argument("--test-fraction", type=float, default=None)
    p_eval.add_argument("--split", choices=("test", "train", "all"), default="test")
    p_eval.add_argument("--out", default=_env("OUT", "out"))
    p_eval.set_defaults(func=cmd_evaluate)

    p_sweep = sub.add_parser("sweep", help="score neighbor counts over repeated holdouts")
    common(p_sweep)
    p_sweep.add_argument("--alpha", type=int, default=50)
    p_sweep.add_argument("--n-min", type=int, default=1)
    p_sweep.add_argument("--n-max", type=int, default=15)
    p_sweep.set_defaults(func=cmd_sweep)

    p_serve = sub.add_parser("serve", help="run the diagnostic HTTP service")
    p_serve.add_argument("--model", default=_env("MODEL", "out/model.json"))
    p_serve.add_argument("--journal", default=_env("JOURNAL", "journal.ndjson"))
    p_serve.add_argument(
        "--recommendations",
        default=_env("RECOMMENDATIONS", bundled_recommendations_path()),
    )
    p_serve.add_argument("--schemes", default=_env("SCHEMES", bundled_schemes_path()))
    p_serve.add_argument("--host", default=_env("HOST", "127.0.0.1"))
    p_serve.add_argument("--port", type=int, default=int(_env("PORT", "8000")))
    p_serve.add_argument("--cors-origin", default=_env("CORS_ORIGIN", "*"))
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SympredictError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
