"""Command-line pipeline: prep, compare, gridsearch, crossval, train,
sweep-epochs, predict, serve.

All report files are deterministic for a given seed; timestamps go to a
``run_info.txt`` sidecar.  Exit codes: 0 success, 1 data/model error,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import reports
from ._validation import DataError
from .data import (
    DEFAULT_SEED,
    DEFAULT_TRAIN_COUNT,
    MinMaxScaler,
    load_and_clean,
    split_train_test,
)
from .learners import (
    COMPARISON_LEARNERS,
    MODEL_TYPES,
    NEEDS_SCALING,
    SCORELESS,
    make_learner,
)
from .metrics import accuracy_score, matthews_corrcoef, roc_curve
from .model_selection import DEFAULT_RF_GRID, cross_validate, grid_search
from .model_store import (
    fingerprint_file,
    load_model,
    make_envelope,
    save_model,
    training_metadata,
)
from .neural import DEFAULT_EPOCH_LIST, epoch_sweep
from .service import create_app, run_batch_csv

ROC_REPORT_LEARNERS = ("random_forest", "knn", "gaussian_nb")


def _add_data_flags(parser, train_count=True):
    parser.add_argument("--data", required=True, help="dataset CSV path")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    if train_count:
        parser.add_argument(
            "--train-count",
            type=int,
            default=DEFAULT_TRAIN_COUNT,
            help=f"rows assigned to the training split (default {DEFAULT_TRAIN_COUNT})",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heartml", description="heart-disease model training and serving"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prep", help="load, clean, split, and summarize a dataset")
    _add_data_flags(p)
    p.add_argument("--out", help="directory for prep.txt (defaults to stdout only)")

    p = sub.add_parser("compare", help="train the eight learners and report metrics")
    _add_data_flags(p)
    p.add_argument("--out", required=True, help="report directory")
    p.add_argument("--scaled", action="store_true", help="min-max scale inputs for every learner")
    p.add_argument("--roc-all", action="store_true", help="also emit ensemble and SVM-margin ROC files")

    p = sub.add_parser("gridsearch", help="cross-validated hyperparameter grid search")
    _add_data_flags(p)
    p.add_argument("--out", required=True)
    p.add_argument("--learner", default="random_forest", choices=sorted(MODEL_TYPES))
    p.add_argument("--grid", help="JSON file of name -> candidate list (default: built-in RF grid)")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("crossval", help="stratified k-fold cross-validation")
    _add_data_flags(p)
    p.add_argument("--learner", required=True, choices=sorted(MODEL_TYPES))
    p.add_argument("--params", help="JSON object of learner parameter overrides")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--scaled", action="store_true")
    p.add_argument("--use", choices=("all", "train"), default="all",
                   help="cross-validate on all clean rows or the train split")
    p.add_argument("--out", help="directory for crossval.txt")

    p = sub.add_parser("train", help="train one learner and save a .model envelope")
    _add_data_flags(p)
    p.add_argument("--learner", required=True, choices=sorted(MODEL_TYPES))
    p.add_argument("--params", help="JSON object of learner parameter overrides")
    p.add_argument("--scaled", action="store_true")
    p.add_argument("--out", required=True, help="output .model path")

    p = sub.add_parser("sweep-epochs", help="epoch-count study for the dense network")
    _add_data_flags(p)
    p.add_argument("--epochs", help="comma-separated epoch counts "
                   f"(default {','.join(str(e) for e in DEFAULT_EPOCH_LIST)})")
    p.add_argument("--out", required=True, help="directory for sweep.csv")

    p = sub.add_parser("predict", help="batch inference: envelope + CSV -> results CSV")
    p.add_argument("--model", required=True, help=".model envelope path")
    p.add_argument("--data", required=True, help="CSV with a header row (optional id column)")
    p.add_argument("--out", required=True, help="output results CSV path")

    p = sub.add_parser("serve", help="start the diagnosis REST service")
    p.add_argument("--model", default=os.environ.get("HEARTML_MODEL"))
    p.add_argument("--users", default=os.environ.get("HEARTML_USERS"))
    p.add_argument("--host", default=os.environ.get("HEARTML_HOST", "127.0.0.1"))
    p.add_argument("--port", type=int, default=int(os.environ.get("HEARTML_PORT", "8000")))
    p.add_argument("--token-ttl", type=int,
                   default=int(os.environ.get("HEARTML_TOKEN_TTL", str(24 * 3600))))
    p.add_argument("--upload-limit", type=int,
                   default=int(os.environ.get("HEARTML_UPLOAD_LIMIT", str(1 << 20))))
    p.add_argument("--static", default=os.environ.get("HEARTML_STATIC"),
                   help="directory of web UI assets to serve at /")
    return parser


def _ensure_dir(path):
    os.makedirs(path, exist_ok=True)
    return path


def _load_split(args):
    records, dropped = load_and_clean(args.data)
    split = split_train_test(records, seed=args.seed, train_count=args.train_count)
    return records, dropped, split


def _learner_for(args, name=None, seed=None):
    overrides = {}
    if getattr(args, "params", None):
        overrides = json.loads(args.params)
        if not isinstance(overrides, dict):
            raise DataError("--params must be a JSON object")
    est = make_learner(name or args.learner, **overrides)
    seed = args.seed if seed is None else seed
    if "random_state" in est._param_names() and "random_state" not in overrides:
        est.set_params(random_state=seed)
    return est


def cmd_prep(args) -> int:
    records, dropped, split = _load_split(args)
    scaler = MinMaxScaler().fit(split.x_train)
    items = [
        ("raw_rows", len(records) + dropped),
        ("clean_records", len(records)),
        ("dropped_rows", dropped),
        ("positive_rate", float(np.mean([r.label for r in records]))),
        ("train_rows", split.x_train.shape[0]),
        ("test_rows", split.x_test.shape[0]),
        ("seed", args.seed),
        ("train_min", [float(v) for v in scaler.data_min_]),
        ("train_max", [float(v) for v in scaler.data_max_]),
    ]
    for key, value in items:
        print(f"{key} = {reports.format_value(value)}")
    if args.out:
        reports.write_kv(os.path.join(_ensure_dir(args.out), "prep.txt"), items)
        reports.write_sidecar(os.path.join(args.out, "run_info.txt"), sys.argv)
    return 0


def cmd_compare(args) -> int:
    records, dropped, split = _load_split(args)
    x_train, x_test = split.x_train, split.x_test
    scaler = MinMaxScaler().fit(split.x_train)
    if args.scaled:
        x_train, x_test = scaler.transform(x_train), scaler.transform(x_test)
    out = _ensure_dir(args.out)
    items = [
        ("dataset.clean_records", len(records)),
        ("dataset.dropped_rows", dropped),
        ("dataset.train_rows", x_train.shape[0]),
        ("dataset.test_rows", x_test.shape[0]),
        ("dataset.seed", args.seed),
        ("dataset.scaled", bool(args.scaled)),
    ]
    roc_files = []
    for name in COMPARISON_LEARNERS:
        est = _learner_for(args, name=name)
        xt_fit, xt_eval = x_train, x_test
        if name in NEEDS_SCALING and not args.scaled:
            xt_fit, xt_eval = scaler.transform(x_train), scaler.transform(x_test)
        est.fit(xt_fit, split.y_train)
        pred = est.predict(xt_eval)
        items.append((f"{name}.accuracy", accuracy_score(split.y_test, pred)))
        if name in SCORELESS:
            if args.roc_all:
                roc = roc_curve(split.y_test, est.decision_function(xt_eval))
                items.append((f"{name}.auc", roc.auc))
                roc_files.append((f"roc_{name}.csv", roc))
            continue
        items.append((f"{name}.mcc", matthews_corrcoef(split.y_test, pred)))
        roc = roc_curve(split.y_test, est.predict_score(xt_eval))
        items.append((f"{name}.auc", roc.auc))
        if name in ROC_REPORT_LEARNERS or args.roc_all:
            roc_files.append((f"roc_{name}.csv", roc))
    reports.write_kv(os.path.join(out, "metrics.txt"), items)
    for filename, roc in roc_files:
        reports.write_roc_csv(os.path.join(out, filename), roc)
    reports.write_sidecar(os.path.join(out, "run_info.txt"), sys.argv)
    for key, value in items:
        print(f"{key} = {reports.format_value(value)}")
    return 0


def cmd_gridsearch(args) -> int:
    _records, _dropped, split = _load_split(args)
    if args.grid:
        with open(args.grid, encoding="utf-8") as fh:
            grid = json.load(fh)
    else:
        grid = DEFAULT_RF_GRID
    learner = _learner_for(args)
    result = grid_search(
        grid, learner, split.x_train, split.y_train,
        k=args.k, seed=args.seed, n_threads=args.threads,
    )
    out = _ensure_dir(args.out)
    reports.write_grid_csv(os.path.join(out, "gridsearch.csv"), result, args.k)
    best_items = [
        ("combinations_raw", result.raw_combinations),
        ("combinations", result.combinations),
        ("best_mean_score", result.best_mean_score),
    ] + [(f"best.{k}", v) for k, v in sorted(result.best_params.items())]
    reports.write_kv(os.path.join(out, "grid_best.txt"), best_items)
    reports.write_sidecar(os.path.join(out, "run_info.txt"), sys.argv)
    for key, value in best_items:
        print(f"{key} = {reports.format_value(value)}")
    return 0


def cmd_crossval(args) -> int:
    records, _dropped, split = _load_split(args)
    if args.use == "train":
        x, y = split.x_train, split.y_train
    else:
        from .data import records_to_arrays

        x, y = records_to_arrays(records)
    if args.scaled or args.learner in NEEDS_SCALING:
        x = MinMaxScaler().fit_transform(x)
    est = _learner_for(args)
    scores, mean = cross_validate(est, x, y, k=args.k, seed=args.seed)
    items = [
        ("learner", args.learner),
        ("k", args.k),
        ("seed", args.seed),
        ("rows", x.shape[0]),
        ("fold_scores", scores),
        ("mean", mean),
    ]
    for key, value in items:
        print(f"{key} = {reports.format_value(value)}")
    if args.out:
        reports.write_kv(os.path.join(_ensure_dir(args.out), "crossval.txt"), items)
        reports.write_sidecar(os.path.join(args.out, "run_info.txt"), sys.argv)
    return 0


def cmd_train(args) -> int:
    _records, _dropped, split = _load_split(args)
    est = _learner_for(args)
    scaler = None
    x_train, x_test = split.x_train, split.x_test
    if args.scaled or args.learner in NEEDS_SCALING:
        scaler = MinMaxScaler().fit(split.x_train)
        x_train, x_test = scaler.transform(x_train), scaler.transform(x_test)
    est.fit(x_train, split.y_train)
    pred = est.predict(x_test)
    metrics = {"test_accuracy": accuracy_score(split.y_test, pred)}
    if args.learner not in SCORELESS:
        metrics["test_mcc"] = matthews_corrcoef(split.y_test, pred)
        metrics["test_auc"] = roc_curve(split.y_test, est.predict_score(x_test)).auc
    envelope = make_envelope(
        est,
        scaler=scaler,
        metadata=training_metadata(
            seed=args.seed,
            metrics=metrics,
            dataset_fingerprint=fingerprint_file(args.data),
        ),
    )
    save_model(envelope, args.out)
    for key, value in sorted(metrics.items()):
        print(f"{key} = {reports.format_value(value)}")
    print(f"saved {args.learner} envelope to {args.out}")
    return 0


def cmd_sweep_epochs(args) -> int:
    _records, _dropped, split = _load_split(args)
    scaler = MinMaxScaler().fit(split.x_train)
    if args.epochs:
        try:
            epoch_list = [int(tok) for tok in args.epochs.split(",") if tok.strip()]
        except ValueError:
            raise DataError(f"--epochs must be comma-separated integers, got {args.epochs!r}")
    else:
        epoch_list = list(DEFAULT_EPOCH_LIST)
    rows = epoch_sweep(
        scaler.transform(split.x_train),
        split.y_train,
        scaler.transform(split.x_test),
        split.y_test,
        epoch_list,
        seed=args.seed,
    )
    out = _ensure_dir(args.out)
    reports.write_sweep_csv(os.path.join(out, "sweep.csv"), rows)
    reports.write_sidecar(os.path.join(out, "run_info.txt"), sys.argv)
    for row in rows:
        print(
            f"epochs={row['epochs']} train={row['train_accuracy']:.4f} "
            f"test={row['test_accuracy']:.4f} loss={row['final_loss']:.4f}"
        )
    return 0


def cmd_predict(args) -> int:
    envelope = load_model(args.model)
    try:
        with open(args.data, encoding="utf-8-sig") as fh:
            text = fh.read()
    except OSError as exc:
        raise DataError(f"cannot read {args.data}: {exc}")
    results, ok_count = run_batch_csv(envelope, text)
    reports.write_predictions_csv(args.out, results)
    print(f"wrote {len(results)} results ({ok_count} ok, {len(results) - ok_count} skipped) to {args.out}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    app = create_app(
        model_path=args.model,
        users_path=args.users,
        token_ttl=args.token_ttl,
        upload_limit=args.upload_limit,
        static_dir=args.static,
    )
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "prep": cmd_prep,
    "compare": cmd_compare,
    "gridsearch": cmd_gridsearch,
    "crossval": cmd_crossval,
    "train": cmd_train,
    "sweep-epochs": cmd_sweep_epochs,
    "predict": cmd_predict,
    "serve": cmd_serve,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except (DataError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
