"""Plot-ready report files: key/value metrics documents and CSV tables.

Numbers are written with repr so two runs with the same seed produce
byte-identical files; anything time-dependent goes to a sidecar.
"""

from __future__ import annotations

import csv
from datetime import datetime, timezone

from .metrics import RocCurve


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))
    if isinstance(value, (list, tuple)):
        return ",".join(format_value(v) for v in value)
    return str(value)


def write_kv(path, items) -> None:
    """Key/value document: one ``key = value`` line per item, in order."""
    with open(path, "w", encoding="utf-8") as fh:
        for key, value in items:
            fh.write(f"{key} = {format_value(value)}\n")


def write_sidecar(path, argv) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"generated_at = {datetime.now(timezone.utc).isoformat(timespec='seconds')}\n")
        fh.write(f"command = {' '.join(argv)}\n")


def write_roc_csv(path, roc: RocCurve) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["threshold", "fpr", "tpr"])
        for threshold, (fpr, tpr) in zip(roc.thresholds, roc.points):
            writer.writerow([repr(float(threshold)), repr(float(fpr)), repr(float(tpr))])


def write_sweep_csv(path, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["epochs", "train_accuracy", "test_accuracy", "final_loss"])
        for row in rows:
            writer.writerow(
                [
                    row["epochs"],
                    repr(float(row["train_accuracy"])),
                    repr(float(row["test_accuracy"])),
                    repr(float(row["final_loss"])),
                ]
            )


def write_grid_csv(path, result, k: int) -> None:
    names = sorted(result.table[0].params) if result.table else []
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(names + ["mean"] + [f"fold_{i + 1}" for i in range(k)])
        for entry in result.table:
            row = [format_value(entry.params[n]) for n in names]
            row.append(repr(float(entry.mean)))
            row.extend(repr(float(s)) for s in entry.fold_scores)
            writer.writerow(row)


def write_predictions_csv(path, results) -> None:
    """Batch inference output; non-ok rows have empty label/probability."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "label", "probability", "status"])
        for row in results:
            label = "" if row["label"] is None else row["label"]
            prob = "" if row["probability"] is None else repr(float(row["probability"]))
            writer.writerow([row["patient_id"], label, prob, row["row_status"]])
