"""Cleveland-style dataset handling: load, validate, binarize, split, scale.

The on-disk format is the classic processed Cleveland layout: comma-separated,
14 columns in the order age, sex, cp, trestbps, chol, fbs, restecg, thalach,
exang, oldpeak, slope, ca, thal, num, with "?" marking missing values.  A
header row (detected by any alphabetic token in the first line) is optional
and may carry a leading ``id`` column.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from ._rng import SplitMix64
from ._validation import DataError, check_array

FEATURE_NAMES = (
    "age",
    "sex",
    "cp",
    "trestbps",
    "chol",
    "fbs",
    "restecg",
    "thalach",
    "exang",
    "oldpeak",
    "slope",
    "ca",
    "thal",
)
TARGET_NAME = "num"
N_FEATURES = len(FEATURE_NAMES)

# allowed code sets for the categorical fields; continuous fields are absent
CATEGORICAL_CODES = {
    "sex": (0, 1),
    "cp": (1, 2, 3, 4),
    "fbs": (0, 1),
    "restecg": (0, 1, 2),
    "exang": (0, 1),
    "slope": (1, 2, 3),
    "ca": (0, 1, 2, 3),
    "thal": (3, 6, 7),
}
RAW_DIAGNOSIS_CODES = (0, 1, 2, 3, 4)

DEFAULT_SEED = 42
DEFAULT_TRAIN_COUNT = 236


@dataclass(frozen=True)
class PatientRecord:
    """One clean patient row: the 13 predictors plus diagnosis bookkeeping."""

    age: float
    sex: int
    cp: int
    trestbps: float
    chol: float
    fbs: int
    restecg: int
    thalach: float
    exang: int
    oldpeak: float
    slope: int
    ca: int
    thal: int
    patient_id: str | None = None
    raw_num: int | None = None

    @property
    def label(self) -> int | None:
        """Binarized diagnosis: 0 stays 0, anything greater maps to 1."""
        if self.raw_num is None:
            return None
        return 0 if self.raw_num == 0 else 1

    def features(self) -> list[float]:
        return [float(getattr(self, name)) for name in FEATURE_NAMES]


def binarize_diagnosis(raw_num: int) -> int:
    if raw_num not in RAW_DIAGNOSIS_CODES:
        raise DataError(f"diagnosis code {raw_num} outside {RAW_DIAGNOSIS_CODES}")
    return 0 if raw_num == 0 else 1


def validate_feature_value(name: str, value: float) -> float:
    """Range-check one feature value; raises DataError on a bad code."""
    codes = CATEGORICAL_CODES.get(name)
    if codes is not None:
        if value != int(value) or int(value) not in codes:
            raise DataError(f"{name}={value:g} outside allowed set {set(codes)}")
        return float(int(value))
    if name == "oldpeak" and value < 0:
        raise DataError(f"oldpeak={value:g} must be non-negative")
    return float(value)


def _parse_number(token: str, row_num: int, col_name: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise DataError(
            f"row {row_num}: non-numeric value {token!r} in column {col_name!r}"
        ) from None


def _looks_like_header(row: list[str]) -> bool:
    return any(any(ch.isalpha() for ch in cell) for cell in row)


def load_and_clean(path) -> tuple[list[PatientRecord], int]:
    """Read a 14-column CSV, drop rows containing "?", validate the rest.

    Returns the clean records and the number of dropped rows.  Raises
    DataError (with the offending 1-based row number) for structural
    problems: wrong column count, non-numeric tokens, codes outside the
    documented sets.
    """
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise DataError(f"{path}: file is empty")

    has_id = False
    start = 0
    if _looks_like_header(rows[0]):
        header = [c.strip().lower() for c in rows[0]]
        if len(header) == N_FEATURES + 2:
            has_id = True
        elif len(header) != N_FEATURES + 1:
            raise DataError(
                f"row 1: header has {len(header)} columns, expected "
                f"{N_FEATURES + 1} or {N_FEATURES + 2}"
            )
        start = 1

    records: list[PatientRecord] = []
    dropped = 0
    for i, row in enumerate(rows[start:], start=start + 1):
        cells = [c.strip() for c in row]
        expected = N_FEATURES + 1 + (1 if has_id else 0)
        if len(cells) != expected:
            raise DataError(f"row {i}: expected {expected} columns, got {len(cells)}")
        patient_id = cells[0] if has_id else None
        values = cells[1:] if has_id else cells
        if any(c == "?" for c in values):
            dropped += 1
            continue
        parsed = {}
        try:
            for name, token in zip(FEATURE_NAMES, values):
                parsed[name] = validate_feature_value(
                    name, _parse_number(token, i, name)
                )
            raw = _parse_number(values[-1], i, TARGET_NAME)
            if raw != int(raw):
                raise DataError(f"diagnosis code {raw:g} outside {RAW_DIAGNOSIS_CODES}")
            binarize_diagnosis(int(raw))
        except DataError as exc:
            msg = str(exc)
            raise DataError(msg if msg.startswith("row ") else f"row {i}: {msg}") from None
        records.append(
            PatientRecord(patient_id=patient_id, raw_num=int(raw), **parsed)
        )
    return records, dropped


def records_to_arrays(records: list[PatientRecord]) -> tuple[np.ndarray, np.ndarray]:
    """Stack records into the fixed-order feature matrix and label vector."""
    if not records:
        raise ValueError("no records")
    x = np.array([r.features() for r in records], dtype=np.float64)
    y = np.array([r.label for r in records], dtype=np.int64)
    return x, y


@dataclass(frozen=True)
class SplitDataset:
    x_train: np.ndarray
    y_train: np.ndarray
    x_test: np.ndarray
    y_test: np.ndarray
    train_indices: np.ndarray  # original row index per split row
    test_indices: np.ndarray
    seed: int

    @property
    def n_total(self) -> int:
        return self.train_indices.shape[0] + self.test_indices.shape[0]


def split_train_test(
    records: list[PatientRecord],
    seed: int = DEFAULT_SEED,
    train_count: int = DEFAULT_TRAIN_COUNT,
) -> SplitDataset:
    """Seeded shuffle (splitmix64 Fisher-Yates), first ``train_count`` to train."""
    n = len(records)
    if not 0 < train_count < n:
        raise ValueError(f"train_count must be in (0, {n}), got {train_count}")
    perm = SplitMix64(seed).permutation(n)
    train_idx = perm[:train_count]
    test_idx = perm[train_count:]
    x, y = records_to_arrays(records)
    return SplitDataset(
        x_train=x[train_idx],
        y_train=y[train_idx],
        x_test=x[test_idx],
        y_test=y[test_idx],
        train_indices=train_idx,
        test_indices=test_idx,
        seed=seed,
    )


class MinMaxScaler:
    """Per-column affine map onto [0,1] using training min/max only.

    Columns with max == min transform to 0.0; values outside the training
    range are not clipped, so test data may map outside [0,1].
    """

    def __init__(self):
        self.data_min_ = None
        self.data_max_ = None

    @property
    def n_features_(self) -> int | None:
        return None if self.data_min_ is None else self.data_min_.shape[0]

    def fit(self, x) -> "MinMaxScaler":
        arr = check_array(x)
        self.data_min_ = arr.min(axis=0)
        self.data_max_ = arr.max(axis=0)
        return self

    def transform(self, x) -> np.ndarray:
        if self.data_min_ is None:
            raise DataError("scaler is not fitted")
        arr = check_array(x, n_features=self.data_min_.shape[0])
        span = self.data_max_ - self.data_min_
        safe = np.where(span == 0, 1.0, span)
        out = (arr - self.data_min_) / safe
        out[:, span == 0] = 0.0
        return out

    def fit_transform(self, x) -> np.ndarray:
        return self.fit(x).transform(x)


def fit_minmax(x_train) -> MinMaxScaler:
    return MinMaxScaler().fit(x_train)
