"""Linear epsilon-insensitive SVR for label score prediction.

Fit by deterministic full-batch subgradient descent on standardized
features, minimizing

    ||w||^2 / (2 C n) + (1 / n) * sum_i max(0, |w.x_i + b - y_i| - epsilon)

(the usual lambda = 1/(C n) correspondence) with step size 1 / (C * t)
at epoch t.  No kernel: the ranking regime here does not demand
nonlinearity and a linear model stays dependency free and auditable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import DegenerateDataError, SchemaError
from .candidates import CandidateLabel
from .features import FEATURE_NAMES, N_FEATURES

MODEL_FORMAT_VERSION = 1


@dataclass(frozen=True)
class SvrHyperparams:
    epsilon: float = 0.1
    c: float = 1.0
    epochs: int = 500
    seed: int = 0

    def to_dict(self) -> dict:
        return {"epsilon": self.epsilon, "c": self.c, "epochs": self.epochs, "seed": self.seed}


@dataclass(frozen=True)
class TrainingExample:
    surface: str
    features: np.ndarray
    gold_score: int
    topic: str = ""

    def __post_init__(self):
        if self.gold_score not in (0, 1, 2, 3):
            raise ValueError("gold_score must be an integer in 0..3")
        arr = np.asarray(self.features, dtype=np.float64)
        if arr.shape != (N_FEATURES,):
            raise ValueError(f"expected {N_FEATURES} features, got shape {arr.shape}")
        object.__setattr__(self, "features", arr)


@dataclass
class RegressionModel:
    feature_names: list[str]
    means: np.ndarray
    stds: np.ndarray
    weights: np.ndarray
    bias: float
    hyperparams: SvrHyperparams = field(default_factory=SvrHyperparams)

    def predict(self, features: np.ndarray) -> float:
        x = (np.asarray(features, dtype=np.float64) - self.means) / self.stds
        return float(x @ self.weights + self.bias)

    def predict_many(self, matrix: np.ndarray) -> np.ndarray:
        x = (np.asarray(matrix, dtype=np.float64) - self.means) / self.stds
        return x @ self.weights + self.bias


def fit_svr(
    x: np.ndarray, y: np.ndarray, hyperparams: SvrHyperparams | None = None
) -> RegressionModel:
    """Fit the linear SVR on a raw feature matrix and real-valued targets."""
    hp = hyperparams or SvrHyperparams()
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n, d = x.shape
    if n < 2:
        raise DegenerateDataError("need at least 2 training examples")
    if np.all(x == x[0]):
        raise DegenerateDataError("all feature vectors are identical")

    means = x.mean(axis=0)
    stds = x.std(axis=0)
    stds[stds == 0.0] = 1.0  # degenerate features stay centered at 0
    xs = (x - means) / stds

    w = np.zeros(d)
    b = 0.0
    lam = 1.0 / (hp.c * n)
    for t in range(1, hp.epochs + 1):
        err = xs @ w + b - y
        active = np.abs(err) > hp.epsilon
        sign = np.sign(err) * active
        grad_w = lam * w + (xs.T @ sign) / n
        grad_b = sign.sum() / n
        lr = 1.0 / (hp.c * t)
        w -= lr * grad_w
        b -= lr * grad_b

    names = FEATURE_NAMES if d == N_FEATURES else [f"f{i + 1}" for i in range(d)]
    return RegressionModel(list(names), means, stds, w, float(b), hp)


def train(
    examples: list[TrainingExample], hyperparams: SvrHyperparams | None = None
) -> RegressionModel:
    """Fit on manually scored examples (gold 0..3). Deterministic given seed."""
    if len(examples) < 2:
        raise DegenerateDataError("need at least 2 training examples")
    x = np.stack([e.features for e in examples])
    y = np.array([float(e.gold_score) for e in examples])
    return fit_svr(x, y, hyperparams)


def predict_scores(
    model: RegressionModel, candidates: list[CandidateLabel]
) -> list[CandidateLabel]:
    """Score candidates and return them sorted by score descending.

    Ties break by higher tf, then lexicographic surface, which keeps the
    whole pipeline deterministic.  The result is a permutation of the
    input list.
    """
    for c in candidates:
        if c.features is None:
            raise ValueError(f"candidate {c.surface!r} has no features")
        c.predicted_score = model.predict(c.features.as_array())
    return sorted(candidates, key=lambda c: (-c.predicted_score, -c.tf, c.surface))


def save_model(model: RegressionModel, path) -> None:
    payload = {
        "version": MODEL_FORMAT_VERSION,
        "feature_names": model.feature_names,
        "means": model.means.tolist(),
        "stds": model.stds.tolist(),
        "weights": model.weights.tolist(),
        "bias": model.bias,
        "hyperparams": model.hyperparams.to_dict(),
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def load_model(path) -> RegressionModel:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if raw.get("version") != MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model file version: {raw.get('version')!r}")
    hp = SvrHyperparams(**raw["hyperparams"])
    return RegressionModel(
        feature_names=list(raw["feature_names"]),
        means=np.array(raw["means"], dtype=np.float64),
        stds=np.array(raw["stds"], dtype=np.float64),
        weights=np.array(raw["weights"], dtype=np.float64),
        bias=float(raw["bias"]),
        hyperparams=hp,
    )


def load_training_data(path) -> list[TrainingExample]:
    """Read labeled examples from JSONL.

    Each line is {"topic": str, "label": str, "gold_score": 0-3} and may
    carry an explicit "features" list when the topic corpora are not at
    hand to recompute them.
    """
    out = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            raw = raw.strip()
            if not raw:
                continue
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError:
                raise SchemaError(lineno, "json", f"line {lineno}: invalid JSON")
            for fld in ("topic", "label", "gold_score"):
                if fld not in obj:
                    raise SchemaError(lineno, fld)
            gold = obj["gold_score"]
            if isinstance(gold, bool) or not isinstance(gold, int) or gold not in (0, 1, 2, 3):
                raise SchemaError(lineno, "gold_score")
            features = obj.get("features")
            if features is None:
                raise SchemaError(
                    lineno,
                    "features",
                    f"line {lineno}: no features; provide them inline or compute "
                    "them from the topic corpus before training",
                )
            if not isinstance(features, list) or len(features) != N_FEATURES:
                raise SchemaError(lineno, "features")
            out.append(
                TrainingExample(
                    surface=obj["label"],
                    features=np.array(features, dtype=np.float64),
                    gold_score=gold,
                    topic=obj["topic"],
                )
            )
    return out
