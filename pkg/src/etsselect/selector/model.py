"""The three-classifier selector: training, prediction, persistence."""

import json
import struct
import zlib
from dataclasses import dataclass, field

import numpy as np

from ..errors import CorruptArtifact, DataError, ManifestMismatch, VersionMismatch
from ..features import FEATURE_NAMES, MANIFEST_VERSION, FeatureVector, extract
from ..gbdt import (
    ERROR_CLASSIFIER,
    SEASONALITY_CLASSIFIER,
    TREND_CLASSIFIER,
    TrainConfig,
    TreeEnsemble,
)
from ..gbdt import serialize as gbdt_io
from ..gbdt import train as gbdt_train
from .checks import ERROR_FORMS, SEASON_FORMS, TREND_FORMS, ComponentPrediction, check_and_adjust
from .plan import Corpus

MAGIC = b"FSEL"
FORMAT_VERSION = 1

_TASKS = (
    ("error", ERROR_FORMS, lambda spec: spec.error),
    ("trend", TREND_FORMS, lambda spec: spec.trend),
    ("seasonality", SEASON_FORMS, lambda spec: spec.seasonality),
)


@dataclass(frozen=True)
class SelectorModel:
    f_error: TreeEnsemble
    f_trend: TreeEnsemble
    f_seasonality: TreeEnsemble
    manifest_version: str = MANIFEST_VERSION
    corpus_digest: str = ""
    diagnostics: dict = field(default_factory=dict)

    def predict_components(self, features: FeatureVector) -> ComponentPrediction:
        """Three probability vectors over the canonical form sets."""
        if features.manifest_version != self.manifest_version:
            raise ManifestMismatch(
                f"model built on manifest {self.manifest_version!r}, features "
                f"are {features.manifest_version!r}"
            )
        x = features.values
        return ComponentPrediction(
            p_error=_full_probs(self.f_error, x, ERROR_FORMS),
            p_trend=_full_probs(self.f_trend, x, TREND_FORMS),
            p_season=_full_probs(self.f_seasonality, x, SEASON_FORMS),
        )


def _full_probs(model: TreeEnsemble, x: np.ndarray,
                forms: tuple[str, ...]) -> dict[str, float]:
    proba = model.predict_proba(x)
    out = {f: 0.0 for f in forms}
    for label, p in zip(model.class_labels, proba):
        out[label] = float(p)
    return out


def train_selector(corpus: Corpus,
                   error_config: TrainConfig = ERROR_CLASSIFIER,
                   trend_config: TrainConfig = TREND_CLASSIFIER,
                   seasonality_config: TrainConfig = SEASONALITY_CLASSIFIER,
                   holdout: float = 0.2,
                   split_seed: int = 0) -> SelectorModel:
    """Extract features once, train the three classifiers on the training
    split, and record held-out diagnostics (per-task accuracy/macro F1 and
    whole-model accuracy after check-and-adjust)."""
    from ..evaluation import accuracy, macro_f1  # local import avoids a cycle

    if len(corpus) < 10:
        raise DataError("corpus too small to train on")

    items = corpus.items
    X = np.empty((len(items), len(FEATURE_NAMES)))
    for i, it in enumerate(items):
        try:
            X[i] = extract(it.series).values
        except Exception as exc:
            raise DataError(f"feature extraction failed for series "
                            f"{it.series.id!r}: {exc}") from exc

    labels = {name: np.array([get(it.spec) for it in items])
              for name, _, get in _TASKS}
    single = [name for name, _, _ in _TASKS if len(set(labels[name])) < 2]
    if single:
        raise DataError(
            "single-class labels for task(s): " + ", ".join(single)
            + "; each component classifier needs at least two classes"
        )

    rng = np.random.default_rng(split_seed)
    order = rng.permutation(len(items))
    n_test = int(round(holdout * len(items)))
    test_idx = np.sort(order[:n_test])
    train_idx = np.sort(order[n_test:])

    configs = {"error": error_config, "trend": trend_config,
               "seasonality": seasonality_config}
    ensembles = {}
    for name, _, _ in _TASKS:
        ensembles[name] = gbdt_train(X[train_idx], labels[name][train_idx],
                                     configs[name])

    diagnostics = {
        "n_train": int(train_idx.size),
        "n_test": int(test_idx.size),
        "test_ids": [items[i].series.id for i in test_idx],
        "holdout": holdout,
        "split_seed": split_seed,
        "tasks": {},
    }
    model = SelectorModel(
        f_error=ensembles["error"], f_trend=ensembles["trend"],
        f_seasonality=ensembles["seasonality"],
        corpus_digest=corpus.digest, diagnostics=diagnostics,
    )
    if test_idx.size:
        preds = {"error": [], "trend": [], "seasonality": []}
        whole_pred, whole_true = [], []
        for i in test_idx:
            fv = FeatureVector(values=X[i])
            cp = model.predict_components(fv)
            series = items[i].series
            spec, _ = check_and_adjust(cp, series.period,
                                       series.has_nonpositive, len(series))
            preds["error"].append(spec.error)
            preds["trend"].append(spec.trend)
            preds["seasonality"].append(spec.seasonality)
            whole_pred.append(spec.name)
            whole_true.append(items[i].spec.name)
        for name, forms, _ in _TASKS:
            truth = labels[name][test_idx].tolist()
            diagnostics["tasks"][name] = {
                "accuracy": accuracy(truth, preds[name]),
                "macro_f1": macro_f1(truth, preds[name], list(forms)),
            }
        diagnostics["tasks"]["whole_model"] = {
            "accuracy": accuracy(whole_true, whole_pred),
            "macro_f1": macro_f1(whole_true, whole_pred,
                                 sorted(set(whole_true))),
        }
    return model


def save_selector(model: SelectorModel) -> bytes:
    header = {
        "manifest_version": model.manifest_version,
        "corpus_digest": model.corpus_digest,
        "diagnostics": model.diagnostics,
    }
    header_bytes = json.dumps(header, sort_keys=True).encode("utf-8")
    parts = [MAGIC, struct.pack("<I", FORMAT_VERSION),
             struct.pack("<I", len(header_bytes)), header_bytes]
    for ensemble in (model.f_error, model.f_trend, model.f_seasonality):
        blob = gbdt_io.save(ensemble)
        parts.append(struct.pack("<I", len(blob)))
        parts.append(blob)
    payload = b"".join(parts)
    return payload + struct.pack("<I", zlib.crc32(payload))


def load_selector(data: bytes) -> SelectorModel:
    if len(data) < 12:
        raise CorruptArtifact("artifact too small")
    payload, crc = data[:-4], data[-4:]
    if struct.unpack("<I", crc)[0] != zlib.crc32(payload):
        raise CorruptArtifact("checksum mismatch")
    pos = 0
    if payload[:4] != MAGIC:
        raise CorruptArtifact("bad magic")
    pos = 4
    version = struct.unpack_from("<I", payload, pos)[0]
    pos += 4
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"unsupported selector format version {version}")
    try:
        hlen = struct.unpack_from("<I", payload, pos)[0]
        pos += 4
        header = json.loads(payload[pos: pos + hlen].decode("utf-8"))
        pos += hlen
        ensembles = []
        for _ in range(3):
            blen = struct.unpack_from("<I", payload, pos)[0]
            pos += 4
            ensembles.append(gbdt_io.load(payload[pos: pos + blen]))
            pos += blen
    except (KeyError, ValueError, struct.error) as exc:
        raise CorruptArtifact(f"malformed selector artifact: {exc}") from exc
    return SelectorModel(
        f_error=ensembles[0], f_trend=ensembles[1], f_seasonality=ensembles[2],
        manifest_version=header["manifest_version"],
        corpus_digest=header["corpus_digest"],
        diagnostics=header["diagnostics"],
    )
