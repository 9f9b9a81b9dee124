"""Checksummed binary model artifact.

Layout (little-endian): magic "FGBT", u32 format version, length-prefixed
JSON header (config echo, class labels, sizes), per-feature bin edges,
per-feature gain totals, the tree list, and a trailing CRC32 of everything
before it.
"""

import json
import struct
import zlib
from dataclasses import asdict

import numpy as np

from ..errors import CorruptArtifact, VersionMismatch
from .config import TrainConfig
from .ensemble import Tree, TreeEnsemble

MAGIC = b"FGBT"
FORMAT_VERSION = 1


def _pack_array(a: np.ndarray, dtype: str) -> bytes:
    return a.astype(dtype).tobytes()


def save(model: TreeEnsemble) -> bytes:
    header = {
        "config": asdict(model.config),
        "class_labels": list(model.class_labels),
        "n_classes": model.n_classes,
        "n_features": model.n_features,
        "train_logloss": list(model.train_logloss),
    }
    header_bytes = json.dumps(header, sort_keys=True).encode("utf-8")
    parts = [MAGIC, struct.pack("<I", FORMAT_VERSION),
             struct.pack("<I", len(header_bytes)), header_bytes]
    for e in model.bin_edges:
        parts.append(struct.pack("<I", e.size))
        parts.append(_pack_array(e, "<f8"))
    parts.append(_pack_array(model.gain_by_feature, "<f8"))
    parts.append(struct.pack("<I", len(model.trees)))
    for t in model.trees:
        parts.append(struct.pack("<III", t.round_index, t.class_index,
                                 t.feature.size))
        parts.append(_pack_array(t.feature, "<i4"))
        parts.append(_pack_array(t.bin_thr, "<i4"))
        parts.append(_pack_array(t.threshold, "<f8"))
        parts.append(_pack_array(t.left, "<i4"))
        parts.append(_pack_array(t.right, "<i4"))
        parts.append(_pack_array(t.value, "<f8"))
        parts.append(_pack_array(t.gain, "<f8"))
    payload = b"".join(parts)
    return payload + struct.pack("<I", zlib.crc32(payload))


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise CorruptArtifact("artifact truncated")
        out = self.data[self.pos: self.pos + n]
        self.pos += n
        return out

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def array(self, count: int, dtype: str) -> np.ndarray:
        raw = self.take(count * np.dtype(dtype).itemsize)
        return np.frombuffer(raw, dtype=dtype).copy()


def load(data: bytes) -> TreeEnsemble:
    if len(data) < 12:
        raise CorruptArtifact("artifact too small")
    payload, crc_bytes = data[:-4], data[-4:]
    if struct.unpack("<I", crc_bytes)[0] != zlib.crc32(payload):
        raise CorruptArtifact("checksum mismatch")
    r = _Reader(payload)
    if r.take(4) != MAGIC:
        raise CorruptArtifact("bad magic")
    version = r.u32()
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"unsupported model format version {version}")
    try:
        header = json.loads(r.take(r.u32()).decode("utf-8"))
        config = TrainConfig(**header["config"])
        n_features = header["n_features"]
        edges = []
        for _ in range(n_features):
            edges.append(r.array(r.u32(), "<f8"))
        gain_by_feature = r.array(n_features, "<f8")
        trees = []
        for _ in range(r.u32()):
            rnd, cls, n_nodes = struct.unpack("<III", r.take(12))
            feature = r.array(n_nodes, "<i4").astype(np.int32)
            bin_thr = r.array(n_nodes, "<i4").astype(np.int32)
            threshold = r.array(n_nodes, "<f8")
            left = r.array(n_nodes, "<i4").astype(np.int32)
            right = r.array(n_nodes, "<i4").astype(np.int32)
            value = r.array(n_nodes, "<f8")
            gain = r.array(n_nodes, "<f8")
            trees.append(Tree(round_index=rnd, class_index=cls, feature=feature,
                              bin_thr=bin_thr, threshold=threshold, left=left,
                              right=right, value=value, gain=gain))
    except (KeyError, ValueError, TypeError, struct.error) as exc:
        raise CorruptArtifact(f"malformed artifact: {exc}") from exc
    return TreeEnsemble(
        n_classes=header["n_classes"],
        class_labels=tuple(header["class_labels"]),
        n_features=n_features,
        trees=tuple(trees),
        bin_edges=tuple(edges),
        gain_by_feature=gain_by_feature,
        config=config,
        train_logloss=tuple(header.get("train_logloss", ())),
    )
