"""Series feature extraction: 59 named, ordered, always-finite statistics."""

from .extract import FeatureVector, extract, extract_matrix
from .manifest import FEATURE_INDEX, FEATURE_NAMES, MANIFEST_VERSION

__all__ = [
    "FeatureVector", "extract", "extract_matrix",
    "FEATURE_NAMES", "FEATURE_INDEX", "MANIFEST_VERSION",
]
