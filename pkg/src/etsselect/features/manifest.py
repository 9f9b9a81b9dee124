"""The fixed 59-feature manifest.

Ordering is part of the model artifact contract: training and inference must
agree on it, so any reorder or rename is a MANIFEST_VERSION bump.
"""

from .catch22 import CATCH22_NAMES

MANIFEST_VERSION = "fv1"

FEATURE_NAMES: tuple[str, ...] = (
    "x_acf1",
    "x_acf10",
    "diff1_acf1",
    "diff1_acf10",
    "diff2_acf1",
    "diff2_acf10",
    "seas_acf1",
    "ARCH.LM",
    "crossing_point",
    "entropy",
    "flat_spots",
    "arch_acf",
    "garch_acf",
    "arch_r2",
    "garch_r2",
    "hurst",
    "lumpiness",
    "nonlinearity",
    "x_pacf5",
    "diff1x_pacf5",
    "diff2x_pacf5",
    "seas_pacf",
    "nperiods",
    "seasonal_period",
    "trend",
    "spike",
    "linearity",
    "curvature",
    "e_acf1",
    "e_acf10",
    "seasonal_strength",
    "peak",
    "trough",
    "stability",
    "unitRoot_kpss",
    "unitRoot_pp",
    "series_length",
) + CATCH22_NAMES

assert len(FEATURE_NAMES) == 59

FEATURE_INDEX = {name: i for i, name in enumerate(FEATURE_NAMES)}
