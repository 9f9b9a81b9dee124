"""Training configuration and the published per-task presets."""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class TrainConfig:
    eta: float = 0.1
    num_leaves: int = 31
    min_data_in_leaf: int = 20
    max_bin: int = 255
    num_boost_round: int = 100
    bagging_fraction: float = 1.0
    bagging_freq: int = 0
    feature_fraction: float = 1.0
    seed: int = 123
    lambda_reg: float = 1e-3
    min_split_gain: float = 0.0

    def __post_init__(self):
        if not (0.0 < self.eta <= 1.0):
            raise ValueError("eta must be in (0, 1]")
        if self.num_leaves < 2:
            raise ValueError("num_leaves must be >= 2")
        if self.min_data_in_leaf < 1:
            raise ValueError("min_data_in_leaf must be >= 1")
        if not (2 <= self.max_bin <= 255):
            raise ValueError("max_bin must be in [2, 255]")
        if self.num_boost_round < 0:
            raise ValueError("num_boost_round must be >= 0")
        for name in ("bagging_fraction", "feature_fraction"):
            v = getattr(self, name)
            if not (0.0 < v <= 1.0):
                raise ValueError(f"{name} must be in (0, 1]")
        if self.bagging_freq < 0:
            raise ValueError("bagging_freq must be >= 0")
        if self.lambda_reg < 0:
            raise ValueError("lambda_reg must be >= 0")

    def scaled_rounds(self, cap: int) -> "TrainConfig":
        return replace(self, num_boost_round=min(self.num_boost_round, cap))


# Published defaults for the three component classifiers (the reference
# tool's bagging_seed maps onto `seed`; its force_col_wise knob has no
# analogue here and is ignored).
ERROR_CLASSIFIER = TrainConfig(
    eta=0.05, num_leaves=92, min_data_in_leaf=90, max_bin=175,
    num_boost_round=600, bagging_fraction=0.8, bagging_freq=4,
    feature_fraction=0.7, seed=123,
)
TREND_CLASSIFIER = TrainConfig(
    eta=0.05, num_leaves=80, min_data_in_leaf=100, max_bin=225,
    num_boost_round=800, bagging_fraction=0.8, bagging_freq=4,
    feature_fraction=0.7, seed=123,
)
SEASONALITY_CLASSIFIER = TrainConfig(
    eta=0.05, num_leaves=64, min_data_in_leaf=60, max_bin=175,
    num_boost_round=1000, bagging_fraction=0.8, bagging_freq=4,
    feature_fraction=0.7, seed=123,
)
