"""Configurations for every recommendation method compared in an experiment.

Each method is its own class so that a list of methods can be saved to yaml with the
method name as the tag, in the same way the physical parameter choices are stored.
Every configuration carries the list size k and an optional candidate set size; when
the candidate set size is given only the most likely candidates are offered to the
method.
"""

from dataclasses import dataclass
from serde import serde, coerce


def _check_weight(name: str, value: float):
    if not 0 <= value <= 1:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")


@serde(type_check=coerce)
@dataclass(frozen=True)
class BaseMethodConfig:
    k: int = 10
    candidate_size: int | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be a positive integer")
        if self.candidate_size is not None and self.candidate_size < self.k:
            raise ValueError("candidate_size must be at least k")

    @property
    def method(self) -> str:
        raise NotImplementedError

    @property
    def label(self) -> str:
        return self.method

    @property
    def block(self) -> tuple[int, int | None]:
        """Methods are compared within blocks of equal list and candidate set size"""
        return self.k, self.candidate_size

    def as_dict(self) -> dict[str, float | int | None]:
        return {"k": self.k, "candidate_size": self.candidate_size}


@serde(type_check=coerce)
@dataclass(frozen=True)
class TopKConfig(BaseMethodConfig):
    """Accuracy only recommendation of the k most likely candidates"""

    @property
    def method(self) -> str:
        return "TopK"


@serde(type_check=coerce)
@dataclass(frozen=True)
class DPALRConfig(BaseMethodConfig):
    """Diversity preference-aware link recommendation"""

    @property
    def method(self) -> str:
        return "DPA-LR"


@serde(type_check=coerce)
@dataclass(frozen=True)
class ThetaMethodConfig(BaseMethodConfig):
    theta: float = 0.5

    def __post_init__(self):
        super().__post_init__()
        _check_weight("theta", self.theta)

    @property
    def label(self) -> str:
        return f"{self.method}(theta={self.theta:g})"

    def as_dict(self) -> dict[str, float | int | None]:
        return super().as_dict() | {"theta": self.theta}


@serde(type_check=coerce)
@dataclass(frozen=True)
class MMRConfig(ThetaMethodConfig):
    """Maximal marginal relevance"""

    @property
    def method(self) -> str:
        return "MMR"


@serde(type_check=coerce)
@dataclass(frozen=True)
class MSDConfig(ThetaMethodConfig):
    """Max-sum diversification"""

    @property
    def method(self) -> str:
        return "MSD"


@serde(type_check=coerce)
@dataclass(frozen=True)
class DPPConfig(ThetaMethodConfig):
    """Determinantal point process greedy MAP inference"""

    @property
    def method(self) -> str:
        return "DPP"


@serde(type_check=coerce)
@dataclass(frozen=True)
class DiRecConfig(BaseMethodConfig):
    """Cluster the candidates and recommend the most likely member of each cluster"""

    @property
    def method(self) -> str:
        return "DiRec"


@serde(type_check=coerce)
@dataclass(frozen=True)
class DPAMMRConfig(BaseMethodConfig):
    """Maximal marginal relevance with diversity preference matching in place of
    pairwise diversity"""

    sigma: float = 0.5

    def __post_init__(self):
        super().__post_init__()
        _check_weight("sigma", self.sigma)

    @property
    def method(self) -> str:
        return "DPA-MMR"

    @property
    def label(self) -> str:
        return f"{self.method}(sigma={self.sigma:g})"

    def as_dict(self) -> dict[str, float | int | None]:
        return super().as_dict() | {"sigma": self.sigma}


MethodConfig = (
    TopKConfig
    | DPALRConfig
    | MMRConfig
    | MSDConfig
    | DPPConfig
    | DiRecConfig
    | DPAMMRConfig
)

METHOD_NAMES = ["TopK", "DPA-LR", "MMR", "MSD", "DPP", "DiRec", "DPA-MMR"]
THETA_METHODS = {"MMR": MMRConfig, "MSD": MSDConfig, "DPP": DPPConfig}
PLAIN_METHODS = {"TopK": TopKConfig, "DPA-LR": DPALRConfig, "DiRec": DiRecConfig}


def method_sort_key(config: MethodConfig) -> tuple:
    """Deterministic ordering of configuration points: block first then method"""
    weight = getattr(config, "theta", getattr(config, "sigma", -1.0))
    candidate_size = -1 if config.candidate_size is None else config.candidate_size
    return (
        config.k,
        candidate_size,
        METHOD_NAMES.index(config.method),
        weight,
    )


def method_config(method: str, values: dict[str, float | int | None]) -> MethodConfig:
    """Configuration rebuilt from its method name and as_dict values"""
    if method in THETA_METHODS:
        return THETA_METHODS[method](**values)
    if method in PLAIN_METHODS:
        return PLAIN_METHODS[method](**values)
    if method == "DPA-MMR":
        return DPAMMRConfig(**values)
    raise ValueError(f"unknown method {method}")
