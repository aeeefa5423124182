"""Parameters for the synthetic social network generator"""

from pathlib import Path
from dataclasses import dataclass, field
from serde import serde, coerce
from serde.yaml import from_yaml, to_yaml


@serde(type_check=coerce)
@dataclass(frozen=True)
class AcceptanceModel:
    """A user accepts a candidate in the test period with probability

    logistic(intercept + preference_weight * match + likelihood_weight * likelihood)

    where match is the mean over profile dimensions of the share the user's planted
    taste puts on the values the candidate holds, averaged over those values.
    Setting preference_weight to zero removes any dependence on diversity preference.
    """

    preference_weight: float = 6.0
    likelihood_weight: float = 2.0
    intercept: float = -5.0


@serde(type_check=coerce)
@dataclass(frozen=True)
class SynthSpec:
    """Sizes and distributions for a synthetic bundle.

    dimension_sizes gives the vocabulary size Z_h of every profile dimension. A user
    holds between 1 and max_values_per_user values in each dimension with mean
    mean_values_per_user. Larger preference_concentration gives every user a more
    peaked taste over the values of each dimension, which in turn makes the measured
    diversity preference more peaked.
    """

    name: str = "synthetic"
    seed: int = 0
    n_users: int = 400
    dimension_sizes: list[int] = field(default_factory=lambda: [6, 10, 8, 12])
    mean_values_per_user: float = 1.3
    max_values_per_user: int = 3
    preference_concentration: float = 2.0
    friends_per_snapshot: list[int] = field(default_factory=lambda: [8, 4])
    m: int = 30
    k: int = 10
    likelihood_noise: float = 0.5
    acceptance_model: AcceptanceModel = AcceptanceModel()

    def __post_init__(self):
        if self.n_users < 2:
            raise ValueError("need at least two users")
        if not self.dimension_sizes or min(self.dimension_sizes) < 1:
            raise ValueError("every dimension needs a positive number of values")
        if self.max_values_per_user < 1 or self.mean_values_per_user < 1:
            raise ValueError("users hold at least one value per dimension")
        if self.mean_values_per_user > self.max_values_per_user:
            raise ValueError("mean values per user exceeds the maximum")
        if self.preference_concentration <= 0:
            raise ValueError("preference_concentration must be positive")
        if not self.friends_per_snapshot or min(self.friends_per_snapshot) < 1:
            raise ValueError("every snapshot must add at least one friend per user")
        if not 0 < self.k < self.m:
            raise ValueError("need 0 < k < m")

    @property
    def dimension_names(self) -> list[str]:
        return [f"dim{h}" for h in range(len(self.dimension_sizes))]

    def save(self, directory: Path):
        with open(directory / f"{self.name}_synth.yml", "w") as outfile:
            outfile.write(to_yaml(self))

    @classmethod
    def load(cls, path):
        with open(path, "r") as infile:
            yaml = infile.read()
        return from_yaml(cls, yaml)
