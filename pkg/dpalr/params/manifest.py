"""The run manifest describes one experiment: the input files, the methods and
parameter grids to sweep, solver settings and where to write output.

It is saved and loaded as yaml. Relative input paths are resolved against the
directory containing the manifest file when it is loaded.
"""

from pathlib import Path
from dataclasses import dataclass, field, replace
from serde import serde, coerce
from serde.yaml import from_yaml, to_yaml

from .solver import SolverConfig
from .scope import FriendScope, AllFriends
from .methods import (
    MethodConfig,
    METHOD_NAMES,
    THETA_METHODS,
    PLAIN_METHODS,
    DPAMMRConfig,
    method_sort_key,
)

MISSING_TRUTH_POLICIES = ("exclude", "count-as-zero")


@serde(type_check=coerce)
@dataclass(frozen=True)
class RunManifest:
    name: str
    edge_paths: list[str]
    profile_path: str
    candidate_path: str
    output_directory: str
    truth_path: str | None = None

    methods: list[str] = field(
        default_factory=lambda: ["DPA-LR", "MMR", "MSD", "DPP", "DiRec"]
    )
    theta_grid: list[float] = field(default_factory=lambda: [0.5])
    sigma_grid: list[float] = field(default_factory=lambda: [0.5])
    k_grid: list[int] = field(default_factory=lambda: [10])
    candidate_size_grid: list[int | None] = field(default_factory=lambda: [None])

    solver: SolverConfig = SolverConfig()
    friend_scope: FriendScope = AllFriends()
    parallelism: int = 1
    seed: int = 0

    reference_method: str = "DPA-LR"
    missing_truth_policy: str = "exclude"
    oracle_budget: int = 5_000_000
    max_users: int | None = None

    def save(self, directory: Path):
        with open(directory / f"{self.name}.yml", "w") as outfile:
            outfile.write(to_yaml(self))

    @classmethod
    def load(cls, path):
        path = Path(path)
        with open(path, "r") as infile:
            yaml = infile.read()
        return from_yaml(cls, yaml).resolve_paths(path.parent)

    def resolve_paths(self, base: Path) -> "RunManifest":
        def resolve(name):
            if name is None or Path(name).is_absolute():
                return name
            return str(base / name)

        return replace(
            self,
            edge_paths=[resolve(p) for p in self.edge_paths],
            profile_path=resolve(self.profile_path),
            candidate_path=resolve(self.candidate_path),
            truth_path=resolve(self.truth_path),
            output_directory=resolve(self.output_directory),
        )

    def validate(self, require_truth: bool = False) -> None:
        """Raise ValueError if a referenced input is missing or a grid is empty"""
        paths = self.edge_paths + [self.profile_path, self.candidate_path]
        if require_truth:
            if self.truth_path is None:
                raise ValueError(f"{self.name}: manifest has no truth_path")
            paths.append(self.truth_path)
        elif self.truth_path is not None:
            paths.append(self.truth_path)
        missing = [p for p in paths if not Path(p).exists()]
        if missing:
            raise ValueError(f"{self.name}: missing input files {missing}")
        if not self.edge_paths:
            raise ValueError(f"{self.name}: at least one edge file is needed")

        for grid_name in ["methods", "k_grid", "candidate_size_grid"]:
            if not getattr(self, grid_name):
                raise ValueError(f"{self.name}: {grid_name} is empty")
        if any(name in THETA_METHODS for name in self.methods) and not self.theta_grid:
            raise ValueError(f"{self.name}: theta_grid is empty")
        if "DPA-MMR" in self.methods and not self.sigma_grid:
            raise ValueError(f"{self.name}: sigma_grid is empty")
        unknown = [name for name in self.methods if name not in METHOD_NAMES]
        if unknown:
            raise ValueError(f"{self.name}: unknown methods {unknown}")
        if self.missing_truth_policy not in MISSING_TRUTH_POLICIES:
            raise ValueError(
                f"{self.name}: missing_truth_policy must be one of {MISSING_TRUTH_POLICIES}"
            )
        if self.parallelism < 1:
            raise ValueError(f"{self.name}: parallelism must be at least 1")

    def expand_config_points(self) -> list[MethodConfig]:
        """Every (method, k, candidate set size, weight) combination to run"""
        points = []
        for name in self.methods:
            for k in self.k_grid:
                for candidate_size in self.candidate_size_grid:
                    common = {"k": k, "candidate_size": candidate_size}
                    if name in THETA_METHODS:
                        points += [
                            THETA_METHODS[name](theta=theta, **common)
                            for theta in self.theta_grid
                        ]
                    elif name == "DPA-MMR":
                        points += [
                            DPAMMRConfig(sigma=sigma, **common)
                            for sigma in self.sigma_grid
                        ]
                    elif name in PLAIN_METHODS:
                        points.append(PLAIN_METHODS[name](**common))
                    else:
                        raise NotImplementedError(name)
        return sorted(set(points), key=method_sort_key)
