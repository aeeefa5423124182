"""Multi valued categorical user profiles.

Value strings are interned to dense indices per dimension. Vocabularies are sorted so
that the index of a value does not depend on the order the profile lines were read in.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable


@dataclass(frozen=True)
class ProfileStore:
    """dimensions: ordered dimension names (H of them)
    vocabularies: for each dimension the tuple of value strings, index z is value z
    assignments: (user, dimension index) -> set of held value indices, users or
    dimensions without values are simply absent.
    """

    dimensions: tuple[str, ...]
    vocabularies: tuple[tuple[str, ...], ...]
    assignments: dict[tuple[str, int], frozenset[int]]

    def __post_init__(self):
        if len(self.dimensions) != len(self.vocabularies):
            raise ValueError("need one vocabulary per dimension")
        for (user, h), values in self.assignments.items():
            if not 0 <= h < self.H:
                raise ValueError(f"user {user} has values in unknown dimension {h}")
            if any(not 0 <= z < len(self.vocabularies[h]) for z in values):
                raise ValueError(
                    f"user {user} holds a value index outside dimension {self.dimensions[h]}"
                )

    @classmethod
    def from_triples(
        cls,
        triples: Iterable[tuple[str, str, str]],
        dimensions: Iterable[str] = (),
    ) -> "ProfileStore":
        """Build from (user, dimension, value) triples. Extra dimensions with no
        values at all can be declared through dimensions."""
        triples = list(triples)
        dimension_names = sorted(set(dimensions) | {dim for _, dim, _ in triples})
        dimension_index = {name: h for h, name in enumerate(dimension_names)}
        values = {name: set() for name in dimension_names}
        for _, dim, value in triples:
            values[dim].add(value)
        vocabularies = tuple(tuple(sorted(values[name])) for name in dimension_names)
        value_index = [{v: z for z, v in enumerate(vocab)} for vocab in vocabularies]

        collected: dict[tuple[str, int], set[int]] = {}
        for user, dim, value in triples:
            h = dimension_index[dim]
            collected.setdefault((user, h), set()).add(value_index[h][value])
        return cls(
            tuple(dimension_names),
            vocabularies,
            {key: frozenset(held) for key, held in collected.items()},
        )

    @property
    def H(self) -> int:
        return len(self.dimensions)

    def size(self, dimension: int) -> int:
        """Number of values Z_h of a dimension"""
        self._check_dimension(dimension)
        return len(self.vocabularies[dimension])

    def values(self, user: str, dimension: int) -> frozenset[int]:
        self._check_dimension(dimension)
        return self.assignments.get((user, dimension), frozenset())

    def value_pairs(self, user: str) -> frozenset[tuple[int, int]]:
        """All (dimension, value) pairs held by the user"""
        return frozenset(
            (h, z) for h in range(self.H) for z in self.values(user, h)
        )

    def index_of(self, dimension: str) -> int:
        return self.dimensions.index(dimension)

    @cached_property
    def users(self) -> frozenset[str]:
        return frozenset(user for user, _ in self.assignments)

    def triples(self) -> list[tuple[str, str, str]]:
        """Sorted (user, dimension, value) lines, the inverse of from_triples"""
        return sorted(
            (user, self.dimensions[h], self.vocabularies[h][z])
            for (user, h), held in self.assignments.items()
            for z in held
        )

    def max_values_per_user(self, dimension: int) -> int:
        return max(
            (len(held) for (_, h), held in self.assignments.items() if h == dimension),
            default=0,
        )

    def summary(self) -> list[dict[str, float | str]]:
        """Per dimension value counts in the style of the profile data summary"""
        rows = []
        for h, name in enumerate(self.dimensions):
            held = [len(v) for (_, d), v in self.assignments.items() if d == h]
            rows.append(
                {
                    "dimension": name,
                    "values": len(self.vocabularies[h]),
                    "users_with_values": len(held),
                    "max_values_per_user": max(held, default=0),
                    "mean_values_per_user": sum(held) / len(held) if held else 0.0,
                }
            )
        return rows

    def _check_dimension(self, dimension: int):
        if not 0 <= dimension < self.H:
            raise IndexError(
                f"dimension {dimension} out of range for {self.H} profile dimensions"
            )
