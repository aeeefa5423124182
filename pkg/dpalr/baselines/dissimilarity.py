"""Profile based dissimilarity between candidates.

Each user's profile is taken as the set of (dimension, value) pairs they hold and
dissimilarity is one minus the Jaccard similarity of those sets.
"""

from dataclasses import dataclass
import numpy as np
from numpy.typing import NDArray

from ..model import ProfileStore


def jaccard_dissimilarity(a: frozenset, b: frozenset) -> float:
    union = len(a | b)
    if union == 0:
        return 0.0
    return 1.0 - len(a & b) / union


def profile_dissimilarity(profiles: ProfileStore, a: str, b: str) -> float:
    return jaccard_dissimilarity(profiles.value_pairs(a), profiles.value_pairs(b))


@dataclass(frozen=True)
class PairwiseDissimilarity:
    """Symmetric (m, m) matrix with zero diagonal and values in [0, 1]"""

    matrix: NDArray

    def __post_init__(self):
        matrix = self.matrix
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("dissimilarity matrix must be square")
        if not np.allclose(matrix, matrix.T) or np.any(np.diag(matrix) != 0):
            raise ValueError("dissimilarity matrix must be symmetric with zero diagonal")
        if np.any(matrix < 0) or np.any(matrix > 1):
            raise ValueError("dissimilarities must lie in [0, 1]")

    @property
    def similarity(self) -> NDArray:
        return 1.0 - self.matrix


def pairwise_dissimilarity(
    profiles: ProfileStore, candidates: list[str] | tuple[str, ...]
) -> PairwiseDissimilarity:
    """Binary (candidate, value pair) incidence gives every intersection size in one
    matrix product"""
    pairs = [profiles.value_pairs(candidate) for candidate in candidates]
    vocabulary = {pair: i for i, pair in enumerate(sorted(set().union(*pairs)))}
    incidence = np.zeros((len(candidates), len(vocabulary)))
    for q, held in enumerate(pairs):
        incidence[q, [vocabulary[pair] for pair in held]] = 1.0
    intersections = incidence @ incidence.T
    sizes = incidence.sum(axis=1)
    unions = sizes[:, None] + sizes[None, :] - intersections
    with np.errstate(invalid="ignore", divide="ignore"):
        matrix = np.where(unions > 0, 1.0 - intersections / unions, 0.0)
    np.fill_diagonal(matrix, 0.0)
    return PairwiseDissimilarity(matrix)
