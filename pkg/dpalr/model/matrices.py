"""Sparse candidate profile matrices and diversity distributions.

A candidate profile matrix has one row per value of a dimension and one column per
candidate. Columns hold at most a handful of entries while dimensions can have tens of
thousands of values, so matrices are stored as scipy compressed sparse column arrays
and only ever multiplied with vectors.
"""

from dataclasses import dataclass
from functools import cached_property
import numpy as np
from numpy.typing import NDArray
from scipy import sparse

from .candidates import CandidateSet
from .profiles import ProfileStore


@dataclass(frozen=True)
class CandidateProfileMatrix:
    """0/1 matrix of shape (Z_h, m) with entry (z, q) present iff candidate q holds
    value z in the dimension. Entries are stored as coordinate tuples."""

    dimension: int
    shape: tuple[int, int]
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    @cached_property
    def sparse(self) -> sparse.csc_array:
        data = np.ones(len(self.rows), dtype=float)
        return sparse.csc_array(
            (data, (np.array(self.rows, dtype=np.int64), np.array(self.cols, dtype=np.int64))),
            shape=self.shape,
        )

    @cached_property
    def dense(self) -> NDArray:
        return self.sparse.toarray()

    @property
    def entries(self) -> frozenset[tuple[int, int]]:
        return frozenset(zip(self.rows, self.cols))

    @property
    def m(self) -> int:
        return self.shape[1]


@dataclass(frozen=True)
class DiversityDistribution:
    dimension: int
    vector: NDArray


def build_candidate_profile_matrix(
    candidates: CandidateSet, profiles: ProfileStore, dimension: int
) -> CandidateProfileMatrix:
    """One entry per (candidate, held value) pair, columns in candidate order.

    :raises IndexError: if the dimension is out of range
    """
    size = profiles.size(dimension)
    rows, cols = [], []
    for q, candidate in enumerate(candidates.candidates):
        for z in sorted(profiles.values(candidate, dimension)):
            rows.append(z)
            cols.append(q)
    return CandidateProfileMatrix(dimension, (size, candidates.m), tuple(rows), tuple(cols))


def diversity_distribution(
    matrix: CandidateProfileMatrix, decision: NDArray
) -> DiversityDistribution:
    """r = C y, for a binary decision the number of selected candidates holding each
    value"""
    decision = np.asarray(decision, dtype=float)
    if decision.shape != (matrix.m,):
        raise ValueError(
            f"decision of shape {decision.shape} does not match {matrix.m} candidates"
        )
    return DiversityDistribution(matrix.dimension, matrix.sparse @ decision)
