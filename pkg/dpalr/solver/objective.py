"""Diversity preference matching objective: the sum over profile dimensions of the
cosine similarity between a user's preference counts and the diversity distribution
of the selected candidates."""

from dataclasses import dataclass, replace
from functools import cached_property
import numpy as np
from numpy.typing import NDArray
from scipy import sparse

from ..model import (
    DiversityPreference,
    CandidateProfileMatrix,
    UserInstance,
    normalize_preference,
)

NORM_KINK = 1e-12


class NoIncludedDimensionsError(ValueError):
    """Raised when a user has a zero preference in every profile dimension"""


@dataclass(frozen=True)
class DPAContext:
    """The included dimensions of one user: unit preference directions and sparse
    candidate profile matrices, aligned with each other."""

    included: list[int]
    excluded: list[int]
    matrices: list[sparse.csc_array]
    unit_prefs: list[NDArray]
    m: int

    @property
    def h_effective(self) -> int:
        return len(self.included)

    @cached_property
    def empty_dimensions(self) -> list[int]:
        """Included dimensions in which no candidate holds a value. They score zero
        for every selection."""
        return [h for h, matrix in zip(self.included, self.matrices) if matrix.nnz == 0]

    def solvable(self) -> "DPAContext":
        """The context without its empty dimensions"""
        if not self.empty_dimensions:
            return self
        keep = [i for i, matrix in enumerate(self.matrices) if matrix.nnz > 0]
        return replace(
            self,
            included=[self.included[i] for i in keep],
            matrices=[self.matrices[i] for i in keep],
            unit_prefs=[self.unit_prefs[i] for i in keep],
        )

    @cached_property
    def compact_matrices(self) -> list[NDArray]:
        """Dense matrices restricted to values held by some candidate"""
        compact = []
        for matrix in self.matrices:
            occupied = np.unique(matrix.indices)
            compact.append(matrix[occupied, :].toarray())
        return compact

    @cached_property
    def compact_prefs(self) -> list[NDArray]:
        prefs = []
        for matrix, pref in zip(self.matrices, self.unit_prefs):
            prefs.append(pref[np.unique(matrix.indices)])
        return prefs


def get_context(
    prefs: list[DiversityPreference], matrices: list[CandidateProfileMatrix]
) -> DPAContext:
    """:raises NoIncludedDimensionsError: if every preference is zero"""
    if len(prefs) != len(matrices):
        raise ValueError("need one candidate profile matrix per preference")
    if len({matrix.m for matrix in matrices}) > 1:
        raise ValueError("candidate profile matrices disagree on the candidate count")
    for pref, matrix in zip(prefs, matrices):
        if pref.dimension != matrix.dimension or pref.counts.size != matrix.shape[0]:
            raise ValueError(f"preference and matrix of dimension {pref.dimension} do not align")

    included = [i for i, pref in enumerate(prefs) if not pref.is_zero]
    if not included:
        raise NoIncludedDimensionsError(
            f"user {prefs[0].user if prefs else '?'} has no friend with any profile value"
        )
    return DPAContext(
        included=[prefs[i].dimension for i in included],
        excluded=[pref.dimension for pref in prefs if pref.is_zero],
        matrices=[matrices[i].sparse for i in included],
        unit_prefs=[normalize_preference(prefs[i]) for i in included],
        m=matrices[0].m,
    )


def get_instance_context(instance: UserInstance) -> DPAContext:
    return get_context(instance.preferences, instance.matrices)


def cosine_terms(context: DPAContext, y: NDArray) -> NDArray:
    """Per included dimension cosine between preference and C y, zero where C y = 0"""
    y = np.asarray(y, dtype=float)
    if y.shape != (context.m,):
        raise ValueError(f"decision of shape {y.shape} does not match m={context.m}")
    terms = np.zeros(context.h_effective)
    for i, (matrix, pref) in enumerate(zip(context.matrices, context.unit_prefs)):
        r = matrix @ y
        norm = np.linalg.norm(r)
        if norm >= NORM_KINK:
            terms[i] = pref @ r / norm
    return terms


def context_objective(context: DPAContext, y: NDArray) -> float:
    return float(cosine_terms(context, y).sum())


def dpa_objective(
    prefs: list[DiversityPreference],
    matrices: list[CandidateProfileMatrix],
    y: NDArray,
) -> float:
    """Sum over included dimensions of cos(d_h, C_h y). Dimensions with a zero
    preference are left out and a dimension with C_h y = 0 contributes zero.

    :raises NoIncludedDimensionsError: if every preference is zero
    """
    return context_objective(get_context(prefs, matrices), y)


def cosine_gradient(context: DPAContext, y: NDArray) -> NDArray:
    """Gradient of the sum of cosines, zero contribution where C y = 0"""
    gradient = np.zeros(context.m)
    for matrix, pref in zip(context.matrices, context.unit_prefs):
        r = matrix @ y
        norm = np.linalg.norm(r)
        if norm >= NORM_KINK:
            gradient += (matrix.T @ pref) / norm - (pref @ r) * (matrix.T @ r) / norm**3
    return gradient
