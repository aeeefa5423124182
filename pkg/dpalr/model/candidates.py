from dataclasses import dataclass, replace
from functools import cached_property
import math
import numpy as np
from numpy.typing import NDArray


@dataclass(frozen=True)
class CandidateSet:
    """A user's m candidate friends with their linkage likelihoods, in the order the
    candidates were supplied."""

    user: str
    candidates: tuple[str, ...]
    likelihoods: tuple[float, ...]

    def __post_init__(self):
        if len(self.candidates) != len(self.likelihoods):
            raise ValueError(f"{self.user}: one likelihood per candidate is required")
        if len(set(self.candidates)) != len(self.candidates):
            raise ValueError(f"{self.user}: candidate ids must be distinct")
        if self.user in self.candidates:
            raise ValueError(f"{self.user}: a user cannot be their own candidate")
        if any(not math.isfinite(ll) for ll in self.likelihoods):
            raise ValueError(f"{self.user}: likelihoods must be finite")

    @property
    def m(self) -> int:
        return len(self.candidates)

    @cached_property
    def likelihood_array(self) -> NDArray:
        return np.array(self.likelihoods, dtype=float)

    def ranked_indices(self) -> NDArray:
        """Candidate positions by descending likelihood, ties by position"""
        return np.lexsort((np.arange(self.m), -self.likelihood_array))

    def truncate(self, size: int | None) -> "CandidateSet":
        """Keep the size most likely candidates, preserving the supplied order"""
        if size is None or size >= self.m:
            return self
        keep = np.sort(self.ranked_indices()[:size])
        return replace(
            self,
            candidates=tuple(self.candidates[i] for i in keep),
            likelihoods=tuple(self.likelihoods[i] for i in keep),
        )
