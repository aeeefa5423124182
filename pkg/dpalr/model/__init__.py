from .graph import SocialGraph, UnknownUserError, canonical_edge
from .profiles import ProfileStore
from .candidates import CandidateSet
from .preference import (
    DiversityPreference,
    ZeroPreferenceError,
    compute_diversity_preference,
    compute_diversity_preferences,
    normalize_preference,
)
from .matrices import (
    CandidateProfileMatrix,
    DiversityDistribution,
    build_candidate_profile_matrix,
    diversity_distribution,
)
from .instance import UserInstance, get_user_instance
