from .scope import AllFriends, RecentFriends, FriendScope
from .solver import SolverConfig, RandomInit, FixedInit, InitMode
from .methods import (
    MethodConfig,
    TopKConfig,
    DPALRConfig,
    MMRConfig,
    MSDConfig,
    DPPConfig,
    DiRecConfig,
    DPAMMRConfig,
    METHOD_NAMES,
    THETA_METHODS,
    PLAIN_METHODS,
    method_sort_key,
    method_config,
)
from .synth import SynthSpec, AcceptanceModel
from .manifest import RunManifest, MISSING_TRUTH_POLICIES
