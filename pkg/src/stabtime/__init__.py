"""Stabilization time of the 01 -> 10 evolution on random binary strings."""

__version__ = "0.1.0"

from .evolution import (  # noqa: E402
    BitString,
    CoreDecomposition,
    is_stable,
    parse_bitstring,
    stabilize,
    step,
    strip_to_core,
)
from .exactlaw import (  # noqa: E402
    Pmf,
    law_by_enumeration,
    law_by_mixture,
    mixture_coefficients,
    special_law_by_dp,
    special_law_by_enumeration,
)
from .limits import Chi3Half, Gaussian, NuLambda, ShiftedNuLambda  # noqa: E402
from .montecarlo import Critical, Fixed, Threshold, ks_statistic, run_experiment  # noqa: E402
from .walk import stabilization_time_closed_form, walk_profile  # noqa: E402
from .young import (  # noqa: E402
    cut_corners,
    depth,
    stabilization_time_via_depth,
    young_diagram,
)
