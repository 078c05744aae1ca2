"""Universal subspaces of Lie group representations.

A subspace V of a representation U is universal when every G-orbit in U
meets V.  The package computes the topological obstruction classes that
force universality, searches orbits numerically for the normalized distance
to V, and builds constructive non-universality witnesses for solvable
groups.
"""

from .errors import ConfigError, UnivsubError
from .groups import (
    SU2,
    SU3,
    Complexified,
    GroupElement,
    Product,
    SU2Extension,
    Torus,
    UpperTriangular,
    build_root_system,
    weyl_group,
)
from .obstruction import (
    CohomologyValue,
    ObstructionReport,
    euler_characteristic_quotient,
    flag_report,
    kunneth_top_chern,
    localization_number,
    product_obstruction_report,
    su2_obstruction_report,
    tangent_weights,
)
from .representations import (
    Representation,
    Subspace,
    adjoint,
    complexified_adjoint,
    defining,
    direct_sum,
    su2_irrep,
    t_invariant_hyperplanes,
    twist,
    weight_decomposition,
)
from .solvable import SolvableFlag, SolvableWitness, solvable_flag, solvable_witness
from .subalgebra import (
    SubalgebraSpec,
    closedness_criterion,
    contains_positive_system,
    is_maximal_rank,
    normalizer_subalgebra,
    rank_of_compact_subalgebra,
    subalgebra_catalog,
)
from .universality import SearchConfig, Verdict, levi_restriction_check, normalized_orbit_distance, universality_verdict

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
