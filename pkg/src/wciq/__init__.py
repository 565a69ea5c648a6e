"""Combinatorics of weighted complete intersection data.

Given a tuple of positive integer weights and a tuple of degrees, this
package computes the associated combinatorial invariants (singular and
base complexes, Stanley-Reisner presentations), decides regularity and
triviality conditions, builds admissible injection families and the
weighted simplicial maps they induce, searches for and constructs nef
partitions, and realizes arbitrary finite simplicial complexes as
singular complexes of weight tuples.

Everything is exact integer arithmetic and deterministic; the only
tunables are resource caps.
"""

from wciq.arith import (
    DEFAULT_DP_CAP,
    UNKNOWN,
    DegreeTuple,
    WeightTuple,
    is_representable,
    representable_degrees,
)
from wciq.complexes import (
    Complex,
    SRPresentation,
    WeightedComplex,
    base_complex,
    minimal_nonfaces,
    singular_complex,
    sr_presentation,
)
from wciq.errors import (
    InputError,
    InternalConsistencyError,
    PreconditionFailure,
    ResourceLimitError,
)
from wciq.maps import (
    AdmissibleFamily,
    WeightedMap,
    build_admissible_family,
    find_noncontracting_map,
    induced_face_map,
    validate_weighted_map,
    verify_poset_map,
    vertex_fibers,
)
from wciq.nef import (
    NefPartition,
    classify_partition,
    construct_strong_nef_partition,
    fano_index,
    find_nef_partition,
)
from wciq.realize import (
    contraction_instance,
    realize_map_instance,
    realize_weights,
    skeleton,
    verify_realization,
)
from wciq.regularity import (
    RegularityReport,
    is_linear_cone,
    is_strictly_regular,
    is_wellformed_wps,
    pair_is_trivial,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_DP_CAP",
    "UNKNOWN",
    "DegreeTuple",
    "WeightTuple",
    "is_representable",
    "representable_degrees",
    "Complex",
    "SRPresentation",
    "WeightedComplex",
    "base_complex",
    "minimal_nonfaces",
    "singular_complex",
    "sr_presentation",
    "InputError",
    "InternalConsistencyError",
    "PreconditionFailure",
    "ResourceLimitError",
    "AdmissibleFamily",
    "WeightedMap",
    "build_admissible_family",
    "find_noncontracting_map",
    "induced_face_map",
    "validate_weighted_map",
    "verify_poset_map",
    "vertex_fibers",
    "NefPartition",
    "classify_partition",
    "construct_strong_nef_partition",
    "fano_index",
    "find_nef_partition",
    "contraction_instance",
    "realize_map_instance",
    "realize_weights",
    "skeleton",
    "verify_realization",
    "RegularityReport",
    "is_linear_cone",
    "is_strictly_regular",
    "is_wellformed_wps",
    "pair_is_trivial",
    "__version__",
]
