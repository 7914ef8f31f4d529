"""The lattice of bipartitional relations.

Construction and enumeration of the relations whose complement is also
transitive, their lattice structure (join by transitive closure, meet by
complement duality, covers and rank), the code-vector coordinates of the
distributive compatible sublattices, minimal-change permutation listings,
the chain enumeration with its critical-cell analysis, and Moebius values
of arbitrary intervals, everything cross-checked against brute-force
oracles at desk scale.
"""

__version__ = "0.1.0"

from .bipcore import (
    MAX_N,
    OrderedBipartition,
    OrderedPartition,
    Relation,
    bip_count,
    complement,
    enumerate_all,
    from_json_dict,
    from_ordered_bipartition,
    incomparability_classes,
    is_bipartitional,
    ordered_set_partitions,
    parse_bipartition,
    parse_partition_text,
    parse_text,
    to_json_dict,
    to_ordered_bipartition,
    to_text,
    transitive_closure,
)
from .codes import (
    JoinIrreducible,
    SigmaInterval,
    chain_permutation,
    code_of,
    code_to_bip,
    compress,
    decompress,
    is_compatible,
    is_valid_code,
    join_irreducibles,
    sigma_elements,
    sublattice,
    valid_codes,
)
from .errors import (
    BipError,
    InvalidCode,
    MalformedPartition,
    NoCompatiblePermutation,
    NotAnInterval,
    NotBipartitional,
    NotCompatible,
    NotIrregular,
    NotMaximalChain,
    NotRegular,
    SizeLimitExceeded,
    SizeMismatch,
    UnionNotFull,
    UnknownSuite,
)
from .intervals import (
    Factor,
    Factorization,
    IntervalClass,
    IntervalContext,
    choose_linext,
    classify,
    factorize_regular,
    interval_chain_enumeration,
    interval_critical_cells,
    interval_join_irreducibles,
    mobius_bruteforce,
    mobius_closed_form,
    restrict,
)
from .jt import (
    DecompositionEntry,
    JTListing,
    check_trotter_property,
    finest_common_coarsening,
    jt_decomposition,
    jt_permutations,
    jt_refining,
    underlined_rep,
)
from .lattice import (
    CoverMove,
    HasseDiagram,
    bottom,
    covers,
    hasse_diagram,
    interval_elements,
    join,
    leq,
    leq_structural,
    maximal_chains,
    meet,
    rank,
    top,
)
from .morse import (
    CriticalCell,
    FullLatticeContext,
    IntervalFamily,
    LinearExtension,
    MaximalChain,
    chain_contribution,
    critical_cells_full,
    default_linext,
    enumerate_chains_full,
    enumerate_chains_sigma,
    homotopy_description,
    j_intervals,
    reduced_euler_characteristic,
    skipped_intervals,
)
