"""Bent functions from plateaued blocks, subspace partitions, spreads and transversals."""

from .anf import parse_anf
from .boolfun import (
    AnfPolynomial,
    BooleanFunction,
    Classification,
    WalshSpectrum,
    anf_from_table,
    apply_linear_change,
    classify,
    degree,
    inverse_walsh,
    is_bent,
    table_from_anf,
    walsh_transform,
)
from .errors import BentkError
from .gf2 import AffineSubspace, canonicalize, enumerate_subspaces, gaussian_binomial
from .hypermatch import (
    Count,
    Hypergraph,
    PerfectMatching,
    Spread,
    SubspacePartition,
    build_flat_hypergraph,
    build_partition_hypergraph,
    build_spread_hypergraph,
    count_perfect_matchings,
    enumerate_perfect_matchings,
)
from .kconstruct import (
    KInstance,
    build_plateaued,
    construct_from_blocks,
    construct_k,
    construct_mm,
    enumerate_k,
    random_instance,
)
from .transversals import (
    CayleyTable,
    Transversal,
    count_transversals,
    enumerate_transversals,
    lift_transversal,
    recursive_spread,
    spread_from_transversal,
)

__version__ = "0.1.0"
