"""Sparse r-uniform hypergraphs: freeness checks, peeling, the density-increment
loop, exact Turán numbers at small n, greedy packings and known limits."""

from .hypergraph import (
    Hypergraph,
    ParseError,
    build,
    codegree,
    complete,
    delete_vertices,
    fano,
    link,
    parse,
    serialize,
    union_size,
)
from .freeness import (
    BudgetExhausted,
    CodegreeRule,
    Configuration,
    ConstraintFamily,
    FreenessConstraint,
    NotFreeError,
    enumerate_violations,
    find_violation,
    is_family_free,
    packing_family,
    property_family,
    witness_family,
)
from .cleanup import peel, peel_bound
from .increment import (
    codegree_upper_check,
    crucial_constants,
    density_increment,
    structural_analyze,
)
from .extremal import (
    chain_check,
    exact_max,
    lower_bound_from_witness,
    upp_size_check,
)
from .packing import greedy_pack, is_maximal
from .limits import bes_bounds, known_limit

__version__ = "0.1.0"
