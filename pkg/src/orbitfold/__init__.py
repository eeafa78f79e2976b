"""Orbit partitions, intersection orbital graphs and Mathieu-group fingerprints."""

from .errors import OrbitfoldError
from .group import (
    PermutationGroup,
    alternating_group,
    cyclic_group,
    induced_action,
    is_k_homogeneous,
    is_primitive,
    is_transitive,
    load_group,
    orbitals,
    orbitals_on,
    point_orbits,
    pointwise_stabilizer,
    projective_linear_group,
    subset_orbits,
    suborbits,
    symmetric_group,
)
from .backtrack import setwise_stabilizer
from .iog import (
    CliqueUnionGraph,
    SimpleGraph,
    intersection_orbital_graph,
    k_intersection_graph,
    recognize_clique_union,
    satisfies_quadratic_relation,
)
from .partition import Partition, Shape, meet, shape_lookup
from .perm import Permutation, PointSet, parse_permutation
from .spectral import SpectrumSummary, aut_order, char_poly_exact, ds_scan, invariants, spectrum_from_shape

__version__ = "0.1.0"
