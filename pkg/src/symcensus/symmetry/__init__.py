"""Automorphism groups, canonical forms and symmetry classification."""

from .analysis import (
    NotAutomorphismError, SLevelError, SLevelReport, Transitivity, one_regular, s_level,
    transitivity, validate_stabilizer,
)
from .cayley import (
    LabelingMismatch, RegularSubgroupResult, cayley_from_regular, find_normal_regular_subgroup,
    find_regular_subgroup, is_cayley, is_normal_cayley,
)
from .refinement import OrderedPartition, is_equitable, refine
from .search import (
    DEFAULT_NODE_LIMIT, CanonicalForm, IsomorphismResult, ResourceLimitExceeded, automorphism_group,
    canonical_form, is_isomorphic,
)
