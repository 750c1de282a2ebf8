"""Partial generalized polygons, their free completions, confined gadgets, a
tree codec built on them, and finite-depth free chamber systems over Coxeter
diagrams."""

from polyforge.completion import (
    CompletionTrace,
    Degeneracy,
    completion_round,
    free_completion,
    is_degenerate,
    pending_pairs,
)
from polyforge.confinement import (
    HyperfreeKind,
    HyperfreeTuple,
    confined_copies_in_completion,
    confined_core,
    hyperfree_tuples,
    is_confined,
)
from polyforge.corpus import random_partial_polygon, random_tree
from polyforge.coxeter import (
    CoxeterDiagram,
    GroupElement,
    adjacent_in_ball,
    ball,
    coset_min_rep,
    has_spherical_rank3,
    reduce_word,
    words_equal,
)
from polyforge.errors import *  # noqa: F401,F403
from polyforge.gadgets import GadgetPair, cycle_census, enumerate_copies, gadget_A, gadget_B
from polyforge.incidence import (
    IncidenceStructure,
    PartialPolygon,
    Sort,
    build_structure,
    diameter,
    distance,
    girth,
    is_generalized_polygon,
    is_partial_polygon,
    valency,
)
from polyforge.io import export_dot
from polyforge.kernels import BACKEND
from polyforge.chambers import BuildParams, ChamberSystem, build, check_conditions, residue
from polyforge.suite import RunConfig, run_suite
from polyforge.tree_codec import (
    EncodedPolygon,
    Tree,
    decode,
    encode,
    reduction_check,
    trees_isomorphic,
)

__version__ = "0.1.0"
