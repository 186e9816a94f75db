"""Powers and roots of directed graphs, and their link to graph isomorphism."""

from .digraph import (
    Digraph,
    VertexBijection,
    disjoint_union,
    induced,
    is_isomorphism,
    iterated_neighborhood,
    relabel,
    weak_components,
)
from .isomorphism import Coloring, find_isomorphism, is_isomorphic, refine_colors
from .power import power, verify_root, walk_power_oracle
from .reduction import (
    CoreWitness,
    ReductionInstance,
    prop1_root,
    reduce,
    subdivide,
    suspend,
    theorem2_reduction,
)
from .rootsearch import SearchOutcome, SearchStatus, backtracking_root_search, exhaustive_roots
from .subdivision import (
    FreePath,
    FreePathCover,
    decide_root_in_class,
    extract_isomorphisms,
    find_core,
    lemma1_free_path,
    propagate_cover,
)

__all__ = [
    "Coloring",
    "CoreWitness",
    "Digraph",
    "FreePath",
    "FreePathCover",
    "ReductionInstance",
    "SearchOutcome",
    "SearchStatus",
    "VertexBijection",
    "backtracking_root_search",
    "decide_root_in_class",
    "disjoint_union",
    "exhaustive_roots",
    "extract_isomorphisms",
    "find_core",
    "find_isomorphism",
    "induced",
    "is_isomorphic",
    "is_isomorphism",
    "iterated_neighborhood",
    "lemma1_free_path",
    "power",
    "propagate_cover",
    "prop1_root",
    "reduce",
    "refine_colors",
    "relabel",
    "subdivide",
    "suspend",
    "theorem2_reduction",
    "verify_root",
    "walk_power_oracle",
    "weak_components",
]
