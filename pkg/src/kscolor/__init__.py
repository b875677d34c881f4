"""Kochen-Specker colorability toolkit for integer 3-vectors."""

from .vectors import (
    VectorSet,
    apply_symmetry,
    build_Q,
    build_Qn,
    canonicalize,
    enumerate_S,
    is_orthogonal,
    is_well_signed,
    norm_sq,
    radical,
)
from .orthograph import OrthoGraph, build_graph, graph_stats
from .solver import (
    SolveResult,
    export_cnf,
    solve,
    solve_bruteforce,
    solve_set,
    verify_coloring,
)
from .certificate import (
    Certificate,
    load_bundled_certificate,
    parse_certificate,
    verify_certificate,
)
from .ffproj import (
    bezout_check,
    enumerate_projections,
    project_mod_p,
    reduce_set_mod_p,
    restricted_ks_search,
    search_ba_coloring,
)

__version__ = "0.1.0"
