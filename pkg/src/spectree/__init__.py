"""Exact tree spectra, spectral-distance conjecture surveys and cospectral families."""

from .coalescence import (
    coalesce,
    cospectrally_rooted,
    find_cospectrally_rooted_pairs,
    generate_family,
)
from .generate import enumerate_free_trees, enumerate_rooted_trees, pair_count
from .graph import (
    RootedTree,
    TreeGraph,
    canonical_code,
    decode_graph6,
    degree_sequence,
    encode_graph6,
    from_edges,
)
from .measures import ConjectureId, MeasureConfig, conjecture_verdict, degree_power, distance
from .spectra import (
    CharPoly,
    MatrixKind,
    RootEnclosure,
    char_poly,
    cospectral,
    lambda1,
    largest_root,
    q1,
    root_deleted_char_poly,
)
from .survey import compute_invariants, emit_table, load_cache, store_cache, survey

__version__ = "0.1.0"
