"""Exact recognition of square graphs under the gluing product."""

from .graph import (
    Graph,
    GraphError,
    are_isomorphic,
    canonical_code,
    chromatic_number,
    closed_neighborhood,
    components,
    enumerate_automorphisms,
    enumerate_involutions,
    has_twin_pair,
    is_connected,
    is_vertex_chromatic_critical,
    make_graph,
    open_neighborhood,
)
from .gluing import (
    LabelingError,
    PartiallyLabeledGraph,
    TwinMap,
    drop_labels,
    glue,
    predicted_degree,
    square,
    unlabel,
)
from .squareness import (
    ButterflyCertificate,
    Classification,
    CutSetCertificate,
    DecidedBy,
    Verdict,
    check_certificate,
    cut_set_square,
    enumerate_roots,
    extract_root,
    is_square,
    prune_to_square,
    pruned_circulant_edge_count,
)
from .families import FamilySpec, classify_family, generate, known_root
from .products import ProductKind, isomorphic_component_pair, join_is_square, lift_certificate, product

__all__ = [name for name in dir() if not name.startswith("_")]
