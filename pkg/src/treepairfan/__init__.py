"""Ultrametric cones, tree-pair fans, and tree-pair rigidity certificates."""

from .clade_graphs import (
    CladeGraph,
    clade_graph,
    induced_hom,
    restricted_clade_graph,
)
from .cones import (
    CIPoset,
    CladeSet,
    LinearSystem,
    cip,
    clade_set_of,
    dim_KS,
    f_system,
    in_cone_KS,
    in_trop_cm2,
    intersect_faces,
    is_tp_face,
)
from .rigidity import (
    Certificate,
    HennebergMove,
    SimpleGraph,
    build_certificate,
    generic_rigidity_rank,
    henneberg_apply,
    henneberg_decompose,
    is_laman,
    min_rigid_by_search,
    pebble_rank,
    verify_certificate,
)
from .trees import (
    RootedTree,
    WeightedRootedTree,
    enumerate_binary_trees,
    enumerate_rooted_trees,
    from_clades,
    from_newick,
    star_tree,
    to_newick,
)
from .ultrametrics import (
    PairVector,
    cone_decomposition,
    evaluate,
    in_cone_KT,
    is_ultrametric,
    m_matrix,
    m_vector,
    topology,
    v_vector,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
