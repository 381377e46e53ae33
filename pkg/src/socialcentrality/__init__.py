"""Social Centrality: hierarchy- and community-aware node importance.

k-truss decomposition supplies the hierarchy (node trussness) and an
approximate intra/inter-community split of ties; scores combine sociability,
bonding and bridging potentials.  Baseline centralities, ranking metrics and
synthetic graph generators live alongside.
"""

from ._backend import BACKEND
from .graph import (
    IngestError,
    MembershipRecord,
    WeightedGraph,
    build_from_arrays,
    build_from_edge_list,
    load_graph,
    neighbors,
    project_coauthorship,
    project_email,
    read_edge_list,
    read_memberships,
    write_edge_list,
)
from .baselines import (
    CentralityVector,
    ConvergenceError,
    DistanceConvention,
    betweenness_centrality,
    closeness_centrality,
    degree_centrality,
    eigenvector_centrality,
    laplacian_centrality,
    network_constraint,
)
from .evaluation import (
    GroundTruth,
    RankedList,
    evaluate,
    jaccard_topk,
    precision_recall,
    rank_scores,
    rank_values,
    rmse_topk,
    spearman,
    spearman_rho,
)
from .generators import GeneratorSpec, generate
from .social import SCConfig, SCScores, bonding, bridging, sc_com_score, sc_score, sociability
from .truss import (
    HierarchyPartition,
    TrussDecomposition,
    edge_support,
    hierarchy_levels,
    is_intra_community,
    k_truss_decompose,
)

__version__ = "0.1.0"
