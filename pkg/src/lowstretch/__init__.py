"""Low-stretch spanning trees from hierarchical star partitions."""
from .errors import (DisconnectedError, InternalConsistencyError, InvalidTreeError, ParseError,
                     PreconditionError)
from .graph import Graph, ball, components, radius, shortest_path, shortest_path_tree, sssp
from .tree import SpanningTree, tree_distance, validate_spanning_tree
from .schedule import Params, epsilon_for, iterated_log, log_star, phi, scale_gap_k
from .cones import ConeContext, cone_ball, cone_distance
from .cone_cut import cut_cone, sample_truncated_radius, select_portal
from .star import StarDecomposition, build_queues, star_partition
from .weighted import AugmentedGraph, contract_short_edges, expand_tree, split_portal
from .hierarchy import BuildTrace, build_low_stretch_tree, hierarchical_star_partition
from .harness import (audit_star_partition, brute_force_best_tree, decomposition_stretch_profile,
                      expected_stretch_mc, stretch_report)
from .formats import format_graph, generate, parse_graph

__version__ = "0.1.0"
