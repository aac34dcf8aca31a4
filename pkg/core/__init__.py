"""
Core graph, labeling, learning and experiment logic for SignQuery.
"""

from .edge_list import EdgeListLoader, LoadReport, dump_edge_list, extract_largest_component, load_edge_list
from .spanning_tree import bfs_spanning_tree, graph_diameter, tag_parities, tree_path_parity
from .labeling import LabelAssignment, TwoClustering, consistent_labels, p_stochastic_flip
from .oracle import LabelOracle
from .circuits import circuit_of, execute_plan, flip_bound, plan_block_queries
from .treecutter import decompose, extract_treelet, spanning_tree_run, treecutter_run
from .starmaker import decompose_stars, extract_star, starmaker_run
from .treeletstar import build_contraction_graph, treeletstar_run
from .generator import clean_directed_snapshot, generate_planted_graph
from .metrics import f_measure, graph_stats
from .experiment_runner import ExperimentRunner, run_experiment
from .results_store import ResultStore
