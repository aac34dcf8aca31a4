"""
Configuration constants for SignQuery.
"""

# =============================================================================
# CONSTANTS
# =============================================================================

# Algorithms
ALGORITHM_TREECUTTER = "treecutter"
ALGORITHM_STARMAKER = "starmaker"
ALGORITHM_TREELETSTAR = "treeletstar"
ALGORITHM_SPANNING_TREE = "spanning-tree-only"

ALL_ALGORITHMS = [
    ALGORITHM_TREECUTTER,
    ALGORITHM_STARMAKER,
    ALGORITHM_TREELETSTAR,
    ALGORITHM_SPANNING_TREE,
]

# Algorithms taking the treelet height parameter
PARAMETERISED_ALGORITHMS = [ALGORITHM_TREECUTTER, ALGORITHM_TREELETSTAR]

# Treelet height
MIN_K = 2
DEFAULT_K = 3

# Label perturbation
FLIP_MODE_IID = "iid"
FLIP_MODE_FACT1 = "fact1"
ALL_FLIP_MODES = [FLIP_MODE_IID, FLIP_MODE_FACT1]
MAX_FLIP_PROBABILITY = 0.5  # exclusive

# BFS neighbour visitation
NEIGHBOR_ORDER_INPUT = "input"
NEIGHBOR_ORDER_SHUFFLED = "shuffled"

# Experiment defaults
DEFAULT_TRIALS = 10
DEFAULT_MASTER_SEED = 20120626
DEFAULT_POSITIVE_CLASS = "minority"

# Generator
GENERATOR_FRACTION_TOLERANCE = 0.02

# Ratings similarity graph: entries with |cosine| below the threshold are zeroed
SIMILARITY_THRESHOLD = 0.1
SIMILARITY_CHUNK_ROWS = 512

# Monte Carlo acceptance margin (in standard errors)
SIGMA_MARGIN = 3.0

# CSV output, fixed column order
CSV_COLUMNS = [
    "trial",
    "mistakes",
    "test_count",
    "query_count",
    "f_measure",
    "max_circuit",
    "mean_circuit",
    "elapsed_ms",
    "optimality_factor",
]

# Output file names
EDGES_FILE_SUFFIX = ".edges.txt"
TRIALS_FILE_SUFFIX = ".trials.csv"
SUMMARY_FILE_SUFFIX = ".summary.json"
CLUSTERS_FILE_SUFFIX = ".clusters.txt"
LABELS_FILE_SUFFIX = ".labels.json"

# Process exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TRIAL_FAILURE = 2
