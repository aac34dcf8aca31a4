"""
Environment-driven settings and file paths.
"""

import os

# Output directory used when --output is not given
OUTPUT_DIR = os.environ.get("SIGNQUERY_OUTPUT_DIR", "results")

# Logging
LOG_FILE = os.environ.get("SIGNQUERY_LOG_FILE")
LOG_LEVEL = os.environ.get("SIGNQUERY_LOG_LEVEL", "INFO")

# Trial workers (1 runs trials in-process)
WORKERS = int(os.environ.get("SIGNQUERY_WORKERS", "1"))

# Optional dataset snapshots for the table-statistics checks
SLASHDOT_PATH = os.environ.get("SIGNQUERY_SLASHDOT")
EPINIONS_PATH = os.environ.get("SIGNQUERY_EPINIONS")
