"""Configuration constants for polytri."""
import logging
import os
from pathlib import Path


VERSION = "1.0.0"

# =============================================================================
# CAPACITY BOUNDS
# =============================================================================

MAX_TREE_VERTICES = 20          # enumerate_trees
MAX_TREE_COORDS = 12            # trees listed together with Loday points
MAX_TAMARI_CLOSURE = 10         # cached reachability bitsets
MAX_PARKING_LENGTH = 8          # brute-force parking enumeration
MAX_ASSOC_DIM = 6               # associahedron construction (16807 simplices)
MAX_ASSOC_GEOMETRY_DIM = 4      # exact geometric validation of K^n
MAX_PERM_DIM = 3                # permutohedron construction and validation
MAX_OFF_DIM = 3                 # OFF meshes are 3-D
MAX_COUNT_N = 30                # counts table

# =============================================================================
# VALIDATION DEFAULTS
# =============================================================================

DEFAULT_SEED = 42
DEFAULT_INTERIOR_SAMPLES = 50   # per simplex
DEFAULT_HULL_SAMPLES = 200
SAMPLE_WEIGHT_MAX = 1000        # barycentric weights are drawn from 1..SAMPLE_WEIGHT_MAX

# =============================================================================
# EXPORT
# =============================================================================

OFF_DECIMALS = 9
GOLDEN_DIR = Path(__file__).parent / "golden" / "v1"

# =============================================================================
# LOGGING
# =============================================================================

LOG_LEVEL_ENV = "POLYTRI_LOG_LEVEL"
DEFAULT_LOG_LEVEL = "WARNING"


def log_level() -> int:
    """Log level from POLYTRI_LOG_LEVEL, WARNING when unset or unknown."""
    name = os.environ.get(LOG_LEVEL_ENV, DEFAULT_LOG_LEVEL).upper()
    level = logging.getLevelName(name)
    return level if isinstance(level, int) else logging.WARNING
