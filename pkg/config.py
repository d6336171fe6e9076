"""
Configuration for the orbifold projective line toolkit.

Values can be overridden from the environment or a local .env file:
- GLDIM_THREADS: worker threads for `scan` (default 4)
- GLDIM_LOG_LEVEL: logging level (default INFO)
- GLDIM_OUTPUT_DIR: where scripts write their CSV checkpoints
"""

import os
from fractions import Fraction

from dotenv import load_dotenv

load_dotenv()

# Paths
BASE_DIR = os.path.dirname(os.path.abspath(__file__))
DATA_DIR = os.path.join(BASE_DIR, "data")
INTERMEDIATE_DIR = os.environ.get("GLDIM_INTERMEDIATE_DIR", os.path.join(DATA_DIR, "intermediate"))
OUTPUT_DIR = os.environ.get("GLDIM_OUTPUT_DIR", os.path.join(DATA_DIR, "output"))

# Logging
LOG_LEVEL = os.environ.get("GLDIM_LOG_LEVEL", "INFO").upper()

# Parallel scan
THREADS = int(os.environ.get("GLDIM_THREADS", "4"))

# Stability parameter used when --tau is omitted (tau = i)
DEFAULT_TAU = (Fraction(0), Fraction(1))

# Catalog window: |l| <= L for line bundles, torsion lengths <= N.
# None for N means 2 * max(a_i).
DEFAULT_WINDOW_L = 2
DEFAULT_WINDOW_N = None

# epsilon-family multipliers t for tau = t*i
LIMIT_FAMILY_TS = (1, 10, 100, 1000)

# Weight tuples exercised by the scripts and the test suite
SAMPLE_SPECS = [
    (2, 3, 5),
    (2, 2, 2, 2),
    (3, 3, 3),
    (2, 4, 4),
    (2, 3, 6),
    (2, 3, 7),
    (1, 2, 3),
    (2, 2, 5),
]

DOMESTIC_SPECS = [(1, 2, 2), (1, 2, 3), (1, 3, 4), (2, 2, 2), (2, 2, 3), (2, 2, 4), (2, 2, 5),
                  (2, 3, 3), (2, 3, 4), (2, 3, 5)]
TUBULAR_SPECS = [(2, 2, 2, 2), (3, 3, 3), (2, 4, 4), (2, 3, 6)]
WILD_SPECS = [(2, 3, 7), (2, 2, 2, 3)]

RANDOM_SEED = 20240501
