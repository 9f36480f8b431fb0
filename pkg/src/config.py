"""
Configuration File
Every constant can be overridden from the environment or a .env file
"""

import os
from dotenv import load_dotenv

load_dotenv()


def _env_int(key, default):
    value = os.getenv(key)
    return int(value) if value not in (None, "") else default


def _env_float(key, default):
    value = os.getenv(key)
    return float(value) if value not in (None, "") else default


def _env_bool(key, default):
    value = os.getenv(key)
    if value in (None, ""):
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


# 🔎 Prime Scanning
SCAN_CAP = _env_int("TORUS_SCAN_CAP", 10**6)  # Largest prime tried by find_split_primes
ROOT_SCAN_CAP = _env_int("TORUS_ROOT_SCAN_CAP", 2**20)  # roots_mod_p evaluates every residue below this
DEFAULT_P_MIN = 3  # p = 2 is never admissible (odd-prime hypothesis)

# 🧮 Polynomial Algebra
FACTOR_DEGREE_CAP = _env_int("TORUS_FACTOR_DEGREE_CAP", 8)  # Desk-scale cap for factor_rational
FACTOR_PRIME_TRIES = 5  # Good primes compared when picking the modular factorization
FACTOR_SEED = 0  # Seed of the equal-degree splitter (keeps factorizations reproducible)

# 🔁 Linear Recurrences
BRUTE_PERIOD_CAP = _env_int("TORUS_BRUTE_PERIOD_CAP", 10**6)  # Largest modulus for brute-force periods
BRUTE_PERIOD_BLOCK = 1024  # Consecutive states compared per numpy step
LRS_MARGIN = _env_int("TORUS_LRS_MARGIN", 4)  # Extra p-adic digits when extracting t

# 🌀 Orbits
ORBIT_MATERIALIZE_CAP = _env_int("TORUS_ORBIT_MATERIALIZE_CAP", 10**6)  # Above this d is a lower bound only
ALL_PAIRS_MAX = _env_int("TORUS_ALL_PAIRS_MAX", 2 * 10**4)  # min_gap compares all pairs below this size
BRUTE_VERIFY_DENOMINATOR_MAX = _env_int("TORUS_BRUTE_VERIFY_DENOMINATOR_MAX", 10**5)
GENERATOR_SEARCH_RADIUS = 3  # Cyclic vector search uses coefficients in [-3, 3]
WEDGE_SAMPLE_PAIRS = _env_int("TORUS_WEDGE_SAMPLE_PAIRS", 64)
WEDGE_SAMPLE_SEED = _env_int("TORUS_WEDGE_SAMPLE_SEED", 0)

# 📊 Equidistribution
PACKING_SLACK = _env_float("TORUS_PACKING_SLACK", 1e-12)  # Relative slack for the float packing check
DEFAULT_GRID = _env_int("TORUS_GRID", 4)
NONERGODIC_MAX_DENOMINATOR = 12

# 🖥️ Command Line
DEFAULT_LEVELS = _env_int("TORUS_LEVELS", 3)
DEFAULT_PRIME_COUNT = 3
DEFAULT_FORMAT = os.getenv("TORUS_FORMAT", "text")  # json, csv, text
DEFAULT_JOBS = _env_int("TORUS_JOBS", 1)
VERBOSE = _env_bool("TORUS_VERBOSE", True)

# Exit codes
EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_INPUT = 2
