"""
Constants and enumerations shared across the solvers.
"""

from enum import Enum


class Problem(Enum):
    DOMCOL = "domcol"
    CDCOL = "cdcol"


class Algo(Enum):
    ORACLE = "oracle"
    EXACT = "exact"
    CLQ = "clq"
    TC = "tc"
    CVD = "cvd"
    AUTO = "auto"


class ParamKind(Enum):
    TWIN_COVER = "twin_cover"
    CLIQUE_MODULATOR = "clique_modulator"
    CVD_SET = "cvd_set"


class GenKind(Enum):
    CLUSTER_PLUS_MODULATOR = "cluster-plus-modulator"
    TWIN_COVER = "twin-cover"
    CVD = "cvd"
    GNP = "gnp"


class ExitCode(Enum):
    OK = 0
    DISAGREEMENT = 1
    INTERRUPTED = 130
    USAGE = 2
    GUARD = 3


# 2^61 - 1
MERSENNE_61 = (1 << 61) - 1

# counting primes for the exact solvers live in [2^30, 2^31)
COUNT_PRIME_LOW = 1 << 30
COUNT_PRIME_HIGH = 1 << 31

SCHEMA_VERSION = 1

DEFAULT_SEED = 0
DEFAULT_REPEATS = 3

# auto dispatch picks the first algorithm whose parameter fits
AUTO_CLQ_MAX_K = 4
AUTO_TC_MAX_K = 4
AUTO_CVD_MAX_K = 3

ALGOS_WITH_WITNESS = frozenset({Algo.ORACLE, Algo.TC, Algo.CVD})
