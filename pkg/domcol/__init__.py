from .config import Guards, RunConfig
from .const import Algo, Problem
from .controller import ResultRecord, crosscheck, solve
from .errors import DomColError, GuardExceededError, InfeasibleError, UsageError
from .graph import Coloring, Graph

__all__ = [
    "Algo",
    "Coloring",
    "DomColError",
    "Graph",
    "GuardExceededError",
    "Guards",
    "InfeasibleError",
    "Problem",
    "ResultRecord",
    "RunConfig",
    "UsageError",
    "crosscheck",
    "solve",
]
