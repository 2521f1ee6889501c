"""
Run configuration and size guards.

Guards default to desk-scale limits and can be raised per process through
DOMCOL_GUARD_<FIELD> environment variables, e.g. DOMCOL_GUARD_ORACLE_MAX_N.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace
from typing import Mapping

from .const import DEFAULT_REPEATS, DEFAULT_SEED, Algo, Problem
from .errors import GuardExceededError, UsageError

GUARD_ENV_PREFIX = "DOMCOL_GUARD_"


@dataclass(frozen=True)
class Guards:
    # exhaustive oracles enumerate set partitions of V
    oracle_max_n: int = 10
    bounded_oracle_max_n: int = 14
    # 2^(2n) ranked masks
    exact_domcol_max_n: int = 10
    exact_cdcol_max_n: int = 16
    sieve_max_vars: int = 24
    hitting_set_max_universe: int = 20

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None) -> Guards:
        """
        Returns default guards with environment overrides applied.
        Raises UsageError if an override is not a non-negative integer.
        """
        env = os.environ if environ is None else environ
        overrides: dict[str, int] = {}

        for f in fields(cls):
            raw = env.get(GUARD_ENV_PREFIX + f.name.upper())
            if raw is None:
                continue
            try:
                value = int(raw)
            except ValueError:
                raise UsageError(
                    f"{GUARD_ENV_PREFIX}{f.name.upper()} must be an integer, "
                    f"got {raw!r}"
                )
            if value < 0:
                raise UsageError(
                    f"{GUARD_ENV_PREFIX}{f.name.upper()} must be >= 0"
                )
            overrides[f.name] = value

        return replace(cls(), **overrides)

    def check(self, name: str, size: int, what: str) -> None:
        """
        Raises GuardExceededError if size is above the named guard.
        """
        limit = getattr(self, name)
        if size > limit:
            raise GuardExceededError(
                f"{what} of size {size} exceeds guard {name}={limit}"
            )


@dataclass
class RunConfig:
    problem: Problem
    algo: Algo = Algo.AUTO
    ell: int = 1
    # modulator / twin cover / CVD set supplied by the caller, if any
    params: frozenset[int] | None = None
    seed: int = DEFAULT_SEED
    repeats: int = DEFAULT_REPEATS
    guards: Guards = field(default_factory=Guards)

    def validate(self) -> None:
        """
        Raises UsageError if the configuration cannot be run.
        """
        if self.ell < 0:
            raise UsageError(f"ell must be >= 0, got {self.ell}")
        if self.repeats < 1:
            raise UsageError(f"repeats must be >= 1, got {self.repeats}")
        if self.algo is Algo.CVD and self.problem is Problem.DOMCOL:
            raise UsageError("unsupported: use exact")
