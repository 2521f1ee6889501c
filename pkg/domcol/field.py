"""
Prime field helpers for the algebraic solvers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .const import DEFAULT_SEED, MERSENNE_61

Cell = tuple[int, int]


def det_mod_p(matrix: Sequence[Sequence[int]], p: int) -> int:
    """
    Determinant over GF(p) by Gaussian elimination.
    Any nonzero pivot will do in a field; a column without one means 0.
    """
    a = [[x % p for x in row] for row in matrix]
    size = len(a)
    det = 1
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det = det * a[col][col] % p
        inv = pow(a[col][col], p - 2, p)
        for r in range(col + 1, size):
            factor = a[r][col] * inv % p
            if factor:
                row, top = a[r], a[col]
                for c in range(col, size):
                    row[c] = (row[c] - factor * top[c]) % p
    return det % p


@dataclass(frozen=True)
class FieldContext:
    """
    A random evaluation point: one value per matrix cell variable z and
    one per sieved variable. All sampled values are nonzero.
    """

    prime: int
    seed: int
    z: Mapping[Cell, int]
    values: tuple[int, ...]
    repetition: int = 0

    @classmethod
    def sample(
        cls,
        cells: Iterable[Cell],
        num_vars: int,
        seed: int = DEFAULT_SEED,
        repetition: int = 0,
        prime: int = MERSENNE_61,
    ) -> FieldContext:
        rng = random.Random(f"{seed}:{repetition}")
        z = {cell: rng.randrange(1, prime) for cell in sorted(cells)}
        values = tuple(rng.randrange(1, prime) for _ in range(num_vars))
        return cls(prime, seed, z, values, repetition)

    def fresh(self, repetition: int) -> FieldContext:
        """An independent point over the same cells and variables."""
        return FieldContext.sample(
            self.z, len(self.values), self.seed, repetition, self.prime
        )

    def monomial(self, mask: int) -> int:
        """Value of the product of the variables whose bits are set."""
        out = 1
        index = 0
        while mask:
            if mask & 1:
                out = out * self.values[index] % self.prime
            mask >>= 1
            index += 1
        return out
