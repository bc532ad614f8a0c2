from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ...errors import InvalidArgumentError, ShapeError


@dataclass(frozen=True)
class LatticeSpec:
    """Finite value set per mode; index i of mode n stands for ``values[n][i]``."""

    values: Tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.values) == 0:
            raise ShapeError("a lattice needs at least one mode")
        checked = []
        for n, vals in enumerate(self.values):
            v = np.array(vals, dtype=float).ravel()
            if v.size == 0:
                raise ShapeError(f"lattice of mode {n} is empty")
            if not np.all(np.isfinite(v)):
                raise InvalidArgumentError(f"lattice of mode {n} has non-finite values")
            if np.unique(v).size != v.size:
                raise InvalidArgumentError(f"lattice of mode {n} repeats a value")
            v.setflags(write=False)
            checked.append(v)
        object.__setattr__(self, "values", tuple(checked))

    @classmethod
    def uniform(cls, values: Sequence[float], n_modes: int) -> "LatticeSpec":
        return cls(tuple(np.asarray(values, dtype=float) for _ in range(n_modes)))

    @property
    def order(self) -> int:
        return len(self.values)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(v.size for v in self.values)

    @property
    def is_sign(self) -> bool:
        """True when every mode is exactly {-1, +1} in some order."""
        return all(v.size == 2 and set(v.tolist()) == {-1.0, 1.0} for v in self.values)

    def decode(self, indices: Sequence[int]) -> np.ndarray:
        if len(indices) != self.order:
            raise ShapeError(f"{len(indices)} indices for a lattice of {self.order} modes")
        return np.array([v[int(i)] for v, i in zip(self.values, indices)])

    def check_modes(self, n_modes: int) -> None:
        if self.order != n_modes:
            raise ShapeError(f"lattice covers {self.order} modes, problem has {n_modes} unknowns")
