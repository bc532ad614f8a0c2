"""
CPD model, mode distributions and the relaxed multilinear objective.

Entry (i_1, ..., i_N) of the tensor is ``offset + Re{ sum_r prod_n A_n(i_n, r) }``.
Relaxing every index to a probability vector p_n gives
``f(p) = offset + Re{ (p_1^T A_1 * ... * p_N^T A_N) 1_R }``, which is affine in each p_n.
"""
from dataclasses import dataclass
from typing import Literal, Sequence, Tuple, Union

import numpy as np

from ...errors import BoundsError, InvalidArgumentError, ShapeError

ScalarField = Literal["real", "complex"]
IndexTuple = Tuple[int, ...]

PROBABILITY_TOL = 1e-12


@dataclass(frozen=True)
class CpdModel:
    factors: Tuple[np.ndarray, ...]
    field: ScalarField = "real"
    offset: float = 0.0

    def __post_init__(self):
        if self.field not in ("real", "complex"):
            raise InvalidArgumentError(f"unknown scalar field {self.field!r}")
        if len(self.factors) == 0:
            raise ShapeError("a CPD model needs at least one mode")
        if not np.isfinite(self.offset):
            raise InvalidArgumentError("offset must be finite")

        checked = []
        rank = None
        for n, factor in enumerate(self.factors):
            matrix = np.array(factor, dtype=complex if self.field == "complex" or np.iscomplexobj(factor) else float)
            if matrix.ndim == 1:
                matrix = matrix[:, None]
            if matrix.ndim != 2:
                raise ShapeError(f"factor of mode {n} must be a matrix, got {matrix.ndim} dimensions")
            rows, cols = matrix.shape
            if rows < 1 or cols < 1:
                raise ShapeError(f"factor of mode {n} is empty ({rows}x{cols})")
            if rank is None:
                rank = cols
            elif cols != rank:
                raise ShapeError(f"factor of mode {n} has {cols} columns, expected {rank}")
            if not np.all(np.isfinite(matrix)):
                raise InvalidArgumentError(f"factor of mode {n} contains NaN or Inf")
            if self.field == "real":
                if np.iscomplexobj(matrix):
                    if np.any(matrix.imag != 0):
                        raise InvalidArgumentError(f"factor of mode {n} has imaginary parts in a real model")
                    matrix = np.ascontiguousarray(matrix.real)
            matrix.setflags(write=False)
            checked.append(matrix)

        object.__setattr__(self, "factors", tuple(checked))
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def order(self) -> int:
        return len(self.factors)

    @property
    def rank(self) -> int:
        return self.factors[0].shape[1]

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(factor.shape[0] for factor in self.factors)

    @property
    def is_complex(self) -> bool:
        return self.field == "complex"

    @property
    def size(self) -> int:
        return int(np.prod(self.dims, dtype=object))

    def lift_to_complex(self) -> "CpdModel":
        return CpdModel(tuple(f.astype(complex) for f in self.factors), field="complex", offset=self.offset)

    def __repr__(self) -> str:
        return f"CpdModel(order={self.order}, rank={self.rank}, field={self.field!r}, dims={self.dims})"


@dataclass(frozen=True)
class ModeDistributions:
    probs: Tuple[np.ndarray, ...]

    def __post_init__(self):
        checked = []
        for n, vector in enumerate(self.probs):
            p = np.array(vector, dtype=float).ravel()
            if p.size == 0:
                raise ShapeError(f"distribution of mode {n} is empty")
            if not np.all(np.isfinite(p)):
                raise InvalidArgumentError(f"distribution of mode {n} is not finite")
            if np.any(p < -PROBABILITY_TOL):
                raise InvalidArgumentError(f"distribution of mode {n} has negative entries")
            p = np.clip(p, 0.0, None)
            total = p.sum()
            if total <= 0:
                raise InvalidArgumentError(f"distribution of mode {n} has no mass")
            p = p / total
            p.setflags(write=False)
            checked.append(p)
        object.__setattr__(self, "probs", tuple(checked))

    @property
    def order(self) -> int:
        return len(self.probs)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(p.size for p in self.probs)

    @classmethod
    def point_mass(cls, dims: Sequence[int], indices: Sequence[int]) -> "ModeDistributions":
        if len(dims) != len(indices):
            raise ShapeError(f"{len(indices)} indices for {len(dims)} modes")
        probs = []
        for n, (size, i) in enumerate(zip(dims, indices)):
            if not 0 <= i < size:
                raise BoundsError(f"index {i} out of range for mode {n} of size {size}")
            p = np.zeros(size)
            p[i] = 1.0
            probs.append(p)
        return cls(tuple(probs))

    @classmethod
    def uniform(cls, dims: Sequence[int]) -> "ModeDistributions":
        return cls(tuple(np.full(size, 1.0 / size) for size in dims))


Distributions = Union[ModeDistributions, Sequence[np.ndarray]]


def _check_index(model: CpdModel, idx: Sequence[int]) -> IndexTuple:
    if len(idx) != model.order:
        raise ShapeError(f"index tuple has {len(idx)} entries, model has {model.order} modes")
    for n, (i, size) in enumerate(zip(idx, model.dims)):
        if not 0 <= int(i) < size:
            raise BoundsError(f"index {i} out of range for mode {n} of size {size}")
    return tuple(int(i) for i in idx)


def _as_vectors(model: CpdModel, dists: Distributions) -> Tuple[np.ndarray, ...]:
    vectors = dists.probs if isinstance(dists, ModeDistributions) else tuple(np.asarray(v, dtype=float) for v in dists)
    if len(vectors) != model.order:
        raise ShapeError(f"{len(vectors)} distributions for a model with {model.order} modes")
    for n, (v, size) in enumerate(zip(vectors, model.dims)):
        if v.shape != (size,):
            raise ShapeError(f"distribution of mode {n} has shape {v.shape}, expected ({size},)")
    return vectors


def mode_rows(model: CpdModel, vectors: Sequence[np.ndarray]) -> np.ndarray:
    """Stack of p_n^T A_n, shape (N, R)."""
    return np.stack([p @ factor for p, factor in zip(vectors, model.factors)])


def evaluate_entry(model: CpdModel, idx: Sequence[int]) -> float:
    idx = _check_index(model, idx)
    rows = np.stack([factor[i] for factor, i in zip(model.factors, idx)])
    return float(np.real(np.prod(rows, axis=0).sum())) + model.offset


def relaxed_objective(model: CpdModel, dists: Distributions) -> float:
    vectors = _as_vectors(model, dists)
    return float(np.real(np.prod(mode_rows(model, vectors), axis=0).sum())) + model.offset


def leave_one_out(rows: np.ndarray) -> np.ndarray:
    """
    Per-column product of all rows but one, for every row, in O(N R).

    Columns without zeros divide the full product by the left-out factor; a column
    with a single zero keeps the product of its nonzero factors only for the mode
    holding that zero; columns with two or more zeros contribute nothing.
    """
    zero = rows == 0
    zero_count = zero.sum(axis=0)
    nonzero_product = np.where(zero, 1, rows).prod(axis=0)

    result = np.zeros_like(rows)
    clean = zero_count == 0
    if np.any(clean):
        result[:, clean] = nonzero_product[clean] / rows[:, clean]
    single = zero_count == 1
    if np.any(single):
        result[:, single] = np.where(zero[:, single], nonzero_product[single], 0)
    return result


def mode_gradients(model: CpdModel, dists: Distributions) -> list[np.ndarray]:
    vectors = _as_vectors(model, dists)
    others = leave_one_out(mode_rows(model, vectors))
    return [np.real(factor @ others[n]).astype(float) for n, factor in enumerate(model.factors)]


def negate_for_max(model: CpdModel) -> CpdModel:
    factors = (-model.factors[0],) + model.factors[1:]
    return CpdModel(factors, field=model.field, offset=-model.offset)
