from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import singledispatch
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ...errors import BoundsError, CapExceededError, InvalidArgumentError, ShapeError
from ...setting import OracleSettings, Sense
from ..encoder import (
    GfLInstance,
    IlpInstance,
    IlsInstance,
    IqpInstance,
    MultiwayPartitionInstance,
    OverdetGf2Instance,
    ParityInstance,
    PartitionInstance,
    SignRetrievalInstance,
    awgn_scale,
    gf_l_scale,
    ilp_parameters,
    sign_lattice,
    sign_retrieval_matrix,
)
from ..model import CpdModel, IndexTuple, evaluate_entry


@dataclass(frozen=True)
class OracleResult:
    value: float
    indices: IndexTuple
    entries_evaluated: int


def _chunk_extreme(model: CpdModel, start: int, stop: int, sense: Sense) -> Tuple[float, int]:
    flat = np.arange(start, stop, dtype=np.int64)
    indices = np.unravel_index(flat, model.dims)
    products = model.factors[0][indices[0]]
    for factor, idx in zip(model.factors[1:], indices[1:]):
        products = products * factor[idx]
    values = np.real(products.sum(axis=1)) + model.offset
    k = int(np.argmin(values)) if sense is Sense.MIN else int(np.argmax(values))
    return float(values[k]), start + k


def brute_force_extreme(
    model: CpdModel, sense: Sense | str = Sense.MIN, settings: Optional[OracleSettings] = None
) -> OracleResult:
    """
    Exact extreme entry by scanning every index tuple in lexicographic order.

    Ties go to the lexicographically smallest tuple. Blocks of ``chunk_size`` entries are
    evaluated at once and may run on ``workers`` threads.
    """
    sense = Sense(sense)
    settings = settings or OracleSettings()
    size = model.size
    if size > settings.enumeration_cap:
        raise CapExceededError(f"tensor has {size} entries (prod I_n), cap is {settings.enumeration_cap}")

    starts = range(0, size, settings.chunk_size)

    def scan(start):
        return _chunk_extreme(model, start, min(start + settings.chunk_size, size), sense)

    if settings.workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=settings.workers) as pool:
            candidates = list(pool.map(scan, starts))
    else:
        candidates = [scan(start) for start in starts]

    sign = 1.0 if sense is Sense.MIN else -1.0
    _, flat = min(candidates, key=lambda c: (sign * c[0], c[1]))
    indices = tuple(int(i) for i in np.unravel_index(flat, model.dims))
    return OracleResult(evaluate_entry(model, indices), indices, size)


def greedy_partition(weights: Sequence[float]) -> Tuple[float, List[int]]:
    """
    Largest-first greedy split: each number joins the bucket with the smaller running sum.

    Equal sums go to bucket 0. Returns the gap and the bucket of every input number.
    """
    w = np.asarray(weights, dtype=float).ravel()
    if w.size == 0:
        raise InvalidArgumentError("greedy_partition needs at least one weight")
    sums = [0.0, 0.0]
    assignment = [0] * w.size
    for n in np.argsort(-w, kind="stable"):
        bucket = 0 if sums[0] <= sums[1] else 1
        sums[bucket] += w[n]
        assignment[int(n)] = bucket
    return abs(sums[0] - sums[1]), assignment


def enumerate_partition(weights: Sequence[float], settings: Optional[OracleSettings] = None) -> Tuple[float, List[int]]:
    """
    Optimal two-way split by listing all 2^N subset sums.

    Subset k puts number n in bucket 1 when bit (N - 1 - n) of k is set, so ties resolve
    to the lexicographically smallest assignment.
    """
    settings = settings or OracleSettings()
    w = np.asarray(weights, dtype=float).ravel()
    if w.size == 0:
        raise InvalidArgumentError("enumerate_partition needs at least one weight")
    N = w.size
    if 2**N > settings.enumeration_cap:
        raise CapExceededError(f"2^{N} subsets exceed the cap {settings.enumeration_cap}")

    total = w.sum()
    shifts = np.arange(N - 1, -1, -1, dtype=np.int64)
    best_gap, best_mask = np.inf, 0
    for start in range(0, 2**N, settings.chunk_size):
        masks = np.arange(start, min(start + settings.chunk_size, 2**N), dtype=np.int64)
        bits = (masks[:, None] >> shifts) & 1
        gaps = np.abs(total - 2.0 * (bits @ w))
        k = int(np.argmin(gaps))
        if gaps[k] < best_gap:
            best_gap, best_mask = float(gaps[k]), int(masks[k])
    return best_gap, [int(b) for b in (best_mask >> shifts) & 1]


# ---------------------------------------------------------------------------
# problem-native costs, evaluated without the tensor encoding
# ---------------------------------------------------------------------------


def _indices(point: Sequence[int], dims: Sequence[int]) -> np.ndarray:
    idx = np.asarray(point, dtype=np.int64).ravel()
    if idx.size != len(dims):
        raise ShapeError(f"{idx.size} indices for {len(dims)} unknowns")
    for n, (i, size) in enumerate(zip(idx, dims)):
        if not 0 <= i < size:
            raise BoundsError(f"index {i} out of range for mode {n} of size {size}")
    return idx


@singledispatch
def direct_cost_probe(inst, point: Sequence[int]) -> float:
    raise InvalidArgumentError(f"no cost formula for {type(inst).__name__}")


@direct_cost_probe.register
def _(inst: PartitionInstance, point):
    i = _indices(point, [2] * inst.weights.size)
    w = inst.weights
    return float(np.exp(2.0 * w @ i) + np.exp(2.0 * w @ (1 - i)))


@direct_cost_probe.register
def _(inst: MultiwayPartitionInstance, point):
    i = _indices(point, [inst.groups] * inst.weights.size)
    sums = np.array([inst.weights[i == m].sum() for m in range(inst.groups)])
    balance = np.exp(inst.weights.sum() / inst.groups)
    return float(np.sum((np.exp(sums) - balance) ** 2))


@direct_cost_probe.register
def _(inst: IlsInstance, point):
    x = inst.lattice.decode(_indices(point, inst.lattice.dims))
    residual = inst.H @ x - inst.b
    return float(residual @ residual)


@direct_cost_probe.register
def _(inst: IqpInstance, point):
    x = inst.lattice.decode(_indices(point, inst.lattice.dims))
    return float(x @ inst.Q @ x)


@direct_cost_probe.register
def _(inst: IlpInstance, point):
    x = inst.lattice.decode(_indices(point, inst.lattice.dims))
    rho, t = ilp_parameters(inst)
    penalties = np.exp(-t * rho * inst.b) * np.exp(t * (inst.c[None, :] + rho * inst.H) @ x)
    return float(np.exp(t * inst.c @ x) + penalties.sum())


@direct_cost_probe.register
def _(inst: SignRetrievalInstance, point):
    M = inst.magnitudes.size
    s = sign_lattice(M).decode(_indices(point, [2] * M))
    return float(s @ sign_retrieval_matrix(inst) @ s)


@direct_cost_probe.register
def _(inst: ParityInstance, point):
    x = _indices(point, [2] * inst.length)
    checks = np.sum((-1.0) ** ((inst.check_matrix @ x) % 2))
    weight = np.exp(-1.0) if inst.channel == "bsc" else 1.0 / awgn_scale(inst.received)
    distance = np.sum((inst.received - x) ** 2)
    return float(-checks + weight * (1.0 + 1.0 / inst.length) ** distance)


@direct_cost_probe.register
def _(inst: GfLInstance, point):
    N = inst.check_matrix.shape[1]
    x = _indices(point, [inst.L] * N)
    phases = 2.0 * np.pi * ((inst.check_matrix @ x - inst.rhs) % inst.L) / inst.L
    scale = inst.scale or gf_l_scale(inst.received, inst.L)
    distance = np.sum((inst.received - x) ** 2)
    return float(-np.cos(phases).sum() + (1.0 + 1.0 / N) ** distance / scale)


@direct_cost_probe.register
def _(inst: OverdetGf2Instance, point):
    M, N = inst.G.shape
    x = _indices(point, [2] * N)
    violated = int(np.sum((inst.G @ x + inst.y) % 2))
    return float(2 * violated - M)
