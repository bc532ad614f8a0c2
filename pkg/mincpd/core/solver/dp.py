from typing import Sequence, Tuple

import numpy as np

from ...errors import InvalidArgumentError, UnsupportedInitError
from ...setting import Sense
from ..model import CpdModel, IndexTuple, ModeDistributions, evaluate_entry


def dp_rank_one_extreme(vectors: Sequence[np.ndarray], sense: Sense | str = Sense.MIN) -> Tuple[float, IndexTuple]:
    """
    Exact smallest (or largest) product a_1(i_1) * ... * a_N(i_N) in O(sum I_n).

    The running minimum and maximum over the first k modes are carried forward;
    the extremes over k+1 modes are among the four products of those two values
    with the smallest and largest entry of a_{k+1}.
    """
    sense = Sense(sense)
    if len(vectors) == 0:
        raise InvalidArgumentError("need at least one vector")
    if any(np.iscomplexobj(v) for v in vectors):
        raise InvalidArgumentError("vectors must be real")
    vectors = [np.asarray(v, dtype=float).ravel() for v in vectors]
    for n, v in enumerate(vectors):
        if v.size == 0:
            raise InvalidArgumentError(f"vector of mode {n} is empty")
        if not np.all(np.isfinite(v)):
            raise InvalidArgumentError(f"vector of mode {n} must be real and finite")

    first = vectors[0]
    low = (float(first[first.argmin()]), (int(first.argmin()),))
    high = (float(first[first.argmax()]), (int(first.argmax()),))

    for v in vectors[1:]:
        i_min, i_max = int(v.argmin()), int(v.argmax())
        candidates = [
            (low[0] * v[i_min], low[1] + (i_min,)),
            (low[0] * v[i_max], low[1] + (i_max,)),
            (high[0] * v[i_min], high[1] + (i_min,)),
            (high[0] * v[i_max], high[1] + (i_max,)),
        ]
        low = min(candidates, key=lambda c: c[0])
        high = max(candidates, key=lambda c: c[0])

    value, path = low if sense is Sense.MIN else high

    # zero as a final candidate
    for n, v in enumerate(vectors):
        zeros = np.flatnonzero(v == 0)
        if zeros.size:
            better = 0.0 < value if sense is Sense.MIN else 0.0 > value
            if better:
                value, path = 0.0, path[:n] + (int(zeros[0]),) + path[n + 1 :]
            break

    return float(value), tuple(path)


def dp_initialization(model: CpdModel, sense: Sense | str = Sense.MIN) -> ModeDistributions:
    """
    Best of the per-column rank-one optima, judged on the full model.

    Costs O(N I R) for the R dynamic programs plus O(N R^2) to score the R candidates.
    """
    sense = Sense(sense)
    if model.is_complex:
        raise UnsupportedInitError("DP initialization needs a real model")

    best_value, best_indices = None, None
    for r in range(model.rank):
        _, indices = dp_rank_one_extreme([factor[:, r] for factor in model.factors], sense)
        value = evaluate_entry(model, indices)
        if best_value is None or (value < best_value if sense is Sense.MIN else value > best_value):
            best_value, best_indices = value, indices

    return ModeDistributions.point_mass(model.dims, best_indices)
