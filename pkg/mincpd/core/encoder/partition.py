from typing import Optional, Sequence, Union

import numpy as np

from ...errors import EncodingOverflowError
from ...setting import EncoderSettings
from ..model import CpdModel
from .instance import MultiwayPartitionInstance, PartitionInstance


def _check_exponent(largest: float, settings: EncoderSettings) -> None:
    if largest > settings.exponent_limit:
        raise EncodingOverflowError(
            f"entries reach exp({largest:.4g}), beyond the double range; normalize the weights to sum to 1"
        )


def encode_partition(
    inst: Union[PartitionInstance, Sequence[float]], settings: Optional[EncoderSettings] = None
) -> CpdModel:
    """
    Two-way partition as a 2 x ... x 2 tensor of rank 2.

    Index 1 in mode n puts w_n in the first subset, so the entry at i is
    ``exp(2 w.i) + exp(2 w.(1 - i))``; its minimum equals ``inst.threshold`` iff a perfect
    split exists.
    """
    settings = settings or EncoderSettings()
    if not isinstance(inst, PartitionInstance):
        inst = PartitionInstance(np.asarray(inst))
    _check_exponent(2.0 * inst.weights.sum(), settings)

    factors = []
    for w in inst.weights:
        e = np.exp(2.0 * w)
        factors.append(np.array([[1.0, e], [e, 1.0]]))
    return CpdModel(tuple(factors))


def encode_multiway_partition(
    weights: Union[MultiwayPartitionInstance, Sequence[float]],
    groups: int = 2,
    settings: Optional[EncoderSettings] = None,
) -> CpdModel:
    """
    M-way partition: entry at i is ``sum_m (exp(s_m) - exp(S / M))^2`` with s_m the weight in group m.

    Columns come in pairs per group, ``exp(2 s_m)`` then ``-2 exp(S / M) exp(s_m)``; the
    constant ``M exp(2 S / M)`` is the offset.
    """
    settings = settings or EncoderSettings()
    inst = weights if isinstance(weights, MultiwayPartitionInstance) else MultiwayPartitionInstance(weights, groups)
    w, M = inst.weights, inst.groups
    total = w.sum()
    _check_exponent(2.0 * total, settings)
    balance = np.exp(total / M)

    factors = []
    for n, weight in enumerate(w):
        factor = np.ones((M, 2 * M))
        for m in range(M):
            factor[m, 2 * m] = np.exp(2.0 * weight)
            factor[m, 2 * m + 1] = np.exp(weight)
        if n == 0:
            factor[:, 1::2] *= -2.0 * balance
        factors.append(factor)
    return CpdModel(tuple(factors), offset=M * np.exp(2.0 * total / M))
