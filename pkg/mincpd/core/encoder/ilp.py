from typing import Optional, Tuple

import numpy as np

from ...errors import EncodingOverflowError
from ...setting import EncoderSettings
from ..model import CpdModel
from .instance import IlpInstance


def _exponents(inst: IlpInstance, rho: float, t: float) -> list[np.ndarray]:
    """Exponent of every factor entry, one (I_n, M + 1) array per mode."""
    H, c = inst.H, inst.c
    slopes = np.vstack([c[None, :], c[None, :] + rho * H])  # (M + 1, N)
    blocks = []
    for n, x in enumerate(inst.lattice.values):
        block = t * np.outer(x, slopes[:, n])
        if n == 0:
            block[:, 1:] -= t * rho * inst.b[None, :]
        blocks.append(block)
    return blocks


def _largest_term_exponent(blocks: list[np.ndarray]) -> float:
    """Bound on |exponent| of any tensor entry of any single term."""
    return float(np.max(np.sum([np.abs(block).max(axis=0) for block in blocks], axis=0)))


def ilp_parameters(inst: IlpInstance, settings: Optional[EncoderSettings] = None) -> Tuple[float, float]:
    """
    Penalty weight rho and temperature t, taking explicit values from the instance.

    Defaults: ``rho = 1 + 2 max|c| max|x| N`` and the largest t <= 1 that keeps every
    term's exponent within ``settings.ilp_target_exponent``.
    """
    settings = settings or EncoderSettings()
    largest_value = max(float(np.abs(v).max()) for v in inst.lattice.values)
    max_c = float(np.abs(inst.c).max()) if inst.c.size else 0.0
    rho = inst.rho if inst.rho is not None else 1.0 + 2.0 * max_c * largest_value * inst.c.size
    if inst.t is not None:
        return rho, inst.t
    at_unit_t = _largest_term_exponent(_exponents(inst, rho, 1.0))
    t = 1.0 if at_unit_t == 0 else min(1.0, settings.ilp_target_exponent / at_unit_t)
    return rho, t


def encode_ilp(inst: IlpInstance, settings: Optional[EncoderSettings] = None) -> CpdModel:
    """
    ``exp(t c^T x) + sum_m exp(-t rho b(m)) exp(t (c + rho h_m)^T x)``, rank M + 1.

    Each lambda_m = exp(-t rho b(m)) is folded into mode 0.
    """
    settings = settings or EncoderSettings()
    rho, t = ilp_parameters(inst, settings)
    blocks = _exponents(inst, rho, t)
    largest = max(float(np.abs(block).max()) for block in blocks)
    if largest > settings.exponent_limit:
        raise EncodingOverflowError(
            f"ILP factor entries reach exp({largest:.4g}) with rho={rho:.4g}, t={t:.4g}; rescale c, H and b or lower t"
        )
    return CpdModel(tuple(np.exp(block) for block in blocks))
