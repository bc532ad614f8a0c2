"""
Decoding as tensor minimization.

Binary codes use two-entry modes (index = bit value). Each parity check m is a
rank-one term ``(-1)^{C(m,:) x}`` and the squared distance to the received word
enters through one more rank-one term ``(1 + 1/N)^{sum_n (y(n) - x(n))^2}``. Signs and
scalings of every term live in mode 0.
"""
from typing import Optional

import numpy as np

from ...errors import InvalidArgumentError
from ..model import CpdModel
from .instance import GfLInstance, OverdetGf2Instance, ParityInstance


def _distance_column(received: np.ndarray, symbols: np.ndarray) -> list[np.ndarray]:
    base = 1.0 + 1.0 / received.size
    return [base ** ((y - symbols) ** 2) for y in received]


def _binary_model(inst: ParityInstance, distance_weight: float) -> CpdModel:
    C = inst.check_matrix
    M, N = C.shape
    bits = np.array([0.0, 1.0])
    distance = _distance_column(inst.received, bits)

    factors = []
    for n in range(N):
        factor = np.empty((2, M + 1))
        factor[0, :M] = 1.0
        factor[1, :M] = np.where(C[:, n] == 1, -1.0, 1.0)
        factor[:, M] = distance[n]
        if n == 0:
            factor[:, :M] *= -1.0
            factor[:, M] *= distance_weight
        factors.append(factor)
    return CpdModel(tuple(factors))


def encode_parity_bsc(inst: ParityInstance) -> CpdModel:
    """``-sum_m (-1)^{C(m,:) x} + (1/e) (1 + 1/N)^{||y - x||^2}``; every minimizer is an ML codeword."""
    if inst.channel != "bsc":
        raise InvalidArgumentError("encode_parity_bsc needs a BSC instance")
    return _binary_model(inst, np.exp(-1.0))


def awgn_scale(received: np.ndarray) -> float:
    """c = (1 + 1/N)^{||z||^2}, z(n) the distance from y(n) to the farther bit."""
    y = np.asarray(received, dtype=float)
    z = np.where(y > 0.5, y, y - 1.0)
    return float((1.0 + 1.0 / y.size) ** (z @ z))


def encode_parity_awgn(inst: ParityInstance) -> CpdModel:
    """As the BSC model with the distance term scaled by 1/c, which keeps it at most 1."""
    if inst.channel != "awgn":
        raise InvalidArgumentError("encode_parity_awgn needs an AWGN instance")
    return _binary_model(inst, 1.0 / awgn_scale(inst.received))


def encode_parity(inst: ParityInstance) -> CpdModel:
    return encode_parity_bsc(inst) if inst.channel == "bsc" else encode_parity_awgn(inst)


def gf_l_scale(received: np.ndarray, L: int) -> float:
    """
    Default c~ for L-ary symbols: (1 + 1/N)^{||z||^2} with z(n) the distance from y(n)
    to the farthest symbol in {0, ..., L-1}. For L = 2 this is the AWGN scale.
    """
    y = np.asarray(received, dtype=float)
    z = np.maximum(np.abs(y), np.abs(y - (L - 1)))
    return float((1.0 + 1.0 / y.size) ** (z @ z))


def encode_gf_l(inst: GfLInstance, scale: Optional[float] = None) -> CpdModel:
    """
    Complex-field model of ``-sum_m Re{exp(j 2 pi (C(m,:) x - q(m)) / L)} + (1/c~) (1 + 1/N)^{||y - x||^2}``.

    ``scale`` (or ``inst.scale``) overrides the default c~ from ``gf_l_scale``.
    """
    C, q, L = inst.check_matrix, inst.rhs, inst.L
    M, N = C.shape
    scale = scale or inst.scale or gf_l_scale(inst.received, L)
    symbols = np.arange(L, dtype=float)
    distance = _distance_column(inst.received, symbols)
    phase = 2.0 * np.pi / L

    factors = []
    for n in range(N):
        factor = np.empty((L, M + 1), dtype=complex)
        factor[:, :M] = np.exp(1j * phase * np.outer(symbols, C[:, n]))
        factor[:, M] = distance[n]
        if n == 0:
            factor[:, :M] *= -np.exp(-1j * phase * q)[None, :]
            factor[:, M] /= scale
        factors.append(factor)
    return CpdModel(tuple(factors), field="complex")


def encode_overdet_gf2(G, y=None) -> CpdModel:
    """Least-inconsistent solution of G x = y over GF(2); the entry is 2 (#violated) - M."""
    inst = G if isinstance(G, OverdetGf2Instance) else OverdetGf2Instance(G, y)
    M, N = inst.G.shape
    factors = []
    for n in range(N):
        factor = np.ones((2, M))
        factor[1] = np.where(inst.G[:, n] == 1, -1.0, 1.0)
        if n == 0:
            factor *= np.where(inst.y == 1, 1.0, -1.0)[None, :]
        factors.append(factor)
    return CpdModel(tuple(factors))
