from typing import Optional, Tuple

import galois
import numpy as np

from ...errors import CapExceededError, InvalidArgumentError
from ...setting import OracleSettings
from ..encoder import ParityInstance

GF2 = galois.GF(2)


def systematic_generator(check_matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Generator of the code {x : C x = 0 mod 2} in reduced row echelon form.

    Returns (G, info_positions): G is K x N, and G's columns at ``info_positions`` form
    the identity, so the codeword u G carries u verbatim at those positions.
    """
    C = np.asarray(check_matrix, dtype=np.int64) % 2
    if C.ndim != 2:
        raise InvalidArgumentError("check matrix must be 2-D")
    basis = GF2(C).null_space()
    if basis.shape[0] == 0:
        return np.zeros((0, C.shape[1]), dtype=np.int64), np.zeros(0, dtype=np.int64)
    G = np.asarray(basis.row_reduce(), dtype=np.int64)
    info_positions = np.array([int(np.flatnonzero(row)[0]) for row in G], dtype=np.int64)
    return G, info_positions


def encode_bits(generator: np.ndarray, bits: np.ndarray) -> np.ndarray:
    return (np.asarray(bits, dtype=np.int64) @ generator) % 2


def is_codeword(check_matrix: np.ndarray, x: np.ndarray) -> bool:
    return not np.any((np.asarray(check_matrix, dtype=np.int64) @ np.asarray(x, dtype=np.int64)) % 2)


def ml_decode_enumerate(
    inst: ParityInstance, generator: Optional[np.ndarray] = None, settings: Optional[OracleSettings] = None
) -> Tuple[np.ndarray, float]:
    """
    Closest codeword to the received word in squared distance, by listing all 2^K codewords.

    Ties go to the lexicographically smallest codeword.
    """
    settings = settings or OracleSettings()
    if generator is None:
        generator, _ = systematic_generator(inst.check_matrix)
    generator = np.asarray(generator, dtype=np.int64)
    K, N = generator.shape
    if N != inst.length:
        raise InvalidArgumentError(f"generator has length {N}, code length is {inst.length}")
    if 2**K > settings.ml_cap:
        raise CapExceededError(f"codebook has 2^{K} = {2**K} words, cap is {settings.ml_cap}")

    y = inst.received
    best_word, best_distance = np.zeros(N, dtype=np.int64), float(y @ y)
    shifts = np.arange(K - 1, -1, -1, dtype=np.int64)
    for start in range(0, 2**K, settings.chunk_size):
        messages = np.arange(start, min(start + settings.chunk_size, 2**K), dtype=np.int64)
        words = encode_bits(generator, (messages[:, None] >> shifts) & 1)
        distances = ((y[None, :] - words) ** 2).sum(axis=1)
        low = distances.min()
        if low > best_distance:
            continue
        for word in words[distances == low]:
            if low < best_distance or tuple(word) < tuple(best_word):
                best_word, best_distance = word, float(low)
    return best_word, best_distance
