"""
Quadratic forms over finite lattices: integer least squares, integer quadratic
programming and sign retrieval.

A quadratic in x splits into one rank-one term per pair (n, m), whose factors hold the
lattice values of x(n) and x(m), plus single-mode terms for the diagonal and linear
parts. Pair coefficients and diagonal terms sit in mode n's column.
"""
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy.linalg import qr, solve_triangular

from ...errors import SingularSystemError
from ..model import CpdModel
from .instance import IlsInstance, IqpInstance, SignRetrievalInstance
from .lattice import LatticeSpec

# sign retrieval: index 0 is s = +1, index 1 is s = -1
SIGN_LATTICE_VALUES = (1.0, -1.0)


def _quadratic_model(
    G: np.ndarray, linear: np.ndarray, lattice: LatticeSpec, offset: float, with_diagonal: bool
) -> CpdModel:
    N = G.shape[0]
    pairs = list(combinations(range(N), 2))
    rank = len(pairs) + (N if with_diagonal else 0)
    if rank == 0:
        factors = tuple(np.zeros((size, 1)) for size in lattice.dims)
        return CpdModel(factors, offset=offset)

    factors = [np.ones((size, rank)) for size in lattice.dims]
    for r, (n, m) in enumerate(pairs):
        factors[n][:, r] = 2.0 * G[n, m] * lattice.values[n]
        factors[m][:, r] = lattice.values[m]
    if with_diagonal:
        for n in range(N):
            x = lattice.values[n]
            factors[n][:, len(pairs) + n] = G[n, n] * x**2 - linear[n] * x
    return CpdModel(tuple(factors), offset=offset)


def encode_ils(H, b=None, lattice: LatticeSpec = None) -> CpdModel:
    """
    ``||H x - b||^2`` over the lattice, rank N(N-1)/2 + N.

    Accepts an IlsInstance or the raw (H, b, lattice) triple.
    """
    inst = H if isinstance(H, IlsInstance) else IlsInstance(H, b, lattice)
    G = inst.H.T @ inst.H
    c = 2.0 * inst.H.T @ inst.b
    return _quadratic_model(G, c, inst.lattice, float(inst.b @ inst.b), with_diagonal=True)


def encode_iqp(Q, lattice: LatticeSpec = None) -> CpdModel:
    """
    ``x^T Q x`` over the lattice after symmetrizing Q.

    On the {-1, +1} lattice the diagonal is the constant trace(G), kept in the offset, and
    the rank is N(N-1)/2. Other lattices add N single-mode diagonal terms.
    """
    inst = Q if isinstance(Q, IqpInstance) else IqpInstance(Q, lattice)
    G = (inst.Q + inst.Q.T) / 2.0
    N = G.shape[0]
    if inst.lattice.is_sign:
        return _quadratic_model(G, np.zeros(N), inst.lattice, float(np.trace(G)), with_diagonal=False)
    return _quadratic_model(G, np.zeros(N), inst.lattice, 0.0, with_diagonal=True)


def _orthonormal_range(inst: SignRetrievalInstance):
    A = inst.sensing
    U, R = qr(A, mode="economic")
    if np.linalg.matrix_rank(A) < A.shape[1]:
        raise SingularSystemError(f"sensing matrix is rank deficient (condition number {np.linalg.cond(A):.3g})")
    return U, R


def sign_retrieval_matrix(inst: SignRetrievalInstance) -> np.ndarray:
    """Q = D(y) (I - U U^T) D(y) with U an orthonormal basis of range(A)."""
    U, _ = _orthonormal_range(inst)
    y = inst.magnitudes
    residual = np.eye(y.size) - U @ U.T
    return y[:, None] * residual * y[None, :]


def sign_lattice(M: int) -> LatticeSpec:
    return LatticeSpec.uniform(SIGN_LATTICE_VALUES, M)


def encode_sign_retrieval(inst: SignRetrievalInstance) -> CpdModel:
    Q = sign_retrieval_matrix(inst)
    return encode_iqp(IqpInstance(Q, sign_lattice(Q.shape[0])))


def recover_sign_retrieval_x(inst: SignRetrievalInstance, s: Sequence[int]) -> np.ndarray:
    """Least-squares x for the sign pattern at index tuple ``s``."""
    U, R = _orthonormal_range(inst)
    signs = sign_lattice(inst.magnitudes.size).decode(s)
    return solve_triangular(R, U.T @ (inst.magnitudes * signs))
