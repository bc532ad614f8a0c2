from typing import Sequence

import numpy as np
from scipy.special import softmax

from ...errors import InvalidArgumentError


def project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto {p >= 0, sum(p) = 1} by sort and threshold."""
    v = np.asarray(v, dtype=float).ravel()
    if v.size == 0:
        raise InvalidArgumentError("cannot project an empty vector")
    if not np.all(np.isfinite(v)):
        raise InvalidArgumentError("cannot project a vector with NaN or Inf")

    u = np.sort(v)[::-1]
    cumulative = np.cumsum(u) - 1.0
    k = np.arange(1, v.size + 1)
    # u * k > cumulative, not u - cumulative / k > 0, which cancels to 0 for huge entries
    candidates = np.flatnonzero(u * k > cumulative)
    if candidates.size == 0 or candidates[-1] == 0:
        vertex = np.zeros_like(v)
        vertex[int(np.argmax(v))] = 1.0
        return vertex
    support = candidates[-1]
    theta = cumulative[support] / (support + 1)
    return np.maximum(v - theta, 0.0)


def softmax_gradient(p: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Chain rule through p = softmax(v): df/dv(i) = p(i) g(i) - p(i) p^T g."""
    return p * g - p * (p @ g)


def random_distributions(dims: Sequence[int], rng: np.random.Generator) -> list[np.ndarray]:
    """Full-support random point on each simplex: softmax of i.i.d. standard normals."""
    return [softmax(rng.standard_normal(size)) for size in dims]


def discrete_gaussian(mu: float, sigma: float, size: int) -> np.ndarray:
    """softmax(-((i - mu) / sigma)^2) over 1-based positions i = 1..size."""
    positions = np.arange(1, size + 1)
    return softmax(-(((positions - mu) / sigma) ** 2))
