import numpy as np

from ...setting import Sense
from ..model import CpdModel, IndexTuple, ModeDistributions, mode_gradients


def round_to_indices(dists: ModeDistributions) -> IndexTuple:
    """Per-mode argmax; np.argmax returns the lowest index among ties."""
    return tuple(int(np.argmax(p)) for p in dists.probs)


def conditional_round(
    model: CpdModel, dists: ModeDistributions, mode_n: int, sense: Sense | str = Sense.MIN
) -> ModeDistributions:
    """
    Replace p_n by a point mass at the best entry of its gradient.

    f is affine in p_n, so f(p) = p_n^T grad_n and the vertex picking the smallest
    (largest) gradient entry can only lower (raise) the objective.
    """
    gradient = mode_gradients(model, dists)[mode_n]
    best = int(np.argmin(gradient)) if Sense(sense) is Sense.MIN else int(np.argmax(gradient))
    vertex = np.zeros(model.dims[mode_n])
    vertex[best] = 1.0
    probs = list(dists.probs)
    probs[mode_n] = vertex
    return ModeDistributions(tuple(probs))


def round_sequentially(model: CpdModel, dists: ModeDistributions, sense: Sense | str = Sense.MIN) -> ModeDistributions:
    """conditional_round on modes 0..N-1 in turn; ends at a point mass on every mode."""
    for n in range(model.order):
        dists = conditional_round(model, dists, n, sense)
    return dists
