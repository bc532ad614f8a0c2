"""
Problem instances accepted by the encoders, and the JSON instance files the CLI reads.

Every instance file is one JSON object whose ``problem`` field names the family,
e.g. ``{"problem": "partition", "weights": [1, 2, 3]}``.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import Annotated, List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, Field, TypeAdapter, ValidationError

from ...errors import FileFormatError, InvalidArgumentError, ShapeError
from .alist import read_alist
from .lattice import LatticeSpec


def _matrix(values, name: str, columns: Optional[int] = None) -> np.ndarray:
    matrix = np.array(values, dtype=float)
    if matrix.ndim == 1 and matrix.size == 0 and columns is not None:
        matrix = matrix.reshape(0, columns)
    if matrix.ndim != 2:
        raise ShapeError(f"{name} must be a matrix")
    if not np.all(np.isfinite(matrix)):
        raise InvalidArgumentError(f"{name} contains NaN or Inf")
    return matrix


def _binary(values, name: str) -> np.ndarray:
    array = np.asarray(values)
    if not np.all(np.isin(array, (0, 1))):
        raise InvalidArgumentError(f"{name} must be binary")
    return array.astype(np.int64)


def _positive_weights(weights) -> np.ndarray:
    w = np.array(weights, dtype=float).ravel()
    if w.size == 0:
        raise InvalidArgumentError("weights must not be empty")
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise InvalidArgumentError("weights must be positive and finite")
    return w


@dataclass(frozen=True)
class PartitionInstance:
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "weights", _positive_weights(self.weights))

    @property
    def threshold(self) -> float:
        """Tensor value of a perfect split."""
        return 2.0 * float(np.exp(self.weights.sum()))


@dataclass(frozen=True)
class MultiwayPartitionInstance:
    weights: np.ndarray
    groups: int = 2

    def __post_init__(self):
        object.__setattr__(self, "weights", _positive_weights(self.weights))
        if self.groups < 2:
            raise InvalidArgumentError("multiway partition needs at least 2 groups")


@dataclass(frozen=True)
class IlsInstance:
    H: np.ndarray
    b: np.ndarray
    lattice: LatticeSpec

    def __post_init__(self):
        H = _matrix(self.H, "H")
        b = np.array(self.b, dtype=float).ravel()
        if b.size != H.shape[0]:
            raise ShapeError(f"b has {b.size} entries, H has {H.shape[0]} rows")
        self.lattice.check_modes(H.shape[1])
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "b", b)


@dataclass(frozen=True)
class IqpInstance:
    Q: np.ndarray
    lattice: LatticeSpec

    def __post_init__(self):
        Q = _matrix(self.Q, "Q")
        if Q.shape[0] != Q.shape[1]:
            raise ShapeError(f"Q must be square, got {Q.shape[0]}x{Q.shape[1]}")
        self.lattice.check_modes(Q.shape[0])
        object.__setattr__(self, "Q", Q)


@dataclass(frozen=True)
class IlpInstance:
    H: np.ndarray
    b: np.ndarray
    c: np.ndarray
    lattice: LatticeSpec
    rho: Optional[float] = None
    t: Optional[float] = None

    def __post_init__(self):
        c = np.array(self.c, dtype=float).ravel()
        H = _matrix(self.H, "H", columns=c.size)
        b = np.array(self.b, dtype=float).ravel()
        if H.shape[1] != c.size:
            raise ShapeError(f"H has {H.shape[1]} columns, c has {c.size} entries")
        if b.size != H.shape[0]:
            raise ShapeError(f"b has {b.size} entries, H has {H.shape[0]} rows")
        for name in ("rho", "t"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise InvalidArgumentError(f"{name} must be positive")
        self.lattice.check_modes(c.size)
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)


@dataclass(frozen=True)
class SignRetrievalInstance:
    sensing: np.ndarray
    magnitudes: np.ndarray

    def __post_init__(self):
        A = _matrix(self.sensing, "sensing matrix")
        y = np.array(self.magnitudes, dtype=float).ravel()
        M, N = A.shape
        if M <= N:
            raise ShapeError(f"sign retrieval needs more measurements than unknowns, got M={M}, N={N}")
        if y.size != M:
            raise ShapeError(f"{y.size} magnitudes for {M} measurements")
        if np.any(y < 0) or not np.all(np.isfinite(y)):
            raise InvalidArgumentError("magnitudes must be nonnegative and finite")
        object.__setattr__(self, "sensing", A)
        object.__setattr__(self, "magnitudes", y)


@dataclass(frozen=True)
class ParityInstance:
    check_matrix: np.ndarray
    received: np.ndarray
    channel: Literal["bsc", "awgn"] = "bsc"

    def __post_init__(self):
        C = _binary(self.check_matrix, "check matrix")
        if C.ndim != 2 or C.shape[0] < 1:
            raise ShapeError("check matrix must have at least one row")
        y = np.array(self.received, dtype=float).ravel()
        if y.size != C.shape[1]:
            raise ShapeError(f"received word has {y.size} entries, code length is {C.shape[1]}")
        if self.channel not in ("bsc", "awgn"):
            raise InvalidArgumentError(f"unknown channel {self.channel!r}")
        if self.channel == "bsc":
            _binary(y, "received word of a BSC")
        object.__setattr__(self, "check_matrix", C)
        object.__setattr__(self, "received", y)

    @property
    def length(self) -> int:
        return self.check_matrix.shape[1]


@dataclass(frozen=True)
class GfLInstance:
    check_matrix: np.ndarray
    rhs: np.ndarray
    received: np.ndarray
    L: int = 2
    scale: Optional[float] = None

    def __post_init__(self):
        if self.L < 2 or self.L & (self.L - 1):
            raise InvalidArgumentError(f"L must be a power of two >= 2, got {self.L}")
        C = np.asarray(self.check_matrix, dtype=np.int64)
        q = np.asarray(self.rhs, dtype=np.int64).ravel()
        y = np.array(self.received, dtype=float).ravel()
        if C.ndim != 2 or C.shape[0] < 1:
            raise ShapeError("check matrix must have at least one row")
        if np.any((C < 0) | (C >= self.L)) or np.any((q < 0) | (q >= self.L)):
            raise InvalidArgumentError(f"check matrix and rhs entries must lie in [0, {self.L})")
        if q.size != C.shape[0]:
            raise ShapeError(f"rhs has {q.size} entries, check matrix has {C.shape[0]} rows")
        if y.size != C.shape[1]:
            raise ShapeError(f"received word has {y.size} entries, code length is {C.shape[1]}")
        if self.scale is not None and not self.scale > 0:
            raise InvalidArgumentError("scale must be positive")
        object.__setattr__(self, "check_matrix", C)
        object.__setattr__(self, "rhs", q)
        object.__setattr__(self, "received", y)


@dataclass(frozen=True)
class OverdetGf2Instance:
    G: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        G = _binary(self.G, "G")
        y = _binary(np.ravel(self.y), "y")
        if G.ndim != 2 or y.size != G.shape[0]:
            raise ShapeError(f"y has {y.size} entries, G has {G.shape[0]} rows")
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "y", y)


Instance = Union[
    PartitionInstance,
    MultiwayPartitionInstance,
    IlsInstance,
    IqpInstance,
    IlpInstance,
    SignRetrievalInstance,
    ParityInstance,
    GfLInstance,
    OverdetGf2Instance,
]


# ---------------------------------------------------------------------------
# instance files
# ---------------------------------------------------------------------------

LatticeValues = Union[List[float], List[List[float]]]


def _lattice(values: LatticeValues, n_modes: int) -> LatticeSpec:
    if values and isinstance(values[0], list):
        return LatticeSpec(tuple(np.asarray(v, dtype=float) for v in values))
    return LatticeSpec.uniform(values, n_modes)


class PartitionFile(BaseModel):
    problem: Literal["partition"]
    weights: List[float]

    def to_instance(self):
        return PartitionInstance(np.asarray(self.weights))


class MultiwayPartitionFile(BaseModel):
    problem: Literal["multiway_partition"]
    weights: List[float]
    groups: int = Field(default=2, ge=2)

    def to_instance(self):
        return MultiwayPartitionInstance(np.asarray(self.weights), self.groups)


class IlsFile(BaseModel):
    problem: Literal["ils"]
    H: List[List[float]]
    b: List[float]
    lattice: LatticeValues = Field(description="One value list for every mode, or one list per mode")

    def to_instance(self):
        H = np.asarray(self.H, dtype=float)
        return IlsInstance(H, np.asarray(self.b), _lattice(self.lattice, H.shape[1]))


class IqpFile(BaseModel):
    problem: Literal["iqp"]
    Q: List[List[float]]
    lattice: LatticeValues

    def to_instance(self):
        Q = np.asarray(self.Q, dtype=float)
        return IqpInstance(Q, _lattice(self.lattice, Q.shape[0]))


class IlpFile(BaseModel):
    problem: Literal["ilp"]
    H: List[List[float]] = Field(default=[])
    b: List[float] = Field(default=[])
    c: List[float]
    lattice: LatticeValues
    rho: Optional[float] = None
    t: Optional[float] = None

    def to_instance(self):
        return IlpInstance(
            np.asarray(self.H, dtype=float),
            np.asarray(self.b),
            np.asarray(self.c),
            _lattice(self.lattice, len(self.c)),
            self.rho,
            self.t,
        )


class SignRetrievalFile(BaseModel):
    problem: Literal["sign_retrieval"]
    sensing: List[List[float]]
    magnitudes: List[float]

    def to_instance(self):
        return SignRetrievalInstance(np.asarray(self.sensing), np.asarray(self.magnitudes))


class ParityFile(BaseModel):
    problem: Literal["parity"]
    check_matrix: Optional[List[List[int]]] = None
    alist: Optional[str] = Field(default=None, description="Path of an alist file, instead of check_matrix")
    received: List[float]
    channel: Literal["bsc", "awgn"] = "bsc"

    def to_instance(self):
        if (self.check_matrix is None) == (self.alist is None):
            raise FileFormatError("parity instance needs exactly one of check_matrix and alist")
        if self.alist is not None:
            matrix = read_alist(self.alist)
        else:
            matrix = np.asarray(self.check_matrix)
        return ParityInstance(matrix, np.asarray(self.received), self.channel)


class GfLFile(BaseModel):
    problem: Literal["gf_l"]
    check_matrix: List[List[int]]
    rhs: List[int]
    received: List[float]
    L: int
    scale: Optional[float] = None

    def to_instance(self):
        return GfLInstance(
            np.asarray(self.check_matrix), np.asarray(self.rhs), np.asarray(self.received), self.L, self.scale
        )


class OverdetGf2File(BaseModel):
    problem: Literal["overdet_gf2"]
    G: List[List[int]]
    y: List[int]

    def to_instance(self):
        return OverdetGf2Instance(np.asarray(self.G), np.asarray(self.y))


InstanceFile = Annotated[
    Union[
        PartitionFile,
        MultiwayPartitionFile,
        IlsFile,
        IqpFile,
        IlpFile,
        SignRetrievalFile,
        ParityFile,
        GfLFile,
        OverdetGf2File,
    ],
    Field(discriminator="problem"),
]

_INSTANCE_ADAPTER = TypeAdapter(InstanceFile)


def parse_instance(text: str) -> Instance:
    try:
        document = _INSTANCE_ADAPTER.validate_json(text)
    except ValidationError as exc:
        error = exc.errors()[0]
        where = ".".join(str(part) for part in error["loc"])
        raise FileFormatError(f"{where}: {error['msg']}" if where else error["msg"]) from exc
    return document.to_instance()


def load_instance(path: Union[str, Path]) -> Instance:
    return parse_instance(Path(path).read_text(encoding="utf-8"))

