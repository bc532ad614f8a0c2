"""
JSON model files.

Floats are written in their shortest round-trip form, so save -> load reproduces
every factor entry bit for bit. Complex entries are ``[re, im]`` pairs.
"""
from pathlib import Path
from typing import List, Literal, Union

import numpy as np
from pydantic import BaseModel, Field, ValidationError, model_validator

from ...errors import FileFormatError
from .model import CpdModel

Scalar = Union[float, List[float]]


class ModelFile(BaseModel):
    order: int = Field(ge=1, description="Number of modes N")
    rank: int = Field(ge=1, description="Number of rank-one terms R")
    field: Literal["real", "complex"] = Field(default="real", description="Scalar field of the factors")
    dims: List[int] = Field(description="Mode sizes I_n")
    offset: float = Field(default=0.0, description="Constant added to every entry")
    factors: List[List[List[Scalar]]] = Field(description="N row-major I_n x R matrices")

    @model_validator(mode="after")
    def _check_consistency(self):
        if len(self.dims) != self.order or len(self.factors) != self.order:
            raise ValueError(f"order {self.order} disagrees with {len(self.dims)} dims / {len(self.factors)} factors")
        for n, (size, rows) in enumerate(zip(self.dims, self.factors)):
            if len(rows) != size:
                raise ValueError(f"factor {n} has {len(rows)} rows, dims says {size}")
            if any(len(row) != self.rank for row in rows):
                raise ValueError(f"factor {n} has rows of length other than rank {self.rank}")
        return self

    @classmethod
    def from_model(cls, model: CpdModel) -> "ModelFile":
        if model.is_complex:
            factors = [[[[z.real, z.imag] for z in row] for row in f.tolist()] for f in model.factors]
        else:
            factors = [f.tolist() for f in model.factors]
        return cls(
            order=model.order,
            rank=model.rank,
            field=model.field,
            dims=list(model.dims),
            offset=model.offset,
            factors=factors,
        )

    def to_model(self) -> CpdModel:
        matrices = []
        for n, rows in enumerate(self.factors):
            if self.field == "complex":
                try:
                    matrix = np.array([[complex(*_pair(v)) for v in row] for row in rows], dtype=complex)
                except ValueError as exc:
                    raise FileFormatError(f"factor {n}: {exc}") from exc
            else:
                if any(isinstance(v, list) for row in rows for v in row):
                    raise FileFormatError(f"factor {n}: complex entry in a real model")
                matrix = np.array(rows, dtype=float)
            matrices.append(matrix)
        return CpdModel(tuple(matrices), field=self.field, offset=self.offset)


def _pair(value: Scalar):
    if isinstance(value, list):
        if len(value) != 2:
            raise ValueError("complex entries must be [re, im] pairs")
        return value[0], value[1]
    return value, 0.0


def save_model(model: CpdModel, path: Union[str, Path]) -> None:
    Path(path).write_text(ModelFile.from_model(model).model_dump_json(indent=2), encoding="utf-8")


def load_model(path: Union[str, Path]) -> CpdModel:
    try:
        return ModelFile.model_validate_json(Path(path).read_text(encoding="utf-8")).to_model()
    except ValidationError as exc:
        raise FileFormatError(f"{path}: {exc.errors()[0]['msg']}") from exc
