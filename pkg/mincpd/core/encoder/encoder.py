from functools import singledispatch
from typing import Optional

from ...errors import InvalidArgumentError
from ...setting import EncoderSettings
from ..model import CpdModel
from .ilp import encode_ilp
from .instance import (
    GfLInstance,
    IlpInstance,
    IlsInstance,
    IqpInstance,
    MultiwayPartitionInstance,
    OverdetGf2Instance,
    ParityInstance,
    PartitionInstance,
    SignRetrievalInstance,
)
from .parity import encode_gf_l, encode_overdet_gf2, encode_parity
from .partition import encode_multiway_partition, encode_partition
from .quadratic import encode_ils, encode_iqp, encode_sign_retrieval


@singledispatch
def encode(inst, settings: Optional[EncoderSettings] = None) -> CpdModel:
    """CPD model whose entry at every index tuple is the problem's cost there."""
    raise InvalidArgumentError(f"no encoder for {type(inst).__name__}")


@encode.register
def _(inst: PartitionInstance, settings: Optional[EncoderSettings] = None) -> CpdModel:
    return encode_partition(inst, settings)


@encode.register
def _(inst: MultiwayPartitionInstance, settings: Optional[EncoderSettings] = None) -> CpdModel:
    return encode_multiway_partition(inst, settings=settings)


@encode.register
def _(inst: IlsInstance, settings: Optional[EncoderSettings] = None) -> CpdModel:
    return encode_ils(inst)


@encode.register
def _(inst: IqpInstance, settings: Optional[EncoderSettings] = None) -> CpdModel:
    return encode_iqp(inst)


@encode.register
def _(inst: IlpInstance, settings: Optional[EncoderSettings] = None) -> CpdModel:
    return encode_ilp(inst, settings)


@encode.register
def _(inst: SignRetrievalInstance, settings: Optional[EncoderSettings] = None) -> CpdModel:
    return encode_sign_retrieval(inst)


@encode.register
def _(inst: ParityInstance, settings: Optional[EncoderSettings] = None) -> CpdModel:
    return encode_parity(inst)


@encode.register
def _(inst: GfLInstance, settings: Optional[EncoderSettings] = None) -> CpdModel:
    return encode_gf_l(inst)


@encode.register
def _(inst: OverdetGf2Instance, settings: Optional[EncoderSettings] = None) -> CpdModel:
    return encode_overdet_gf2(inst)
