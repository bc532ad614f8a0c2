from .alist import format_alist, parse_alist, read_alist, write_alist
from .encoder import encode
from .ilp import encode_ilp, ilp_parameters
from .instance import (
    GfLInstance,
    IlpInstance,
    IlsInstance,
    Instance,
    IqpInstance,
    MultiwayPartitionInstance,
    OverdetGf2Instance,
    ParityInstance,
    PartitionInstance,
    SignRetrievalInstance,
    load_instance,
    parse_instance,
)
from .lattice import LatticeSpec
from .parity import (
    awgn_scale,
    encode_gf_l,
    encode_overdet_gf2,
    encode_parity,
    encode_parity_awgn,
    encode_parity_bsc,
    gf_l_scale,
)
from .partition import encode_multiway_partition, encode_partition
from .quadratic import (
    SIGN_LATTICE_VALUES,
    encode_ils,
    encode_iqp,
    encode_sign_retrieval,
    recover_sign_retrieval_x,
    sign_lattice,
    sign_retrieval_matrix,
)

__all__ = [
    "GfLInstance",
    "IlpInstance",
    "IlsInstance",
    "Instance",
    "IqpInstance",
    "LatticeSpec",
    "MultiwayPartitionInstance",
    "OverdetGf2Instance",
    "ParityInstance",
    "PartitionInstance",
    "SIGN_LATTICE_VALUES",
    "SignRetrievalInstance",
    "awgn_scale",
    "encode",
    "encode_gf_l",
    "encode_ilp",
    "encode_ils",
    "encode_iqp",
    "encode_multiway_partition",
    "encode_overdet_gf2",
    "encode_parity",
    "encode_parity_awgn",
    "encode_parity_bsc",
    "encode_partition",
    "encode_sign_retrieval",
    "format_alist",
    "gf_l_scale",
    "ilp_parameters",
    "load_instance",
    "parse_instance",
    "read_alist",
    "recover_sign_retrieval_x",
    "sign_lattice",
    "sign_retrieval_matrix",
    "write_alist",
]
