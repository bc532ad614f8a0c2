from .gf2 import encode_bits, is_codeword, ml_decode_enumerate, systematic_generator
from .oracle import (
    OracleResult,
    brute_force_extreme,
    direct_cost_probe,
    enumerate_partition,
    greedy_partition,
)

__all__ = [
    "OracleResult",
    "brute_force_extreme",
    "direct_cost_probe",
    "encode_bits",
    "enumerate_partition",
    "greedy_partition",
    "is_codeword",
    "ml_decode_enumerate",
    "systematic_generator",
]
