"""Solidity ABI: canonical signatures, selectors, argument encoding."""

from .codec import (
    FunctionSig,
    canonical_signature,
    decode_args,
    encode_args,
    encode_call,
    parse_signature,
    selector,
)
from .keccak import BACKEND, keccak256

__all__ = [
    "BACKEND",
    "FunctionSig",
    "canonical_signature",
    "decode_args",
    "encode_args",
    "encode_call",
    "keccak256",
    "parse_signature",
    "selector",
]
