"""Keccak-256 with a compiled kernel and a pure-Python fallback.

The backend is chosen at import: the Cython extension when it was built,
otherwise :mod:`daoforge.abi._keccak_py`. Set ``DAOFORGE_PURE_PYTHON=1`` to
force the fallback.
"""

import os

from . import _keccak_py

if os.environ.get("DAOFORGE_PURE_PYTHON") == "1":
    _impl = _keccak_py
else:
    try:
        from . import _keccak_ext as _impl
    except ImportError:
        _impl = _keccak_py

BACKEND = "python" if _impl is _keccak_py else "cython"

KECCAK_PAD = 0x01  # pre-standard Keccak, the Ethereum convention
SHA3_PAD = 0x06  # FIPS-202
RATE_256 = 136


def keccak256(data: bytes) -> bytes:
    return _impl.sponge(data, RATE_256, KECCAK_PAD, 32)


def sha3_256(data: bytes) -> bytes:
    """FIPS-202 SHA3-256 over the same permutation; only used to cross-check it."""
    return _impl.sponge(data, RATE_256, SHA3_PAD, 32)


def sponge(data: bytes, rate: int, pad: int, out_len: int, backend: str | None = None) -> bytes:
    impl = {"python": _keccak_py, "cython": _impl if BACKEND == "cython" else None}.get(backend or BACKEND)
    if impl is None:
        raise RuntimeError(f"keccak backend {backend!r} is not available")
    return impl.sponge(data, rate, pad, out_len)
