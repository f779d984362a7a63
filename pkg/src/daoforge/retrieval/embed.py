"""Embedding providers. Distances are Euclidean between unit vectors."""

from __future__ import annotations

import hashlib
from typing import Protocol

import numpy as np
import requests

from ..errors import ProviderError

DEFAULT_DIM = 256
DEFAULT_SEED = "daoforge-embed-v1"


class Embedder(Protocol):
    dim: int

    def embed(self, text: str) -> np.ndarray: ...


def _unit(v: np.ndarray) -> np.ndarray:
    n = float(np.linalg.norm(v))
    if n == 0.0:
        raise ProviderError("embedding has zero norm")
    return v / n


class HashingEmbedder:
    """Deterministic hashed bag of words.

    Each whitespace token (lowercased, plus a constant ``<s>`` marker so empty
    text still has a direction) adds one count to a keyed-BLAKE2 bucket.
    """

    def __init__(self, dim: int = DEFAULT_DIM, seed: str = DEFAULT_SEED):
        if dim <= 0:
            raise ValueError("dim must be positive")
        self.dim = dim
        self._key = seed.encode()[:64]

    def _bucket(self, token: str) -> int:
        h = hashlib.blake2b(token.encode(), key=self._key, digest_size=8).digest()
        return int.from_bytes(h, "big") % self.dim

    def embed(self, text: str) -> np.ndarray:
        v = np.zeros(self.dim)
        for tok in ["<s>", *text.lower().split()]:
            v[self._bucket(tok)] += 1.0
        return _unit(v)


class HttpEmbedder:
    """Remote encoder speaking the common ``/embeddings`` JSON shape."""

    def __init__(self, url: str, model: str, api_key: str | None, dim: int, timeout: float = 20.0):
        self.url, self.model, self.api_key, self.dim, self.timeout = url, model, api_key, dim, timeout

    def embed(self, text: str) -> np.ndarray:
        headers = {"Authorization": f"Bearer {self.api_key}"} if self.api_key else {}
        try:
            resp = requests.post(self.url, json={"model": self.model, "input": text}, headers=headers,
                                 timeout=self.timeout)
            resp.raise_for_status()
            vec = np.asarray(resp.json()["data"][0]["embedding"], dtype=float)
        except (requests.RequestException, KeyError, IndexError, TypeError, ValueError) as exc:
            raise ProviderError(f"embedding request failed: {exc}") from exc
        if vec.shape != (self.dim,):
            raise ProviderError(f"expected {self.dim} dimensions, got {vec.shape}")
        return _unit(vec)


def embed(text: str, provider: Embedder) -> np.ndarray:
    return provider.embed(text)


def distance(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))
