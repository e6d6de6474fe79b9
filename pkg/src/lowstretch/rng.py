"""Named random streams.

Every random draw in the package comes from a ``random.Random`` seeded by
hashing ``(seed, purpose, path)``.  Sibling clusters in the recursion get
streams that differ only in their path, so the outcome does not depend on
the order (or process) in which clusters are handled.
"""
from __future__ import annotations

import hashlib
import random


def _digest(data: bytes) -> bytes:
    return hashlib.blake2b(data, digest_size=16, person=b"lowstretch").digest()


def _root_key(seed, purpose):
    return _digest(repr((int(seed), str(purpose))).encode())


def _step(key: bytes, idx) -> bytes:
    return _digest(key + repr(idx).encode())


def derive_seed(seed: int, purpose: str, *path) -> int:
    """64-bit seed for the stream ``(seed, purpose, path)``; one hash per path step."""
    key = _root_key(seed, purpose)
    for idx in path:
        key = _step(key, idx)
    return int.from_bytes(key[:8], "big")


class Stream:
    __slots__ = ("seed", "purpose", "path", "_key")

    def __init__(self, seed: int, purpose: str = "build", path: tuple = (), _key=None):
        self.seed = int(seed)
        self.purpose = purpose
        self.path = tuple(path)
        if _key is None:
            _key = _root_key(self.seed, purpose)
            for idx in self.path:
                _key = _step(_key, idx)
        self._key = _key

    def child(self, *idx) -> "Stream":
        key = self._key
        for i in idx:
            key = _step(key, i)
        return Stream(self.seed, self.purpose, self.path + idx, key)

    def rng(self) -> random.Random:
        return random.Random(int.from_bytes(self._key[:8], "big"))

    def __repr__(self):
        return f"Stream({self.seed}, {self.purpose!r}, {self.path})"


def as_stream(rng, default_seed: int = 0, purpose: str = "build") -> Stream:
    """Accept an int seed, a Stream, or None."""
    if rng is None:
        return Stream(default_seed, purpose)
    if isinstance(rng, Stream):
        return rng
    return Stream(int(rng), purpose)
