"""Bi-infinite driver sequences, evaluated on integer arrays."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

_MASK64 = np.uint64(0xFFFFFFFFFFFFFFFF)


def splitmix64(x: np.ndarray) -> np.ndarray:
    z = np.asarray(x, dtype=np.uint64) + np.uint64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def hash_coords(seed: int, *coords: np.ndarray) -> np.ndarray:
    """Deterministic 64-bit hash of integer coordinates under ``seed``."""
    with np.errstate(over="ignore"):
        h = splitmix64(np.uint64(seed & 0xFFFFFFFFFFFFFFFF))
        for c in coords:
            c = np.asarray(c, dtype=np.int64).astype(np.uint64)
            h = splitmix64(h ^ c)
    return h


def thue_morse(n: np.ndarray) -> np.ndarray:
    """Thue-Morse bit, extended to negative indices by ``t(-n) = t(n - 1)``."""
    n = np.asarray(n, dtype=np.int64)
    m = np.where(n < 0, -n - 1, n)
    return (np.bitwise_count(m.astype(np.uint64)) & 1).astype(np.int64)


def _block_index(m: np.ndarray) -> np.ndarray:
    # k such that (4^k - 1)/3 <= m < (4^(k+1) - 1)/3
    k = np.zeros(m.shape, dtype=np.int64)
    bound = np.ones(m.shape, dtype=np.int64)  # end of block k
    size = np.ones(m.shape, dtype=np.int64)  # length of block k
    while True:
        past = m >= bound
        if not past.any():
            return k
        size = np.where(past, size * 4, size)
        bound = np.where(past, bound + size, bound)
        k = k + past


def frequency_free(n: np.ndarray) -> np.ndarray:
    """Values in {1, 2}: blocks of lengths 1, 4, 16, ... alternating 1 and 2.

    The running density of 2 over ``[0, N)`` swings between about 1/5 and 4/5,
    so no letter (and no factor) has a frequency.  Mirrored: ``t(-n) = t(n-1)``.
    """
    n = np.asarray(n, dtype=np.int64)
    m = np.where(n < 0, -n - 1, n)
    return 1 + (_block_index(m) & 1)


def transition_free(n: np.ndarray) -> np.ndarray:
    """Bits whose ``01`` factor has no frequency.

    Blocks of lengths 1, 4, 16, ... are alternately constant 0 and
    alternating ``1010...``; mirrored like ``frequency_free``.  The density of
    ``1`` and of the factors ``01`` / ``10`` swings between about 1/10 and
    2/5, so neither letters nor transitions have frequencies.
    """
    n = np.asarray(n, dtype=np.int64)
    m = np.where(n < 0, -n - 1, n)
    return np.where(_block_index(m) & 1 == 1, 1 - (m & 1), 0)


@dataclass(frozen=True)
class Seq:
    """Named binary rule over the integers."""

    name: str
    fn: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)
    params: tuple = ()

    def __call__(self, n) -> np.ndarray:
        return np.asarray(self.fn(np.asarray(n, dtype=np.int64)), dtype=np.int64)

    def to_json(self) -> dict:
        return {"name": self.name, "params": list(self.params)}


def zeros() -> Seq:
    return Seq("zeros", lambda n: np.zeros(n.shape, dtype=np.int64))


def ones() -> Seq:
    return Seq("ones", lambda n: np.ones(n.shape, dtype=np.int64))


def indicator_at_zero() -> Seq:
    return Seq("delta0", lambda n: (n == 0).astype(np.int64))


def tm() -> Seq:
    return Seq("thue_morse", thue_morse)


def freq_free_bits() -> Seq:
    return Seq("frequency_free", lambda n: frequency_free(n) - 1)


def transition_free_bits() -> Seq:
    return Seq("transition_free", transition_free)


def alternating() -> Seq:
    return Seq("alternating", lambda n: n & 1)


def random_bits(seed: int) -> Seq:
    return Seq("random", lambda n: (hash_coords(seed, n) & np.uint64(1)).astype(np.int64), (seed,))


def seq_from_json(d: dict) -> Seq:
    name = d["name"]
    params = d.get("params", [])
    table = {
        "zeros": zeros,
        "ones": ones,
        "delta0": indicator_at_zero,
        "thue_morse": tm,
        "frequency_free": freq_free_bits,
        "transition_free": transition_free_bits,
        "alternating": alternating,
    }
    if name == "random":
        return random_bits(int(params[0]))
    if name not in table:
        raise ValueError(f"unknown sequence {name!r}")
    return table[name]()
