from typing import Iterable

import numpy as np

_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


def popcount_rows(words: np.ndarray) -> np.ndarray:
    """Per-row popcount of a 2-D array of packed bytes."""
    return _POPCOUNT[words].sum(axis=1, dtype=np.int64)


class Bitset:
    """Packed set of indices in [0, size), stored big-endian as np.packbits does."""

    __slots__ = ("words", "size")

    def __init__(self, words: np.ndarray, size: int):
        self.words = np.asarray(words, dtype=np.uint8)
        self.size = size

    @classmethod
    def from_mask(cls, mask) -> "Bitset":
        mask = np.asarray(mask, dtype=bool)
        return cls(np.packbits(mask), mask.size)

    @classmethod
    def from_indices(cls, indices: Iterable[int], size: int) -> "Bitset":
        mask = np.zeros(size, dtype=bool)
        indices = np.fromiter((int(i) for i in indices), dtype=np.int64)
        if indices.size and (indices.min() < 0 or indices.max() >= size):
            raise IndexError(f"bitset index out of range [0, {size})")
        mask[indices] = True
        return cls.from_mask(mask)

    @classmethod
    def empty(cls, size: int) -> "Bitset":
        return cls.from_mask(np.zeros(size, dtype=bool))

    @classmethod
    def full(cls, size: int) -> "Bitset":
        return cls.from_mask(np.ones(size, dtype=bool))

    def mask(self) -> np.ndarray:
        return np.unpackbits(self.words, count=self.size).astype(bool)

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask())

    def count(self) -> int:
        return int(_POPCOUNT[self.words].sum(dtype=np.int64))

    def _same_size(self, other: "Bitset") -> None:
        if self.size != other.size:
            raise ValueError(f"bitset sizes differ: {self.size} vs {other.size}")

    def __and__(self, other: "Bitset") -> "Bitset":
        self._same_size(other)
        return Bitset(self.words & other.words, self.size)

    def __or__(self, other: "Bitset") -> "Bitset":
        self._same_size(other)
        return Bitset(self.words | other.words, self.size)

    def __xor__(self, other: "Bitset") -> "Bitset":
        self._same_size(other)
        return Bitset(self.words ^ other.words, self.size)

    def __sub__(self, other: "Bitset") -> "Bitset":
        self._same_size(other)
        return Bitset(self.words & ~other.words, self.size)

    def __invert__(self) -> "Bitset":
        return Bitset.from_mask(~self.mask())

    def __contains__(self, index: int) -> bool:
        index = int(index)
        if not 0 <= index < self.size:
            return False
        return bool(self.words[index >> 3] & (0x80 >> (index & 7)))

    def issubset(self, other: "Bitset") -> bool:
        self._same_size(other)
        return not np.any(self.words & ~other.words)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Bitset) and self.size == other.size and np.array_equal(self.words, other.words)

    def __hash__(self) -> int:
        return hash((self.size, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"Bitset({self.count()}/{self.size})"
