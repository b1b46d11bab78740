"""Deterministic generation of the float32 payloads written to each dataset.

All randomness comes from splitmix64, keyed per (trial, dataset index), so a
run can regenerate the exact bytes it wrote earlier.  Read-back verification
therefore never needs to keep written data around, and two runs with the same
seed produce bit-identical payloads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15  # splitmix64 state increment
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_STREAM_SALT = 0xD1B54A32D192ED03  # decorrelates dataset index from trial index


def finalize_u64(x: int) -> int:
    """splitmix64 output mix: avalanche a 64-bit value (no state advance)."""
    z = x & _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def next_u64(state: int) -> tuple[int, int]:
    """One splitmix64 step: returns (value, advanced state)."""
    state = (state + _GOLDEN) & _MASK64
    return finalize_u64(state), state


def u64_to_f32(value: int) -> np.float32:
    """Map a u64 to a float32 in [0, 1) using its top 24 bits.

    A float32 mantissa holds exactly 24 bits and the divisor is a power of
    two, so every result is exact and strictly below 1.
    """
    return np.float32(value >> 40) / np.float32(2**24)


def stream_seed(global_seed: int, trial: int, dataset_index: int) -> int:
    """Seed for the payload stream of one (trial, dataset) pair."""
    if trial < 0 or dataset_index < 0:
        raise ValueError("trial and dataset_index must be non-negative")
    x = global_seed ^ (trial * _GOLDEN) ^ (dataset_index * _STREAM_SALT)
    return finalize_u64(x & _MASK64)


@dataclass(frozen=True, eq=False)
class ArrayPayload:
    """An n-d array as handed to adapters: dims plus a flat C-order float32 buffer."""

    dims: tuple[int, ...]
    data: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if self.data.ndim != 1 or self.data.dtype != np.dtype("<f4"):
            raise ValueError("payload data must be a flat little-endian float32 array")
        if self.data.size != self.element_count:
            raise ValueError(
                f"payload has {self.data.size} elements, dims {self.dims} require {self.element_count}"
            )

    @property
    def element_count(self) -> int:
        return math.prod(self.dims)

    @property
    def nbytes(self) -> int:
        return 4 * self.element_count

    def as_ndarray(self) -> np.ndarray:
        """The payload shaped to its dims (C order, no copy)."""
        return self.data.reshape(self.dims)

    def to_bytes(self) -> bytes:
        """Raw little-endian IEEE-754 bytes, row-major."""
        return self.data.astype("<f4", copy=False).tobytes()

    @classmethod
    def from_bytes(cls, dims, raw: bytes) -> "ArrayPayload":
        data = np.frombuffer(raw, dtype="<f4")
        return cls(tuple(dims), data)

    @classmethod
    def from_ndarray(cls, arr: np.ndarray) -> "ArrayPayload":
        flat = np.ascontiguousarray(arr, dtype="<f4").reshape(-1)
        return cls(tuple(arr.shape), flat)

    def __eq__(self, other) -> bool:
        # bit-exact comparison; compares encodings, not float semantics
        if not isinstance(other, ArrayPayload):
            return NotImplemented
        return self.dims == other.dims and np.array_equal(
            self.data.view("<u4"), other.data.view("<u4")
        )


def generate_payload(dims, stream_seed: int) -> ArrayPayload:
    """Payload whose k-th element is u64_to_f32 of the k-th splitmix64 output.

    The state after k steps is seed + (k+1) * golden (mod 2**64), so the whole
    stream is one vectorized finalizer pass over an arithmetic sequence.
    """
    dims = tuple(int(d) for d in dims)
    count = math.prod(dims)
    if count > np.iinfo(np.intp).max // 4:
        raise ValueError(f"payload of {count} elements exceeds addressable size")
    steps = np.arange(1, count + 1, dtype=np.uint64)
    z = steps * np.uint64(_GOLDEN) + np.uint64(stream_seed)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    z ^= z >> np.uint64(31)
    data = (z >> np.uint64(40)).astype("<f4") * np.float32(2.0**-24)
    return ArrayPayload(dims, data)
