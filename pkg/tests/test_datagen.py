import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from formatbench.datagen import (
    ArrayPayload,
    finalize_u64,
    generate_payload,
    next_u64,
    stream_seed,
    u64_to_f32,
)

_M64 = (1 << 64) - 1


def _reference_next(state):
    # independent transcription of splitmix64 (Steele et al. 2014)
    state = (state + 0x9E3779B97F4A7C15) & _M64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return (z ^ (z >> 31)) & _M64, state


def test_published_seed0_sequence():
    value1, state = next_u64(0)
    value2, state = next_u64(state)
    value3, _ = next_u64(state)
    assert value1 == 0xE220A8397B1DCDAF
    assert value2 == 0x6E789E6AA1B965F4
    assert value3 == 0x06C45D188009454F


def test_finalizer_frozen_value():
    assert finalize_u64(42) == 0xA759EA27D4727622


@given(st.integers(min_value=0, max_value=_M64))
def test_next_matches_reference(state):
    assert next_u64(state) == _reference_next(state)


def test_state_wraps_at_64_bits():
    _, state = next_u64(_M64)
    assert state == (0x9E3779B97F4A7C15 - 1) & _M64
    assert 0 <= state <= _M64


@pytest.mark.parametrize(
    "value,expected",
    [
        (0, 0.0),
        (1 << 63, 0.5),
        (_M64, np.float32(2**24 - 1) / np.float32(2**24)),
        ((1 << 40) - 1, 0.0),  # bottom 40 bits are dropped
        (1 << 40, np.float32(2.0**-24)),
    ],
)
def test_u64_to_f32_values(value, expected):
    got = u64_to_f32(value)
    assert isinstance(got, np.float32)
    assert got == np.float32(expected)


@given(st.integers(min_value=0, max_value=_M64))
def test_u64_to_f32_unit_interval(value):
    got = u64_to_f32(value)
    assert 0.0 <= got < 1.0


def test_stream_seed_frozen_values():
    assert stream_seed(42, 0, 0) == finalize_u64(42)
    assert stream_seed(42, 0, 1) == 0x6BB150A2DF30D29B
    assert stream_seed(42, 1, 0) == 0xBDD732262FEB6E95


def test_stream_seed_distinct_across_pairs():
    seen = {
        stream_seed(42, trial, index)
        for trial in range(8)
        for index in range(64)
    }
    assert len(seen) == 8 * 64


def test_stream_seed_rejects_negative_indices():
    with pytest.raises(ValueError):
        stream_seed(42, -1, 0)
    with pytest.raises(ValueError):
        stream_seed(42, 0, -1)


def test_payload_matches_scalar_generator():
    seed = stream_seed(42, 0, 0)
    payload = generate_payload((5, 3), seed)
    state = seed
    expected = []
    for _ in range(15):
        value, state = _reference_next(state)
        expected.append(u64_to_f32(value))
    assert payload.data.tolist() == expected


@given(
    seed=st.integers(min_value=0, max_value=_M64),
    count=st.integers(min_value=1, max_value=200),
)
def test_vectorized_equals_scalar(seed, count):
    payload = generate_payload((count,), seed)
    state = seed
    for k in range(count):
        value, state = _reference_next(state)
        assert payload.data[k] == u64_to_f32(value)


def test_payload_deterministic_and_shaped():
    a = generate_payload((4, 6), 7)
    b = generate_payload((4, 6), 7)
    assert a == b
    assert a.dims == (4, 6)
    assert a.element_count == 24
    assert a.nbytes == 96
    assert a.as_ndarray().shape == (4, 6)
    assert np.all(a.data >= 0.0) and np.all(a.data < 1.0)


def test_payloads_differ_across_seeds():
    assert generate_payload((16,), 1) != generate_payload((16,), 2)


def test_payload_bytes_round_trip():
    payload = generate_payload((3, 2, 5), 99)
    again = ArrayPayload.from_bytes(payload.dims, payload.to_bytes())
    assert again == payload
    assert len(payload.to_bytes()) == payload.nbytes


def test_payload_equality_is_bit_exact():
    base = generate_payload((8,), 5)
    clone = ArrayPayload.from_bytes((8,), base.to_bytes())
    assert base == clone
    raw = bytearray(base.to_bytes())
    raw[0] ^= 0x01
    assert ArrayPayload.from_bytes((8,), bytes(raw)) != base
    assert ArrayPayload.from_bytes((4, 2), base.to_bytes()) != base


def test_payload_validates_dims_against_data():
    with pytest.raises(ValueError):
        ArrayPayload((3,), np.zeros(4, dtype="<f4"))
    with pytest.raises(ValueError):
        ArrayPayload((4,), np.zeros(4, dtype="<f8"))
    with pytest.raises(ValueError):
        ArrayPayload((2, 2), np.zeros((2, 2), dtype="<f4"))


def test_from_ndarray_round_trip():
    arr = np.arange(12, dtype="<f4").reshape(3, 4)
    payload = ArrayPayload.from_ndarray(arr)
    assert payload.dims == (3, 4)
    assert np.array_equal(payload.as_ndarray(), arr)


def test_generate_rejects_unaddressable_sizes():
    with pytest.raises(ValueError):
        generate_payload((1 << 62, 4), 0)
