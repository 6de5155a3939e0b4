import pytest
from hypothesis import given
from hypothesis import strategies as st

from broadcastnet import ParamOutOfRange, make_params
from broadcastnet.params import ceil_log2, max_k


def test_full_size_case():
    p = make_params(7, 2, 192)
    assert (p.N, p.d, p.x, p.y, p.p) == (192, 0, 0, 0, 0)


def test_deletion_parameters_match_definitions():
    p = make_params(14, 3, 16385)
    assert (p.N, p.d, p.x, p.y, p.p) == (28672, 12287, 2, 4095, 1)


def test_k_above_even_range_rejected():
    with pytest.raises(ParamOutOfRange):
        make_params(7, 4, 192)
    # even n at t=7 only admits k=2
    with pytest.raises(ParamOutOfRange):
        make_params(7, 3, 192)


def test_odd_n_admits_one_more_k_at_odd_t():
    p = make_params(7, 3, 223)
    assert p.N == 224 and p.d == 1
    with pytest.raises(ParamOutOfRange):
        make_params(7, 3, 222)


def test_n_range_enforced():
    with pytest.raises(ParamOutOfRange):
        make_params(7, 2, 128)  # n must exceed 2^t
    with pytest.raises(ParamOutOfRange):
        make_params(7, 2, 193)  # n must not exceed N
    with pytest.raises(ParamOutOfRange):
        make_params(6, 2, 96)  # t too small


@given(st.integers(min_value=7, max_value=16), st.integers(min_value=2, max_value=7),
       st.integers(min_value=0, max_value=1 << 16))
def test_derived_fields_consistent(t, k, offset):
    n = (1 << t) + 1 + offset
    try:
        p = make_params(t, k, n)
    except ParamOutOfRange:
        return
    assert p.d == p.N - p.n
    assert p.d == p.x * p.tree_size + p.y
    assert 0 <= p.x < 1 << (k - 1)
    assert 0 <= p.y < p.tree_size
    assert 0 <= p.p < k
    if p.x > 0:
        assert 1 << p.p <= p.x + 1 < 1 << (p.p + 1)
    assert ceil_log2(p.N) == t + 1
    assert k <= max_k(t, n_odd=bool(n % 2))
