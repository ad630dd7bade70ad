import numpy as np
import pytest
from hypothesis import given, strategies as st

from polarquant import CodeConfig, encode
from polarquant.channel import llr_convert, transmit
from polarquant.decoders import decode_float, f_fn, g_fn, hard_decision, pm_update, scl_decode, sc_decode
from polarquant.errors import ParameterError

from reference import ml_by_path_metric, recursive_sc


@pytest.mark.parametrize("a,b,out", [(2.0, -3.0, -2.0), (0.0, 5.0, 0.0), (-1.0, -4.0, 1.0)])
def test_f_examples(a, b, out):
    assert f_fn(a, b) == out


@pytest.mark.parametrize("a,b,u,out", [(1.5, 2.0, 1, 0.5), (1.5, 2.0, 0, 3.5), (-2.25, 0.0, 0, -2.25)])
def test_g_examples(a, b, u, out):
    assert g_fn(a, b, u) == out


def test_decision_and_metric_examples():
    assert hard_decision(3.2, False) == 0
    assert hard_decision(-0.1, False) == 1
    assert hard_decision(-7.0, True) == 0
    assert hard_decision(0.0, False) == 0
    assert pm_update(0.0, 3.0, 1) == 3.0
    assert pm_update(0.0, 3.0, 0) == 0.0
    assert pm_update(2.5, -1.5, 1) == 2.5
    assert pm_update(1.0, 0.0, 1) == 1.0


@pytest.mark.parametrize("llrs,u", [([5.0, 5.0], [0, 0]), ([5.0, -5.0], [1, 1])])
def test_two_bit_hand_traces(llrs, u):
    c = CodeConfig.all_info(2)
    assert list(sc_decode(c, llrs)) == u
    assert list(scl_decode(c, llrs, 4)) == u


@pytest.mark.parametrize("N,K", [(8, 4), (64, 32), (256, 128)])
def test_sc_matches_recursive_reference(N, K, rng):
    c = CodeConfig.from_beta(N, K)
    llrs = rng.normal(1.0, 1.5, (40, N))
    u, _ = decode_float(c, llrs)
    for row, frame in zip(u, llrs):
        ref, _ = recursive_sc(frame, c.frozen_mask)
        assert np.array_equal(row, ref)


@given(st.integers(1, 6), st.data())
def test_noiseless_decoding_recovers_message(n, data):
    N = 2**n
    K = data.draw(st.integers(1, N))
    c = CodeConfig.from_beta(N, K)
    m = np.array(data.draw(st.lists(st.integers(0, 1), min_size=K, max_size=K)))
    llrs = 20.0 * (1.0 - 2.0 * encode(c, m))
    assert np.array_equal(sc_decode(c, llrs), m)
    assert np.array_equal(scl_decode(c, llrs, 4), m)


def test_noiseless_channel_round_trip(rng):
    c = CodeConfig.from_beta(128, 64)
    m = rng.integers(0, 2, 64)
    y = transmit(encode(c, m), 1e-3, rng)
    assert np.array_equal(sc_decode(c, llr_convert(y, 1e-3)), m)


def test_sign_symmetry_on_all_info_code(rng):
    c = CodeConfig.all_info(32)
    llrs = rng.normal(size=(50, 32))
    a, b = sc_decode(c, llrs), sc_decode(c, -llrs)
    x_a = encode(c, a)
    x_b = encode(c, b)
    # negating every LLR flips every hard decision on the codeword
    assert np.array_equal(x_a ^ 1, x_b)


def test_list_of_one_is_sc(rng):
    c = CodeConfig.from_beta(64, 32)
    llrs = rng.normal(0.8, 1.6, (300, 64))
    assert np.array_equal(scl_decode(c, llrs, 1), sc_decode(c, llrs))


@pytest.mark.parametrize("N,K", [(4, 2), (8, 3), (8, 4)])
def test_full_list_is_ml_under_path_metric(N, K, rng):
    c = CodeConfig.from_beta(N, K)
    for _ in range(60):
        llrs = rng.normal(0.5, 2.0, N)
        u, pm = decode_float(c, llrs, 2**K)
        m_ml, pm_ml = ml_by_path_metric(c, llrs)
        assert pm == pytest.approx(pm_ml, abs=1e-9)
        assert np.array_equal(u[c.info_set], m_ml)


def test_path_metric_equals_forced_path_metric(rng):
    c = CodeConfig.from_beta(16, 8)
    for L in (2, 8, 32):
        llrs = rng.normal(0.5, 2.0, 16)
        u, pm = decode_float(c, llrs, L)
        _, ref = recursive_sc(llrs, c.frozen_mask, forced=u)
        assert pm == pytest.approx(ref, abs=1e-9)


@given(st.floats(0, 1e6), st.floats(-1e6, 1e6), st.integers(0, 1))
def test_path_metric_never_decreases(pm, alpha, bit):
    assert pm_update(pm, alpha, bit) >= pm


def test_decoders_reject_bad_input():
    c = CodeConfig.from_beta(8, 4)
    with pytest.raises(ParameterError):
        sc_decode(c, np.zeros(7))
    with pytest.raises(ParameterError):
        scl_decode(c, np.zeros(8), 0)


def test_batch_equals_single_frames(rng):
    c = CodeConfig.from_beta(32, 12)
    llrs = rng.normal(1.0, 1.0, (20, 32))
    batch = scl_decode(c, llrs, 4)
    for row, frame in zip(batch, llrs):
        assert np.array_equal(row, scl_decode(c, frame, 4))
