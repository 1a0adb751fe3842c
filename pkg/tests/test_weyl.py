import numpy as np
import pytest

from eoa.gf import gf_new
from eoa.weyl import (embed, frob, group_average, is_hermitian, is_traceless,
                      is_unitary, phase_distance, shift_clock, weyl,
                      weyl_from_field)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def random_matrix(rng, dim):
    return rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))


def test_shift_clock_d2_are_paulis():
    s, t = shift_clock(2)
    assert np.allclose(s, SX)
    assert np.allclose(t, SZ)


def test_shift_clock_commutation_d3():
    # with S = sum |k><k+1| and T = diag(omega^k): S T = omega T S
    s, t = shift_clock(3)
    omega = np.exp(2j * np.pi / 3)
    assert np.allclose(s @ t, omega * (t @ s))


def test_shift_has_order_d():
    for d in [2, 3, 5]:
        s, _ = shift_clock(d)
        assert np.allclose(np.linalg.matrix_power(s, d), np.eye(d))


def test_weyl_identity_and_xy():
    assert np.allclose(weyl(2, 0, 0), np.eye(2))
    assert np.allclose(weyl(2, 1, 1), -1j * SY)   # sigma_x sigma_z


def test_weyl_unitary_and_traceless():
    for d in [2, 3]:
        for a in range(d):
            for b in range(d):
                u = weyl(d, a, b)
                assert is_unitary(u)
                if (a, b) != (0, 0):
                    assert abs(np.trace(u)) < 1e-12


def test_weyl_projectivity():
    """U_l1 U_l2 = phase * U_(l1+l2) with |phase| = 1, for d = 2, 3."""
    for d in [2, 3]:
        for a1 in range(d):
            for b1 in range(d):
                for a2 in range(d):
                    for b2 in range(d):
                        lhs = weyl(d, a1, b1) @ weyl(d, a2, b2)
                        rhs = weyl(d, (a1 + a2) % d, (b1 + b2) % d)
                        phase = np.trace(rhs.conj().T @ lhs) / d
                        assert abs(abs(phase) - 1) < 1e-12
                        assert frob(lhs - phase * rhs) < 1e-12


def test_group_average_identity_and_paulis():
    assert np.allclose(group_average(2, np.eye(2, dtype=complex)), np.eye(2))
    assert frob(group_average(2, SX)) < 1e-14
    assert frob(group_average(2, SZ)) < 1e-14


def test_group_average_trace_formula_random():
    rng = np.random.default_rng(42)
    for d in [2, 3]:
        for _ in range(20):
            x = random_matrix(rng, d)
            expected = np.trace(x) / d * np.eye(d)
            assert frob(group_average(d, x) - expected) < 1e-12


def test_group_average_is_projection_and_commutes():
    rng = np.random.default_rng(1)
    for d in [2, 3]:
        x = random_matrix(rng, d)
        once = group_average(d, x)
        twice = group_average(d, once)
        assert frob(once - twice) < 1e-12
        for a in range(d):
            for b in range(d):
                u = weyl(d, a, b)
                assert frob(once @ u - u @ once) < 1e-12


def test_group_average_dimension_mismatch():
    with pytest.raises(ValueError):
        group_average(2, np.eye(3))


def test_embed_identity_and_trace():
    assert np.allclose(embed(np.eye(4, dtype=complex), (0, 2), 3, 2), np.eye(8))
    rng = np.random.default_rng(2)
    x = random_matrix(rng, 4)
    assert np.isclose(np.trace(embed(x, (1, 2), 3, 2)), 2 * np.trace(x))


def test_embed_matches_explicit_kron():
    rng = np.random.default_rng(3)
    a = random_matrix(rng, 2)
    b = random_matrix(rng, 2)
    assert np.allclose(embed(np.kron(a, b), (0, 2), 3, 2),
                       np.kron(a, np.kron(np.eye(2), b)))
    assert np.allclose(embed(a, (1,), 3, 2),
                       np.kron(np.eye(2), np.kron(a, np.eye(2))))


def test_embed_is_homomorphism_on_support():
    rng = np.random.default_rng(4)
    x = random_matrix(rng, 4)
    y = random_matrix(rng, 4)
    lhs = embed(x @ y, (1, 3), 4, 2)
    rhs = embed(x, (1, 3), 4, 2) @ embed(y, (1, 3), 4, 2)
    assert np.allclose(lhs, rhs)


def test_embed_bad_support():
    with pytest.raises(ValueError):
        embed(np.eye(4), (2, 1), 3, 2)
    with pytest.raises(ValueError):
        embed(np.eye(4), (0, 3), 3, 2)


def test_weyl_from_field_gf4():
    f4 = gf_new(2, 2)
    assert np.allclose(weyl_from_field(f4, 0), np.eye(2))
    expected = [np.eye(2, dtype=complex), SX, SZ, SX @ SZ]
    for e in range(4):
        assert phase_distance(weyl_from_field(f4, e), expected[e]) < 1e-12


def test_field_conjugation_average_matches_group_average():
    f4 = gf_new(2, 2)
    rng = np.random.default_rng(5)
    x = random_matrix(rng, 2)
    x -= np.trace(x) / 2 * np.eye(2)
    acc = np.zeros((2, 2), dtype=complex)
    for e in range(4):
        u = weyl_from_field(f4, e)
        acc += u.conj().T @ x @ u
    assert frob(acc / 4) < 1e-12
    assert frob(acc / 4 - group_average(2, x)) < 1e-12


def test_predicates():
    assert is_unitary(weyl(3, 1, 2))
    assert not is_unitary(2 * np.eye(2))
    assert is_hermitian(SY)
    assert not is_hermitian(1j * np.eye(2))
    assert is_traceless(SX)
    assert not is_traceless(np.eye(2))
