import numpy as np
import pytest

from spinengine.spin import SpinValue, eigenprojectors_of, spin_direction_operator, spin_operators


def test_spin_value_parsing():
    assert SpinValue.parse("1/2").twice_s == 1
    assert SpinValue.parse("3/2").dimension == 4
    assert SpinValue.parse(1).twice_s == 2
    assert str(SpinValue.parse("2/2")) == "1"
    for bad in ("0", "1/3", "-1/2", "x"):
        with pytest.raises(ValueError):
            SpinValue.parse(bad)


def test_spin_half():
    ops = spin_operators(SpinValue(1))
    np.testing.assert_allclose(ops.sz, np.diag([0.5, -0.5]))
    np.testing.assert_allclose(ops.sx, 0.5 * np.array([[0, 1], [1, 0]]))


def test_spin_one():
    ops = spin_operators(SpinValue(2))
    np.testing.assert_allclose(ops.sz, np.diag([1, 0, -1]))
    np.testing.assert_allclose(ops.sx, np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]]) / np.sqrt(2))


@pytest.mark.parametrize("twice", [1, 2, 3, 4, 5])
def test_su2_algebra(twice):
    sx, sy, sz = spin_operators(SpinValue(twice))
    s = twice / 2
    for a, b, c in ((sx, sy, sz), (sy, sz, sx), (sz, sx, sy)):
        assert np.max(np.abs(a @ b - b @ a - 1j * c)) < 1e-12
    assert np.max(np.abs(sx @ sx + sy @ sy + sz @ sz - s * (s + 1) * np.eye(twice + 1))) < 1e-12
    np.testing.assert_allclose(np.diag(sz).real, s - np.arange(twice + 1))


def test_direction_operator():
    half = SpinValue(1)
    ops = spin_operators(half)
    np.testing.assert_allclose(spin_direction_operator(half, 0, 0), ops.sz, atol=1e-16)
    np.testing.assert_allclose(spin_direction_operator(half, np.pi / 2, 0), ops.sx, atol=1e-16)
    op = spin_direction_operator(SpinValue(2), np.pi / 3, np.pi / 4)
    np.testing.assert_allclose(np.linalg.eigvalsh(op), [-1, 0, 1], atol=1e-10)


def test_eigenprojectors():
    sz = spin_operators(SpinValue(1)).sz
    (lo, p_lo), (hi, p_hi) = eigenprojectors_of(sz)
    assert (lo, hi) == (-0.5, 0.5)
    np.testing.assert_allclose(p_hi, np.diag([1, 0]))
    (one, proj), = eigenprojectors_of(np.eye(3))
    assert one == pytest.approx(1.0)
    np.testing.assert_allclose(proj, np.eye(3))
    sx = spin_operators(SpinValue(1)).sx
    plus = eigenprojectors_of(sx)[1][1]
    np.testing.assert_allclose(plus, 0.5 * np.ones((2, 2)), atol=1e-15)


@pytest.mark.parametrize("twice", [1, 2, 3])
def test_projector_algebra(twice):
    op = spin_direction_operator(SpinValue(twice), 1.1, 0.4)
    projs = [p for _, p in eigenprojectors_of(op)]
    assert len(projs) == twice + 1
    assert np.max(np.abs(sum(projs) - np.eye(twice + 1))) < 1e-10
    for i, p in enumerate(projs):
        for k, q in enumerate(projs):
            want = p if i == k else 0
            assert np.max(np.abs(p @ q - want)) < 1e-10
