import math

import numpy as np
import pytest

from densecode import qmat
from helpers import I2, SX, SZ, rand_density, rand_unitary

# binary entropy at p = 0.05, frozen from a 40-digit evaluation
H2_005 = 0.2863969571159561


def test_herm_eig_identity():
    dec = qmat.herm_eig(np.eye(2))
    np.testing.assert_allclose(dec.eigenvalues, [1.0, 1.0], atol=1e-12)


def test_herm_eig_sigma_z():
    dec = qmat.herm_eig(SZ)
    np.testing.assert_allclose(dec.eigenvalues, [-1.0, 1.0], atol=1e-12)


def test_herm_eig_rotated_pauli():
    # (s_x + s_z)/sqrt(2): trace 0, determinant -1, so eigenvalues -1 and 1
    dec = qmat.herm_eig((SX + SZ) / np.sqrt(2))
    np.testing.assert_allclose(dec.eigenvalues, [-1.0, 1.0], atol=1e-12)


def test_herm_eig_rejects_non_square():
    with pytest.raises(ValueError, match="square"):
        qmat.herm_eig(np.ones((2, 3)))


def test_herm_eig_rejects_non_hermitian_naming_deviation():
    m = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(ValueError, match="1.0"):
        qmat.herm_eig(m)


def test_herm_eig_reconstruction_and_orthonormality():
    rng = np.random.default_rng(3)
    for _ in range(50):
        g = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        h = (g + g.conj().T) / 2
        h /= np.abs(h).max()
        w, v = qmat.herm_eig(h)
        assert np.all(np.diff(w) >= 0)
        np.testing.assert_allclose(v.conj().T @ v, np.eye(5), atol=1e-10)
        np.testing.assert_allclose((v * w) @ v.conj().T, h, atol=1e-10)
        assert abs(w.sum() - h.trace().real) <= 1e-10


def test_entropy_pure_state():
    assert qmat.von_neumann_entropy(np.diag([1.0, 0.0])) == 0.0


def test_entropy_maximally_mixed():
    assert qmat.von_neumann_entropy(np.eye(4) / 4) == pytest.approx(2.0, abs=1e-12)


def test_entropy_binary():
    assert qmat.von_neumann_entropy(np.diag([0.95, 0.05])) == pytest.approx(H2_005, abs=1e-4)


def test_entropy_clips_tiny_negatives():
    assert qmat.von_neumann_entropy(np.diag([1.0 + 5e-11, -5e-11])) == pytest.approx(0.0, abs=1e-9)


def test_entropy_rejects_real_negatives():
    with pytest.raises(ValueError, match="positivity"):
        qmat.von_neumann_entropy(np.diag([1.2, -0.2]))


def test_entropy_unitary_invariance():
    rng = np.random.default_rng(4)
    for _ in range(25):
        rho = rand_density(rng, 4).matrix
        u = rand_unitary(rng, 4)
        s1 = qmat.von_neumann_entropy(rho)
        s2 = qmat.von_neumann_entropy(u @ rho @ u.conj().T)
        assert abs(s1 - s2) <= 1e-9


def test_relative_entropy_identical_arguments():
    rng = np.random.default_rng(5)
    rho = rand_density(rng, 3).matrix
    assert qmat.relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-10)


def test_relative_entropy_pure_vs_mixed():
    # tr rho log2 rho = 0 and -tr rho log2 (1/2) = 1 for rho = |0><0|
    assert qmat.relative_entropy(np.diag([1.0, 0.0]), I2 / 2) == pytest.approx(1.0, abs=1e-10)


def test_relative_entropy_support_violation_is_inf():
    assert qmat.relative_entropy(I2 / 2, np.diag([1.0, 0.0])) == math.inf


def test_relative_entropy_klein_inequality():
    rng = np.random.default_rng(6)
    for _ in range(25):
        a = rand_density(rng, 4).matrix
        b = rand_density(rng, 4).matrix
        assert qmat.relative_entropy(a, b) >= 0.0


def test_relative_entropy_dimension_mismatch():
    with pytest.raises(ValueError, match="mismatch"):
        qmat.relative_entropy(np.eye(2) / 2, np.eye(3) / 3)


def test_tensor_identities():
    np.testing.assert_array_equal(qmat.tensor(I2, I2), np.eye(4))


def test_tensor_pauli_block_layout():
    # hand expansion of s_x (x) s_z
    t = qmat.tensor(SX, SZ)
    expected = np.zeros((4, 4), dtype=complex)
    expected[0, 2] = 1
    expected[1, 3] = -1
    expected[2, 0] = 1
    expected[3, 1] = -1
    np.testing.assert_array_equal(t, expected)


def test_tensor_projector_with_mixed():
    t = qmat.tensor(np.diag([1.0, 0.0]), I2 / 2)
    np.testing.assert_allclose(t, np.diag([0.5, 0.5, 0.0, 0.0]), atol=1e-15)


def test_partial_trace_bell():
    # hand computation: both marginals of the Bell projector are 1/2
    v = np.zeros(4)
    v[0] = v[3] = 1 / np.sqrt(2)
    bell = np.outer(v, v)
    np.testing.assert_allclose(qmat.partial_trace(bell, (2, 2), "a"), I2 / 2, atol=1e-15)
    np.testing.assert_allclose(qmat.partial_trace(bell, (2, 2), "b"), I2 / 2, atol=1e-15)


def test_partial_trace_factorizes_products():
    rng = np.random.default_rng(7)
    for da, db in [(2, 2), (2, 3), (3, 2)]:
        x = rng.standard_normal((da, da)) + 1j * rng.standard_normal((da, da))
        y = rng.standard_normal((db, db)) + 1j * rng.standard_normal((db, db))
        np.testing.assert_allclose(
            qmat.partial_trace(qmat.tensor(x, y), (da, db), "a"), x.trace() * y, atol=1e-12
        )
        np.testing.assert_allclose(
            qmat.partial_trace(qmat.tensor(x, y), (da, db), "b"), y.trace() * x, atol=1e-12
        )


def test_partial_trace_mixed():
    np.testing.assert_allclose(qmat.partial_trace(np.eye(4) / 4, (2, 2), "b"), I2 / 2, atol=1e-15)


def test_partial_trace_preserves_trace():
    rng = np.random.default_rng(8)
    rho = rand_density(rng, 6, (2, 3)).matrix
    for traced in ("a", "b"):
        assert qmat.partial_trace(rho, (2, 3), traced).trace() == pytest.approx(1.0, abs=1e-12)


def test_partial_trace_dimension_error():
    with pytest.raises(ValueError, match="dims"):
        qmat.partial_trace(np.eye(4), (2, 3), "a")


def test_density_spectrum_in_unit_interval():
    rng = np.random.default_rng(9)
    for _ in range(20):
        w = qmat.density_spectrum(rand_density(rng, 4).matrix)
        assert w.min() >= 0.0 and w.max() <= 1.0 + 1e-12
        assert w.sum() == pytest.approx(1.0, abs=1e-12)
