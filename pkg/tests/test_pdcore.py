import numpy as np
import pytest

from klwishart import pdcore
from klwishart.errors import DimensionMismatch, NotPositiveDefinite, NotSquare


def cofactor_det(a: np.ndarray) -> float:
    """Slow cofactor-expansion determinant, independent of any factorization."""
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    total = 0.0
    for j in range(n):
        minor = np.delete(np.delete(a, 0, axis=0), j, axis=1)
        total += (-1.0) ** j * a[0, j] * cofactor_det(minor)
    return total


def random_pd(d, rng):
    a = rng.standard_normal((d, d))
    return pdcore.make_pd(a @ a.T + d * np.eye(d))


class TestMakePD:
    def test_identity(self):
        a = pdcore.make_pd(np.eye(2))
        assert a.dim == 2
        assert a.logdet == 0.0

    def test_diag_logdet(self):
        a = pdcore.make_pd(np.diag([2.0, 3.0]))
        # oracle: product of eigenvalues
        expected = np.log(np.prod(np.linalg.eigvalsh(np.diag([2.0, 3.0]))))
        assert a.logdet == pytest.approx(expected, abs=1e-12)
        assert a.logdet == pytest.approx(np.log(6.0), abs=1e-12)

    def test_indefinite_rejected(self):
        # eigenvalues 3 and -1 by the 2x2 formula
        with pytest.raises(NotPositiveDefinite):
            pdcore.make_pd([[1.0, 2.0], [2.0, 1.0]])

    def test_not_square(self):
        with pytest.raises(NotSquare):
            pdcore.make_pd(np.ones((2, 3)))

    def test_symmetrized(self):
        a = pdcore.make_pd([[2.0, 0.1], [0.3, 2.0]])
        assert np.allclose(a.entries, a.entries.T)
        assert a.entries[0, 1] == pytest.approx(0.2)

    def test_tiny_pivot_rejected(self):
        with pytest.raises(NotPositiveDefinite):
            pdcore.make_pd(np.diag([1.0, 1e-14]))


class TestLogdet:
    def test_identity_zero(self):
        for d in (1, 2, 5):
            assert pdcore.logdet(pdcore.make_pd(np.eye(d))) == 0.0

    def test_diag_e(self):
        a = pdcore.make_pd(np.diag([np.e, np.e]))
        assert pdcore.logdet(a) == pytest.approx(2.0, abs=1e-12)

    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_matches_cofactor(self, d):
        rng = np.random.default_rng(d)
        a = random_pd(d, rng)
        assert pdcore.logdet(a) == pytest.approx(
            np.log(cofactor_det(a.entries)), abs=1e-10
        )


class TestSolve:
    def test_identity(self):
        a = pdcore.make_pd(np.eye(3))
        b = np.array([1.0, 2.0, 3.0])
        assert np.allclose(pdcore.solve(a, b), b)

    def test_diagonal_inverse(self):
        a = pdcore.make_pd(np.diag([2.0, 4.0]))
        x = pdcore.solve(a, np.eye(2))
        assert np.allclose(x, np.diag([0.5, 0.25]))

    def test_residual(self):
        rng = np.random.default_rng(7)
        a = random_pd(5, rng)
        x = pdcore.solve(a, np.eye(5))
        assert np.linalg.norm(a.entries @ x - np.eye(5)) < 1e-10

    @pytest.mark.parametrize("d", range(1, 11))
    def test_roundtrip(self, d):
        rng = np.random.default_rng(d + 100)
        a = random_pd(d, rng)
        x = rng.standard_normal((d, 3))
        rec = pdcore.solve(a, a.entries @ x)
        assert np.linalg.norm(rec - x) < 1e-9 * max(1.0, np.linalg.norm(x))


class TestTraceProduct:
    def test_identity(self):
        for d in (1, 3):
            i = pdcore.make_pd(np.eye(d))
            assert pdcore.trace_product(i, i) == pytest.approx(d)

    def test_diag(self):
        a = pdcore.make_pd(np.diag([1.0, 2.0]))
        b = pdcore.make_pd(np.diag([3.0, 4.0]))
        assert pdcore.trace_product(a, b) == pytest.approx(11.0)

    def test_random_vs_explicit(self):
        rng = np.random.default_rng(3)
        a, b = random_pd(4, rng), random_pd(4, rng)
        oracle = np.trace(a.entries @ b.entries)
        assert pdcore.trace_product(a, b) == pytest.approx(oracle, rel=1e-12)

    def test_dim_mismatch(self):
        with pytest.raises(DimensionMismatch):
            pdcore.trace_product(
                pdcore.make_pd(np.eye(2)), pdcore.make_pd(np.eye(3))
            )


class TestQuadForm:
    def test_zero_vector(self):
        a = pdcore.make_pd(np.eye(3))
        assert pdcore.quad_form(np.zeros(3), a) == 0.0

    def test_basis_vector(self):
        a = pdcore.make_pd(np.diag([5.0, 7.0]))
        assert pdcore.quad_form(np.array([1.0, 0.0]), a) == pytest.approx(5.0)

    def test_random_vs_explicit(self):
        rng = np.random.default_rng(11)
        a = random_pd(4, rng)
        v = rng.standard_normal(4)
        oracle = float(v @ a.entries @ v)
        assert pdcore.quad_form(v, a) == pytest.approx(oracle, rel=1e-12)

    def test_dim_mismatch(self):
        with pytest.raises(DimensionMismatch):
            pdcore.quad_form(np.zeros(3), pdcore.make_pd(np.eye(2)))

    def test_positive_for_random_vectors(self):
        rng = np.random.default_rng(21)
        a = random_pd(3, rng)
        for _ in range(1000):
            v = rng.standard_normal(3)
            assert pdcore.quad_form(v, a) > 0.0


def test_inverse_logdet_negates():
    rng = np.random.default_rng(5)
    for d in (1, 2, 4, 7):
        a = random_pd(d, rng)
        inv = pdcore.inverse(a)
        assert pdcore.logdet(inv) == pytest.approx(-pdcore.logdet(a), abs=1e-10)


def test_immutability():
    a = pdcore.make_pd(np.eye(2))
    with pytest.raises(ValueError):
        a.entries[0, 0] = 5.0
