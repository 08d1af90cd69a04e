import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spdmeans import (
    ComplexMatrix,
    LengthMismatch,
    NonPositiveEntry,
    ParamOutOfRange,
    check_compound_mean_identities,
    check_log_majorization_means,
    compound,
    compound_spd,
    eig_hermitian,
    log_majorizes,
    majorization_report,
    majorizes,
    polar,
    random_invertible,
    random_spd,
    spectrum,
)

finite_vec = st.lists(
    st.floats(min_value=-50.0, max_value=50.0, allow_nan=False),
    min_size=2,
    max_size=8,
)


class TestMajorizes:
    def test_basic(self):
        assert majorizes([2.0, 2.0], [3.0, 1.0])
        assert not majorizes([3.0, 1.0], [2.0, 2.0])

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            majorizes([1.0], [1.0, 2.0])

    @given(finite_vec)
    @settings(max_examples=60, deadline=None)
    def test_reflexive(self, y):
        assert majorizes(y, y)

    @given(finite_vec, st.integers(min_value=1, max_value=5))
    @settings(max_examples=60, deadline=None)
    def test_permutation_average_is_majorized(self, y, k):
        # Averaging permutations moves toward the mean: Birkhoff/Rado oracle.
        rng = np.random.default_rng(k)
        y = np.asarray(y)
        perms = [rng.permutation(y) for _ in range(k + 1)]
        x = np.mean(perms, axis=0)
        assert majorizes(x, y)

    @given(finite_vec)
    @settings(max_examples=40, deadline=None)
    def test_mean_vector_is_least(self, y):
        y = np.asarray(y)
        x = np.full_like(y, y.mean())
        assert majorizes(x, y)

    def test_mutual_majorization_means_equal_sorted(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            y = rng.standard_normal(5)
            x = rng.permutation(y)
            assert majorizes(x, y) and majorizes(y, x)
            rep = majorization_report(x, y)
            assert rep.worst_margin >= -rep.tol

    def test_transitive_on_witnessed_triples(self):
        rng = np.random.default_rng(3)
        found = 0
        for _ in range(200):
            z = rng.standard_normal(4)
            y = 0.5 * z + 0.5 * rng.permutation(z)
            x = 0.5 * y + 0.5 * rng.permutation(y)
            if majorizes(x, y) and majorizes(y, z):
                assert majorizes(x, z)
                found += 1
        assert found > 50


class TestLogMajorizes:
    def test_diagonal_counterexample_inputs(self):
        assert log_majorizes([4.0, 2.0], [8.0, 1.0])

    def test_diagonal_counterexample_means_fail(self):
        r2 = np.sqrt(2.0)
        assert not log_majorizes([4 * r2, 2.0], [4.0, 2 * r2])

    def test_equal_vectors(self):
        assert log_majorizes([3.0, 1.0], [3.0, 1.0])

    def test_rejects_non_positive(self):
        with pytest.raises(NonPositiveEntry):
            log_majorizes([1.0, 0.0], [1.0, 1.0])

    def test_weyl_moduli_vs_singular_values(self):
        # |lambda(M U)| <=_log s(M) for any unitary U.
        from spdmeans import random_unitary

        for seed in range(15):
            m = random_invertible(4, 500 + seed)
            u = random_unitary(4, 600 + seed)
            mu = ComplexMatrix(m.mat @ u.mat)
            moduli = np.abs(spectrum(mu))
            gram = m.mat.conj().T @ m.mat
            from spdmeans import HermitianMatrix

            svals = np.sqrt(eig_hermitian(HermitianMatrix(gram)).values)
            assert log_majorizes(np.sort(moduli)[::-1], svals)


class TestCompound:
    def test_first_compound_is_identity_map(self):
        m = random_invertible(3, 1)
        assert np.array_equal(compound(m, 1).mat, m.mat)

    def test_diagonal_minors(self):
        c2 = compound(ComplexMatrix(np.diag([1.0, 2.0, 3.0])), 2)
        assert np.allclose(c2.mat, np.diag([2.0, 3.0, 6.0]))

    def test_full_compound_is_determinant(self):
        m = random_invertible(4, 2)
        c = compound(m, 4)
        assert c.n == 1
        assert abs(c.mat[0, 0] - np.linalg.det(m.mat)) < 1e-10 * abs(c.mat[0, 0])

    @pytest.mark.parametrize("k", [2, 3])
    def test_multiplicativity(self, k):
        a = random_invertible(4, 10 + k)
        b = random_invertible(4, 20 + k)
        lhs = compound(ComplexMatrix(a.mat @ b.mat), k).mat
        rhs = compound(a, k).mat @ compound(b, k).mat
        assert np.abs(lhs - rhs).max() <= 1e-11 * np.abs(lhs).max()

    def test_out_of_range(self):
        m = random_invertible(3, 3)
        with pytest.raises(ParamOutOfRange):
            compound(m, 0)
        with pytest.raises(ParamOutOfRange):
            compound(m, 4)

    @pytest.mark.parametrize("k", [2, 3])
    def test_top_eigenvalue_is_product(self, k):
        for seed in range(10):
            a = random_spd(6, 700 + seed)
            lam = eig_hermitian(a).values
            top = eig_hermitian(compound_spd(a, k)).values[0]
            target = float(np.prod(lam[:k]))
            assert abs(top - target) <= 1e-10 * abs(target)


class TestMeanChecks:
    def test_order_counterexample_pair(self):
        from spdmeans import SpdMatrix

        a = SpdMatrix([[6.0, -3.0], [-3.0, 4.0]])
        b = SpdMatrix([[4.0, -2.0], [-2.0, 5.0]])
        assert check_log_majorization_means(a, b, 0.5)

    def test_equal_matrices(self):
        a = random_spd(3, 5)
        assert check_log_majorization_means(a, a, 0.3)

    def test_seeded_battery(self):
        for trial in range(60):
            a = random_spd(2 + trial % 7, 3000 + trial)
            b = random_spd(2 + trial % 7, 4000 + trial)
            t = (trial % 11) / 10.0
            assert check_log_majorization_means(a, b, t)

    def test_compound_identities_trivial_orders(self):
        a = random_spd(4, 61)
        b = random_spd(4, 62)
        rep1 = check_compound_mean_identities(a, b, 0.7, 1)
        assert rep1.passed
        rep4 = check_compound_mean_identities(a, b, 0.7, 4)
        assert rep4.passed  # order n reduces to the determinant law

    def test_compound_identities_middle_orders(self):
        a = random_spd(4, 63)
        b = random_spd(4, 64)
        for k in (2, 3):
            rep = check_compound_mean_identities(a, b, 0.7, k)
            assert rep.sharp_residual <= 1e-10
            assert rep.natural_residual <= 1e-10
