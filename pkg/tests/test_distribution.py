import numpy as np
import pytest

import corpusgen
from sentlen.distribution import (
    Ecdf,
    empirical_ccdf,
    fit_ccdf_stretched_exp,
    fit_stretched_exponential,
    kolmogorov_sf,
    ks_after_linear_map,
    ks_distance,
    ks_two_sample,
    mean_normalize,
)
from sentlen.exceptions import DegenerateInputError


class TestMeanNormalize:
    def test_basic(self):
        assert mean_normalize([2, 4, 6]) == pytest.approx([0.5, 1.0, 1.5])

    def test_constant(self):
        assert mean_normalize([7, 7]) == pytest.approx([1.0, 1.0])

    def test_output_mean_is_one(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            x = rng.uniform(0.1, 10, size=rng.integers(2, 200))
            assert mean_normalize(x).mean() == pytest.approx(1.0, abs=1e-12)

    def test_empty(self):
        with pytest.raises(DegenerateInputError):
            mean_normalize([])

    def test_zero_mean(self):
        with pytest.raises(DegenerateInputError):
            mean_normalize([-1, 1])


class TestKsDistance:
    def test_identical(self):
        e = Ecdf.from_samples([1, 2, 3])
        assert ks_distance(e, e) == 0.0

    def test_disjoint_supports(self):
        a = Ecdf.from_samples([1, 2])
        b = Ecdf.from_samples([3, 4])
        assert ks_distance(a, b) == 1.0

    def test_hand_enumerated(self):
        a = Ecdf.from_samples([1, 2, 3])
        b = Ecdf.from_samples([2, 3, 4])
        assert ks_distance(a, b) == pytest.approx(1 / 3, abs=1e-15)

    def test_symmetric_nonnegative(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            a = Ecdf.from_samples(rng.normal(size=rng.integers(1, 30)))
            b = Ecdf.from_samples(rng.normal(size=rng.integers(1, 30)))
            d = ks_distance(a, b)
            assert d >= 0
            assert d == ks_distance(b, a)

    def test_triangle_inequality(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            e = [Ecdf.from_samples(rng.integers(0, 10, size=rng.integers(1, 20)))
                 for _ in range(3)]
            assert ks_distance(e[0], e[2]) <= (
                ks_distance(e[0], e[1]) + ks_distance(e[1], e[2]) + 1e-15)

    def test_monotone_transform_invariance(self):
        rng = np.random.default_rng(3)
        a = rng.normal(size=40)
        b = rng.normal(size=25)
        base = ks_distance(Ecdf.from_samples(a), Ecdf.from_samples(b))
        for f in (np.exp, np.arctan, lambda v: v ** 3):
            assert ks_distance(Ecdf.from_samples(f(a)),
                               Ecdf.from_samples(f(b))) == pytest.approx(
                base, abs=1e-15)

    def test_scaling_invariance_after_mean_normalization(self):
        rng = np.random.default_rng(4)
        a = rng.uniform(1, 10, size=50)
        b = rng.uniform(1, 10, size=30)
        base = ks_distance(Ecdf.from_samples(mean_normalize(a)),
                           Ecdf.from_samples(mean_normalize(b)))
        scaled = ks_distance(Ecdf.from_samples(mean_normalize(3.7 * a)),
                             Ecdf.from_samples(mean_normalize(3.7 * b)))
        assert scaled == pytest.approx(base, abs=1e-12)


class TestKsTwoSample:
    def test_identical_samples(self):
        r = ks_two_sample([1, 2, 3, 4, 5], [1, 2, 3, 4, 5])
        assert r.kappa == 0.0
        assert r.p_value == 1.0
        assert r.accepted

    def test_undersized(self):
        with pytest.raises(DegenerateInputError):
            ks_two_sample([1, 2, 3], [1, 2, 3, 4, 5])

    def test_different_distributions_rejected(self):
        rng = np.random.default_rng(5)
        u = rng.uniform(size=2000)
        r = ks_two_sample(u, u ** 2)
        assert not r.accepted
        assert r.p_value < 0.01

    def test_split_halves_accept(self):
        # two halves of one shuffled series come from the same distribution
        rng = np.random.default_rng(6)
        values = corpusgen.sentence_word_counts(2000, 0.75, rng).astype(float)
        accepted = 0
        n_trials = 60
        for _ in range(n_trials):
            perm = rng.permutation(values)
            r = ks_two_sample(perm[:1000], perm[1000:])
            accepted += r.accepted
        assert accepted >= 0.95 * n_trials

    def test_p_monotone_in_kappa(self):
        lams = np.linspace(0.01, 3, 200)
        ps = [kolmogorov_sf(l) for l in lams]
        # small-lambda plateau at 1.0 carries truncation noise ~1e-12
        assert all(a >= b - 1e-9 for a, b in zip(ps, ps[1:]))
        assert all(0 <= p <= 1 for p in ps)


class TestKsAfterLinearMap:
    def test_exact_map(self):
        x = np.arange(1, 101, dtype=float)
        r = ks_after_linear_map(x, 3 * x + 1)
        assert r.kappa == pytest.approx(0.0, abs=1e-12)
        assert r.accepted

    def test_identity(self):
        x = np.arange(1, 51, dtype=float)
        r = ks_after_linear_map(x, x)
        assert r.kappa == pytest.approx(0.0, abs=1e-12)

    def test_constant_x(self):
        with pytest.raises(DegenerateInputError):
            ks_after_linear_map(np.ones(20), np.arange(20.0))


class TestStretchedExponentialFit:
    def test_exact_model_on_grid(self):
        x = np.arange(1, 101, dtype=float)
        fit = fit_stretched_exponential(x, np.exp(-0.05 * x))
        assert fit.mu == pytest.approx(0.05, abs=1e-6)
        assert fit.b == pytest.approx(1.0, abs=1e-6)
        assert fit.fit_rmse < 1e-10

    def test_exact_stretched_model(self):
        x = np.arange(1, 101, dtype=float)
        fit = fit_stretched_exponential(x, np.exp(-0.3 * x ** 0.8))
        assert fit.mu == pytest.approx(0.3, abs=1e-6)
        assert fit.b == pytest.approx(0.8, abs=1e-6)

    def test_geometric_lengths_give_b_near_one(self):
        samples = np.random.default_rng(7).geometric(0.06, size=5000)
        fit = fit_ccdf_stretched_exp(samples)
        assert 0.7 <= fit.b <= 1.3

    def test_book_like_lengths(self):
        values = corpusgen.sentence_word_counts(
            3000, 0.75, np.random.default_rng(8))
        fit = fit_ccdf_stretched_exp(values)
        assert fit.mu > 0
        assert 0.7 <= fit.b <= 1.5

    def test_constant_series(self):
        with pytest.raises(DegenerateInputError):
            fit_ccdf_stretched_exp(np.full(100, 7))

    def test_too_few_samples(self):
        with pytest.raises(DegenerateInputError):
            fit_ccdf_stretched_exp(np.arange(1, 30))

    def test_ccdf_boundaries_excluded(self):
        x, ccdf = empirical_ccdf([1, 1, 2, 3, 3, 4])
        assert np.all(ccdf > 0) and np.all(ccdf < 1)
        assert x.max() < 4  # top point has CCDF 0
