"""
Unit tests for word counting, growth constants and simulation checks.
"""

import numpy as np
import pytest

from whtrim.automata import build_compressed, build_isomorphic, build_minimal
from whtrim.constraints import LimitExceeded, WeaklyHardConstraint, Word, language_size
from whtrim.language import (
    GrowthEstimate,
    ParameterMismatch,
    check_inclusion_bounded,
    check_simulation,
    count_series,
    count_words,
    find_inclusion_counterexample,
    growth,
    prefactor,
)


def window_grid(min_m):
    """(m, k) for m in [min_m, 5], k in [m + 1, 14]; m >= 4 only in slow runs."""
    return [
        pytest.param(m, k, marks=pytest.mark.slow if m >= 4 else ())
        for m in range(min_m, 6)
        for k in range(m + 1, 15)
    ]


class TestCountSeries:
    """Tests for exact word counts."""

    def test_small_lengths(self):
        """A(2,5) accepts 1, 2, 4, 7 words of length 0..3."""
        assert count_series(build_minimal(2, 5), 3) == [1, 2, 4, 7]

    @pytest.mark.parametrize("m,k", [(m, k) for m in range(1, 4) for k in range(m + 1, 9)])
    def test_matches_oracle(self, m, k):
        """Should agree with brute-force enumeration up to length 12."""
        counts = count_series(build_minimal(m, k), 12)
        c = WeaklyHardConstraint.any_miss(m, k)
        assert counts == [language_size(c, length) for length in range(13)]

    def test_count_words(self):
        """count_words is the last entry of the series."""
        a = build_minimal(2, 5)
        assert count_words(a, 0) == 1
        assert count_words(a, 1) == 2
        assert count_words(a, 3) == 7

    def test_compressed_is_larger(self):
        """T(2,5,3) accepts strictly more words of length 7."""
        a, t = build_minimal(2, 5), build_compressed(2, 5, 3)
        assert count_words(t, 7) >= count_words(a, 7) + 1
        for n_a, n_t in zip(count_series(a, 15), count_series(t, 15)):
            assert n_t >= n_a

    def test_exact_big_integers(self):
        """Counts do not overflow."""
        counts = count_series(build_minimal(2, 36), 400)
        assert counts[400] > 2**63
        assert isinstance(counts[400], int)

    def test_negative_length(self):
        """Should reject negative lengths."""
        with pytest.raises(ValueError):
            count_series(build_minimal(2, 5), -1)


class TestGrowth:
    """Tests for asymptotic growth constants."""

    @pytest.mark.parametrize(
        "k,a,lam",
        [(36, 7.053, 1.151), (37, 7.240, 1.148)],
    )
    def test_known_constants(self, k, a, lam):
        """AnyMiss(2, k) growth constants."""
        estimate = growth(build_minimal(2, k))
        assert estimate.a == pytest.approx(a, abs=2e-3)
        assert estimate.lambda_ == pytest.approx(lam, abs=2e-3)
        assert estimate.source == f"anymiss:2:{k}"
        assert estimate.states == build_minimal(2, k).num_states

    @pytest.mark.parametrize("m,k", [(1, 2), (1, 3), (1, 4)])
    def test_ratio_convergence(self, m, k):
        """Successive count ratios at length 200 are within 1e-3 of lambda."""
        a = build_minimal(m, k)
        estimate = growth(a)
        counts = count_series(a, 201)
        assert abs(counts[201] / counts[200] - estimate.lambda_) <= 1e-3

    def test_fibonacci_ratio(self):
        """No two consecutive misses: counts are Fibonacci numbers, lambda is golden."""
        a = build_minimal(1, 2)
        assert count_series(a, 6) == [1, 2, 3, 5, 8, 13, 21]
        assert growth(a).lambda_ == pytest.approx((1 + 5**0.5) / 2, abs=1e-9)

    def test_ratio_convergence_small_gap(self):
        """A(2,36) has |lambda_2| close to lambda; its ratio settles only by length 1000."""
        a = build_minimal(2, 36)
        estimate = growth(a)
        counts = count_series(a, 1001)
        assert abs(counts[201] / counts[200] - estimate.lambda_) > 1e-4
        assert abs(counts[1001] / counts[1000] - estimate.lambda_) <= 1e-6

    def test_prefactor_convergence(self):
        """count / lambda^l approaches a."""
        a = build_minimal(2, 36)
        estimate = growth(a)
        ratio = count_words(a, 400) / estimate.lambda_**400
        assert ratio == pytest.approx(estimate.a, rel=1e-2)
        assert estimate.estimate(400) == pytest.approx(count_words(a, 400), rel=1e-2)

    def test_prefactor_scale_invariant(self):
        """Rescaling either Perron vector leaves a unchanged."""
        x = np.array([0.2, 0.3, 0.5])
        y = np.array([0.1, 0.6, 0.3])
        assert prefactor(x, y, 0) == pytest.approx(prefactor(3 * x, 0.5 * y, 0))

    def test_estimate(self):
        """GrowthEstimate evaluates a * lambda^l."""
        estimate = GrowthEstimate(a=2.0, lambda_=1.5, source="x", states=1)
        assert estimate.estimate(2) == pytest.approx(4.5)

    @pytest.mark.slow
    def test_anymiss_2_300(self):
        """AnyMiss(2,300): 69.738 * 1.028^l."""
        estimate = growth(build_minimal(2, 300))
        assert estimate.a == pytest.approx(69.738, abs=2e-2)
        assert estimate.lambda_ == pytest.approx(1.028, abs=1e-3)

    @pytest.mark.slow
    def test_trim_2_300_260(self):
        """T(2,300,260): 109.224 * 1.030^l."""
        estimate = growth(build_compressed(2, 300, 260))
        assert estimate.a == pytest.approx(109.224, abs=2e-2)
        assert estimate.lambda_ == pytest.approx(1.030, abs=1e-3)


class TestSimulation:
    """Tests for the componentwise simulation check."""

    def test_h_simulated_by_t(self):
        """T(2,5,3) simulates H(2,5)."""
        report = check_simulation(build_isomorphic(2, 5), build_compressed(2, 5, 3))
        assert report.holds
        assert report.witness is None
        assert report.relation_size > 0

    @pytest.mark.parametrize("m,k,c", [(2, 12, 5), (3, 9, 2), (3, 10, 4)])
    def test_holds_generally(self, m, k, c):
        """Simulation holds for other parameters."""
        assert check_simulation(build_isomorphic(m, k), build_compressed(m, k, c)).holds

    @pytest.mark.parametrize("m,k", window_grid(2))
    def test_grid(self, m, k):
        """T(m, k, c) simulates H(m, k) for every c in [1, k - m]."""
        h = build_isomorphic(m, k)
        for c in range(1, k - m + 1):
            assert check_simulation(h, build_compressed(m, k, c)).holds, f"c={c}"

    def test_identity_relation(self):
        """With c = 1 the relation is the diagonal."""
        h = build_isomorphic(2, 5)
        report = check_simulation(h, build_compressed(2, 5, 1))
        assert report.holds
        assert report.relation_size == h.num_states

    def test_minimal_acceptor_accepted(self):
        """Star labels are mapped to tuples."""
        assert check_simulation(build_minimal(2, 5), build_compressed(2, 5, 3)).holds

    def test_reverse_fails(self):
        """H(2,5) does not simulate T(2,5,3)."""
        report = check_simulation(build_compressed(2, 5, 3), build_isomorphic(2, 5))
        assert not report.holds
        assert report.witness is not None

    def test_parameter_mismatch(self):
        """Different (m, k) cannot be compared."""
        with pytest.raises(ParameterMismatch):
            check_simulation(build_isomorphic(2, 5), build_compressed(2, 6, 2))


class TestInclusion:
    """Tests for bounded language inclusion."""

    def test_minimal_in_compressed(self):
        """L(A(2,5)) is contained in L(T(2,5,3))."""
        assert check_inclusion_bounded(build_minimal(2, 5), build_compressed(2, 5, 3), 12)

    @pytest.mark.parametrize("m,k", window_grid(1))
    def test_grid_depth_14(self, m, k):
        """Every word of A(m, k) up to length 14 is accepted by every T(m, k, c)."""
        a = build_minimal(m, k)
        for c in range(1, k - m + 1):
            assert check_inclusion_bounded(a, build_compressed(m, k, c), 14), f"c={c}"

    def test_reflexive(self):
        """A language contains itself."""
        a = build_minimal(2, 5)
        assert check_inclusion_bounded(a, a, 12)

    def test_counterexample(self):
        """T(2,5,3) accepts a length-7 word A(2,5) rejects."""
        a, t = build_minimal(2, 5), build_compressed(2, 5, 3)
        word = find_inclusion_counterexample(t, a, 7)
        assert word is not None
        assert len(word) == 7
        assert t.accepts(word)
        assert not a.accepts(word)
        assert check_inclusion_bounded(t, a, 6)

    def test_known_extra_word(self):
        """0110100 separates the two languages."""
        word = Word.parse("0110100")
        assert build_compressed(2, 5, 3).accepts(word)
        assert not build_minimal(2, 5).accepts(word)

    def test_depth_limit(self):
        """Depth above the limit is refused."""
        a = build_minimal(2, 5)
        with pytest.raises(LimitExceeded):
            check_inclusion_bounded(a, a, 21)
