"""Streaming draws and Monte Carlo moment estimates."""
from fractions import Fraction

import pytest

from kwise.constructions import partition_space, xor_space
from kwise.moments import Weights, pth_moment
from kwise.sampler import (
    McEstimate,
    SplitMix64,
    Stream,
    StreamSpec,
    estimate_moment,
    sample,
)


class TestSplitMix64:
    def test_published_reference_sequence(self):
        # first outputs for seed 0 of the Steele-Lea-Flood generator, as
        # listed with the xoshiro reference implementations
        g = SplitMix64(0)
        assert [g.next_u64() for _ in range(4)] == [
            0xE220A8397B1DCDAF,
            0x6E789E6AA1B965F4,
            0x06C45D188009454F,
            0xF88BB8A8724C81EC,
        ]

    def test_seed_masked_to_64_bits(self):
        assert SplitMix64(1 << 64).next_u64() == SplitMix64(0).next_u64()

    def test_below_stays_in_range_and_hits_everything(self):
        g = SplitMix64(42)
        counts = [0] * 6
        for _ in range(60_000):
            v = g.below(6)
            counts[v] += 1
        assert min(counts) > 0.9 * 10_000
        assert max(counts) < 1.1 * 10_000

    def test_below_validates(self):
        with pytest.raises(ValueError, match="positive"):
            SplitMix64(0).below(0)


class TestStreamSpec:
    def test_dimension(self):
        assert StreamSpec("partition", 8).dimension == 8
        assert StreamSpec("independent", 5).dimension == 5
        assert StreamSpec("xor", 4).dimension == 16

    def test_validation(self):
        with pytest.raises(ValueError, match="kind"):
            StreamSpec("uniform", 4)
        with pytest.raises(ValueError, match="even"):
            StreamSpec("partition", 5)
        with pytest.raises(ValueError, match="exponent"):
            StreamSpec("xor", 31)
        with pytest.raises(ValueError):
            StreamSpec("independent", 0)

    def test_json(self):
        assert StreamSpec("xor", 3, seed=9).to_json() == {
            "kind": "xor",
            "n": 3,
            "seed": 9,
        }


class TestStreamDeterminism:
    @pytest.mark.parametrize("kind,n", [("partition", 6), ("independent", 7), ("xor", 3)])
    def test_same_spec_same_draws(self, kind, n):
        spec = StreamSpec(kind, n, seed=2024)
        first = [Stream(spec).draw_bits() for _ in range(1)]
        a = Stream(spec)
        b = Stream(spec)
        seq_a = [a.draw_bits() for _ in range(50)]
        seq_b = [b.draw_bits() for _ in range(50)]
        assert seq_a == seq_b
        assert seq_a[0] == first[0]

    def test_different_seed_different_sequence(self):
        x = [Stream(StreamSpec("independent", 8, seed=1)).draw_bits() for _ in range(20)]
        y = [Stream(StreamSpec("independent", 8, seed=2)).draw_bits() for _ in range(20)]
        assert x != y

    def test_sample_is_first_draw(self):
        spec = StreamSpec("partition", 4, seed=77)
        assert sample(spec).bits == Stream(spec).draw_bits()


class TestPartitionStream:
    def test_draws_live_on_the_partition_support(self):
        n = 6
        s = Stream(StreamSpec("partition", n, seed=5))
        for _ in range(2_000):
            w = s.draw_bits().bit_count()
            assert w in (0, n // 2, n)

    def test_class_frequencies(self):
        # unanimous mass is 1/n split over the two unanimous vectors; the
        # seed is fixed, so the draw counts are reproducible, not flaky
        n = 6
        s = Stream(StreamSpec("partition", n, seed=5))
        draws = 30_000
        unanimous = 0
        balanced_patterns = set()
        for _ in range(draws):
            bits = s.draw_bits()
            w = bits.bit_count()
            if w in (0, n):
                unanimous += 1
            else:
                balanced_patterns.add(bits)
        assert abs(unanimous / draws - 1 / n) < 0.01
        assert len(balanced_patterns) == 20  # every C(6,3) pattern occurs

    def test_pairwise_empirical_means_vanish(self):
        n = 8
        s = Stream(StreamSpec("partition", n, seed=11))
        draws = 20_000
        sums = [0] * n
        pair = 0
        for _ in range(draws):
            bits = s.draw_bits()
            for i in range(n):
                sums[i] += 1 if (bits >> i) & 1 else -1
            pair += (1 if bits & 1 else -1) * (1 if (bits >> 1) & 1 else -1)
        # 4 sigma with sigma = sqrt(draws)
        bound = 4 * draws**0.5
        assert all(abs(v) < bound for v in sums)
        assert abs(pair) < bound


class TestXorStream:
    def test_lazy_matches_eager(self):
        spec = StreamSpec("xor", 3, seed=13)
        eager = Stream(spec)
        lazy = Stream(spec)
        for _ in range(10):
            bits = eager.draw_bits()
            draw = lazy.draw_lazy()
            for j in range(8):
                assert draw.sign(j) == (1 if (bits >> j) & 1 else -1)

    def test_lazy_only_for_xor(self):
        with pytest.raises(ValueError, match="xor"):
            Stream(StreamSpec("partition", 4)).draw_lazy()

    def test_wide_xor_needs_lazy_access(self):
        s = Stream(StreamSpec("xor", 7, seed=1))  # dimension 128
        with pytest.raises(ValueError, match="draw_lazy"):
            s.draw_bits()
        draw = s.draw_lazy()
        assert draw.sign(127) in (-1, 1)
        with pytest.raises(ValueError, match="out of range"):
            draw.sign(128)

    def test_draws_are_xor_atoms(self):
        space = xor_space(3)
        s = Stream(StreamSpec("xor", 3, seed=3))
        support = set(space.masses)
        for _ in range(200):
            assert s.draw_bits() in support


class TestEstimateMoment:
    def test_deterministic(self):
        spec = StreamSpec("partition", 8, seed=99)
        e1 = estimate_moment(spec, None, 4, 5_000)
        e2 = estimate_moment(spec, None, 4, 5_000)
        assert e1 == e2

    def test_partition_fourth_moment(self):
        n = 6
        est = estimate_moment(StreamSpec("partition", n, seed=1), None, 4, 50_000)
        exact = n ** 3
        assert est.std_error > 0
        assert abs(est.mean - exact) < 4 * est.std_error

    def test_independent_second_moment(self):
        est = estimate_moment(StreamSpec("independent", 5, seed=2), None, 2, 30_000)
        assert abs(est.mean - 5) < 4 * est.std_error

    def test_xor_weighted_against_enumeration(self):
        a = Weights((1, 2, 1, 1, 2, 1, 1, 1))
        exact = pth_moment(xor_space(3), a, 4).value
        est = estimate_moment(StreamSpec("xor", 3, seed=7), a, 4, 40_000)
        assert abs(est.mean - float(exact)) < 4 * est.std_error

    def test_constant_summand_has_zero_error(self):
        est = estimate_moment(StreamSpec("independent", 1, seed=4), None, 3, 1_000)
        assert est.mean == 1.0
        assert est.std_error == 0.0

    def test_fractional_exponent(self):
        spec = StreamSpec("partition", 4, seed=6)
        exact = pth_moment(partition_space(4), Weights.all_ones(4), Fraction(5, 2)).value
        mid = float(exact.lo + exact.hi) / 2
        est = estimate_moment(spec, None, Fraction(5, 2), 30_000)
        assert abs(est.mean - mid) < 4 * est.std_error

    def test_validation(self):
        spec = StreamSpec("independent", 4)
        with pytest.raises(ValueError, match="100"):
            estimate_moment(spec, None, 4, 99)
        with pytest.raises(ValueError, match="at least 1"):
            estimate_moment(spec, None, Fraction(1, 2), 1_000)
        with pytest.raises(ValueError, match="dimension"):
            estimate_moment(spec, Weights((1, 1)), 4, 1_000)
        with pytest.raises(ValueError, match="exceeds"):
            estimate_moment(StreamSpec("xor", 8), None, 4, 1_000)

    def test_json_roundtrip_precision(self):
        est = McEstimate(216.03125, 1.25, 1_000)
        data = est.to_json()
        assert float(data["mean"]) == est.mean
        assert float(data["std_error"]) == est.std_error
        assert data["samples"] == 1_000
