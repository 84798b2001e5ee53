from fractions import Fraction

import numpy as np
import pytest

from elimgame import (
    BudgetExceeded,
    CultureSpec,
    RatioMode,
    RngStream,
    ZeroWelfare,
    enumerate_profiles,
    ratio_ab,
    ratio_cb,
    run_exhaustive,
    run_montecarlo,
    sample_profile,
)
from elimgame.sweep import (
    _Summary,
    exhaustive_witness,
    histogram_edges,
    montecarlo_witness,
)
from helpers import seq


def naive_exhaustive(s, n, m, mode, fix_first=True):
    fn = ratio_ab if mode is RatioMode.AB else ratio_cb
    vals = [fn(p, s) for p in enumerate_profiles(n, m, fix_first=fix_first)]
    mean = sum(vals, Fraction(0)) / len(vals)
    return {
        "count": len(vals),
        "mean": mean,
        "variance": sum((v - mean) ** 2 for v in vals) / len(vals),
        "max_ratio": max(vals),
        "max_index": vals.index(max(vals)),
        "min_ratio": min(vals),
        "min_index": vals.index(min(vals)),
        "spike_count": sum(1 for v in vals if v == 1),
    }


def assert_matches(res, want):
    for key, value in want.items():
        assert getattr(res, key) == value, key


class TestExhaustiveExactness:
    def test_two_voter_frozen_values(self):
        res = run_exhaustive(seq(1, 2, 1, 2), 2, 5, RatioMode.AB)
        assert_matches(
            res,
            {
                "count": 120,
                "mean": Fraction(2441, 2400),
                "variance": Fraction(2111, 640000),
                "max_ratio": Fraction(5, 4),
                "max_index": 94,
                "min_ratio": Fraction(1),
                "min_index": 0,
                "spike_count": 110,
            },
        )
        res = run_exhaustive(seq(1, 2, 1, 2), 2, 5, RatioMode.CB)
        assert_matches(
            res,
            {
                "count": 120,
                "mean": Fraction(25229, 25200),
                "variance": Fraction(1481519, 635040000),
                "max_ratio": Fraction(6, 5),
                "max_index": 62,
                "min_ratio": Fraction(5, 6),
                "min_index": 84,
                "spike_count": 110,
            },
        )

    def test_three_voter_frozen_values(self):
        res = run_exhaustive(seq(1, 2, 3), 3, 4, RatioMode.CB)
        assert_matches(
            res,
            {
                "count": 576,
                "mean": Fraction(81457, 80640),
                "variance": Fraction(140725759, 6502809600),
                "max_ratio": Fraction(7, 4),
                "max_index": 305,
                "min_ratio": Fraction(4, 7),
                "min_index": 128,
                "spike_count": 428,
            },
        )

    @pytest.mark.parametrize(
        "s,n,m",
        [
            (seq(1, 2, 2, 2), 2, 5),
            (seq(3, 1, 2), 3, 4),
            (seq(1, 2, 3), 3, 4),
        ],
    )
    @pytest.mark.parametrize("mode", [RatioMode.AB, RatioMode.CB])
    def test_agrees_with_naive_enumeration(self, s, n, m, mode):
        assert_matches(run_exhaustive(s, n, m, mode), naive_exhaustive(s, n, m, mode))

    def test_full_space_agrees_with_naive(self):
        s = seq(2, 1, 2)
        want = naive_exhaustive(s, 2, 4, RatioMode.CB, fix_first=False)
        assert_matches(run_exhaustive(s, 2, 4, RatioMode.CB, fix_first=False), want)
        assert want["count"] == 576

    def test_single_profile_space(self):
        # one voter pinned to the identity: the population is a single profile
        res = run_exhaustive(seq(1, 1), 1, 3, RatioMode.AB, fix_first=True)
        assert res.count == 1
        assert res.mean == 1 and res.variance == 0
        assert res.spike_count == 1

    def test_witness_lookup(self):
        s = seq(1, 2, 1, 2)
        res = run_exhaustive(s, 2, 5, RatioMode.CB)
        w = exhaustive_witness(2, 5, res.max_index)
        assert ratio_cb(w, s) == res.max_ratio


class TestDeterminism:
    def test_worker_count_is_invisible_exhaustive(self):
        s = seq(1, 2, 3)
        edges = histogram_edges(Fraction(1, 2), Fraction(2), 8)
        a = run_exhaustive(s, 3, 4, RatioMode.CB, workers=1, bins=8, edges=edges)
        b = run_exhaustive(s, 3, 4, RatioMode.CB, workers=4, bins=8, edges=edges)
        assert a.mean == b.mean and a.variance == b.variance
        assert (a.max_ratio, a.max_index) == (b.max_ratio, b.max_index)
        assert (a.min_ratio, a.min_index) == (b.min_ratio, b.min_index)
        assert a.spike_count == b.spike_count
        assert np.array_equal(a.hist_counts, b.hist_counts)

    def test_worker_count_is_invisible_montecarlo(self):
        s = seq(1, 2, 2, 1, 3)
        kw = dict(culture=CultureSpec.mallows(0.7), samples=3000, seed=11)
        a = run_montecarlo(s, 3, 6, RatioMode.AB, workers=1, **kw)
        b = run_montecarlo(s, 3, 6, RatioMode.AB, workers=3, **kw)
        assert a == b

    def test_chunk_size_is_invisible_montecarlo(self, monkeypatch):
        s = seq(1, 2, 1)
        kw = dict(culture=CultureSpec.impartial(), samples=1000, seed=5)
        whole = run_montecarlo(s, 2, 4, RatioMode.CB, **kw)
        monkeypatch.setattr("elimgame.sweep.MC_CHUNK", 64)
        chunked = run_montecarlo(s, 2, 4, RatioMode.CB, **kw)
        assert whole == chunked

    def test_exhaustive_chunk_size_is_invisible(self, monkeypatch):
        s = seq(1, 2, 3)
        whole = run_exhaustive(s, 3, 4, RatioMode.AB)
        monkeypatch.setattr("elimgame.sweep.EXHAUSTIVE_OUTER_CHUNK", 7)
        chunked = run_exhaustive(s, 3, 4, RatioMode.AB)
        assert whole == chunked


class TestMonteCarlo:
    @pytest.mark.parametrize(
        "culture", [CultureSpec.impartial(), CultureSpec.mallows(0.6)]
    )
    @pytest.mark.parametrize("mode", [RatioMode.AB, RatioMode.CB])
    def test_agrees_with_scalar_resampling(self, culture, mode):
        s = seq(1, 2, 3, 1)
        n, m, N, seed = 3, 5, 500, 77
        fn = ratio_ab if mode is RatioMode.AB else ratio_cb
        vals = [
            fn(sample_profile(n, m, culture, RngStream(seed, i)), s) for i in range(N)
        ]
        mean = sum(vals, Fraction(0)) / N
        res = run_montecarlo(s, n, m, mode, culture, N, seed)
        assert res.count == N
        assert res.mean == mean
        assert res.max_ratio == max(vals) and res.max_index == vals.index(max(vals))
        assert res.min_ratio == min(vals) and res.min_index == vals.index(min(vals))
        assert res.spike_count == sum(1 for v in vals if v == 1)

    def test_witness_lookup(self):
        s = seq(2, 1, 2, 1)
        culture = CultureSpec.mallows(0.8)
        res = run_montecarlo(s, 2, 5, RatioMode.CB, culture, 2000, seed=3)
        w = montecarlo_witness(2, 5, culture, 3, res.max_index)
        assert ratio_cb(w, s) == res.max_ratio

    def test_rejects_empty_run(self):
        with pytest.raises(ValueError):
            run_montecarlo(
                seq(1, 1), 1, 3, RatioMode.AB, CultureSpec.impartial(), 0, seed=1
            )


class TestHistogram:
    def test_counts_cover_offspike_mass(self):
        s = seq(1, 2, 3)
        edges = histogram_edges(Fraction(1, 2), Fraction(2), 10)
        res = run_exhaustive(s, 3, 4, RatioMode.CB, bins=10, edges=edges)
        assert res.hist_counts.sum() == res.count - res.spike_count
        assert len(res.hist_edges) == 11
        # rebuild the histogram from the naive value list
        fn = ratio_cb
        vals = [fn(p, s) for p in enumerate_profiles(3, 4)]
        expect = np.zeros(10, dtype=np.int64)
        for v in vals:
            if v == 1:
                continue
            idx = int(np.searchsorted(edges, float(v), side="right")) - 1
            expect[min(max(idx, 0), 9)] += 1
        assert np.array_equal(res.hist_counts, expect)

    def test_edges_validation(self):
        with pytest.raises(ValueError):
            histogram_edges(Fraction(1), Fraction(2), 0)
        with pytest.raises(ValueError):
            run_exhaustive(seq(1, 2, 1), 2, 4, RatioMode.AB, bins=5)

    def test_no_histogram_by_default(self):
        res = run_exhaustive(seq(1, 2, 1), 2, 4, RatioMode.AB)
        assert res.hist_counts is None and res.hist_edges is None


class TestGuards:
    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            run_exhaustive(seq(1, 2, 1, 2), 2, 5, RatioMode.AB,
                           fix_first=False, budget=1000)
        run_exhaustive(seq(1, 2, 1, 2), 2, 5, RatioMode.AB, budget=1000)

    def test_zero_denominator_guard(self):
        s = _Summary(den_limit=4, bins=None)
        with pytest.raises(ZeroWelfare):
            s.absorb_batch(
                np.array([1, 2], dtype=np.int64),
                np.array([2, 0], dtype=np.int64),
                0,
                None,
            )

    def test_mode_parse(self):
        assert RatioMode.parse("ab") is RatioMode.AB
        assert RatioMode.parse("CB") is RatioMode.CB
        with pytest.raises(ValueError):
            RatioMode.parse("xy")
