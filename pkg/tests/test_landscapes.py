import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from divbench.genome import as_genome, hamming_distance, make_rng, random_genomes
from divbench.landscapes import (
    ChangeEvent,
    Landscape,
    Peak,
    apply_change,
    evaluate,
    fitness_bounds,
    make_preset,
    move_peak,
    onemax,
    peaks,
    twomax,
)

ZEROS4, ONES4 = as_genome("0000"), as_genome("1111")


def brute_bounds(land):
    n = land.length
    grid = ((np.arange(2 ** n)[:, None] >> np.arange(n)) & 1).astype(np.uint8)
    f = evaluate(land, grid)
    return f.min(), f.max()


class TestEvaluate:
    def test_onemax_all_ones(self):
        assert evaluate(onemax(100), np.ones(100, dtype=np.uint8)) == 100

    def test_twomax_zeros(self):
        assert evaluate(twomax(4), ZEROS4) == 4

    def test_two_peaks(self):
        n = 100
        land = peaks([(np.zeros(n), 100), (np.ones(n), 90)])
        assert evaluate(land, np.ones(n, dtype=np.uint8)) == 90

    def test_unclamped(self):
        land = peaks([(ZEROS4, 1)])
        assert evaluate(land, ONES4) == -3

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            evaluate(onemax(5), ZEROS4)

    def test_matrix_input(self):
        g = random_genomes(7, 4, make_rng(0))
        assert evaluate(onemax(4), g).tolist() == g.sum(axis=1).tolist()

    @given(st.lists(st.integers(0, 1), min_size=1, max_size=40))
    def test_twomax_symmetric(self, bits):
        x = as_genome(bits)
        assert evaluate(twomax(len(x)), x) == evaluate(twomax(len(x)), 1 - x)

    @given(st.integers(0, 2**32 - 1))
    def test_max_bounds_each_peak(self, seed):
        rng = make_rng(seed)
        pos = random_genomes(4, 12, rng)
        hs = rng.integers(0, 30, size=4)
        land = peaks(zip(pos, hs))
        x = random_genomes(1, 12, rng)[0]
        f = evaluate(land, x)
        for p, h in zip(pos, hs):
            assert f >= h - hamming_distance(x, p)
        assert f in {h - hamming_distance(x, p) for p, h in zip(pos, hs)}


class TestMovePeak:
    def test_zero_prob(self):
        p = Peak(as_genome("0110"), 5)
        q = move_peak(p, 0.0, make_rng(0))
        assert q.position.tolist() == p.position.tolist() and q.height == 5

    def test_full_prob(self):
        q = move_peak(Peak(as_genome("0110"), 5), 1.0, make_rng(0))
        assert q.position.tolist() == [1, 0, 0, 1] and q.height == 5

    def test_mean_displacement(self):
        rng = make_rng(2)
        p = Peak(np.zeros(100), 100)
        d = [move_peak(p, 0.1, rng).position.sum() for _ in range(10_000)]
        assert abs(np.mean(d) - 10) <= 0.3


class TestApplyChange:
    def base(self):
        return peaks([(ZEROS4, 100), (ONES4, 100)])

    def test_empty_event(self):
        land = self.base()
        new = apply_change(land, ChangeEvent(5), make_rng(0))
        assert new.epoch == land.epoch + 1
        assert new.heights.tolist() == land.heights.tolist()
        assert np.array_equal(new.positions, land.positions)

    def test_height_update(self):
        new = apply_change(self.base(), ChangeEvent(150, height_updates={0: 80}), make_rng(0))
        assert new.heights.tolist() == [80, 100]

    def test_bad_index(self):
        with pytest.raises(ValueError):
            apply_change(self.base(), ChangeEvent(1, height_updates={2: 1}), make_rng(0))

    def test_needs_peaks(self):
        with pytest.raises(ValueError):
            apply_change(onemax(4), ChangeEvent(1), make_rng(0))

    def test_moves_reproducible(self):
        land = peaks([(np.zeros(50), 100), (np.ones(50), 90)])
        ev = ChangeEvent(150, moves=0.1)
        a = apply_change(land, ev, make_rng(3, 1))
        b = apply_change(land, ev, make_rng(3, 1))
        assert np.array_equal(a.positions, b.positions)
        assert not np.array_equal(a.positions, land.positions)

    def test_schedule_replay(self):
        preset = make_preset("moving-height-changing-peaks", 30)
        runs = []
        for _ in range(2):
            rng, land = make_rng(9), preset.landscape
            for ev in preset.schedule:
                land = apply_change(land, ev, rng)
            runs.append(land)
        assert np.array_equal(runs[0].positions, runs[1].positions)
        assert runs[0].heights.tolist() == runs[1].heights.tolist() == [100, 80]


class TestPresets:
    def test_one_moving_peak(self):
        p = make_preset("one-moving-peak")
        assert len(p.landscape.peaks) == 1 and p.landscape.heights.tolist() == [100]
        assert [e.at_generation for e in p.schedule] == [150, 300]
        assert all(e.moves == 0.1 for e in p.schedule)
        assert p.total_generations == 450 and p.landscape.length == 100

    def test_two_moving_peaks(self):
        p = make_preset("two-moving-peaks")
        assert p.landscape.heights.tolist() == [100, 90]
        assert p.landscape.positions[0].sum() == 0 and p.landscape.positions[1].sum() == 100

    def test_height_changing_never_moves(self):
        p = make_preset("height-changing-peaks")
        assert all(e.moves is None for e in p.schedule)
        rng, land = make_rng(0), p.landscape
        heights = [land.heights.tolist()]
        for ev in p.schedule:
            land = apply_change(land, ev, rng)
            heights.append(land.heights.tolist())
            assert np.array_equal(land.positions, p.landscape.positions)
        assert heights == [[100, 100], [80, 100], [100, 80]]

    def test_moving_height_changing(self):
        p = make_preset("moving-height-changing-peaks")
        assert all(e.moves == 0.1 for e in p.schedule)

    @pytest.mark.parametrize("name", ["onemax", "twomax"])
    def test_static(self, name):
        assert make_preset(name).schedule == ()

    def test_unknown(self):
        with pytest.raises(KeyError):
            make_preset("three-peaks")

    def test_short_horizon_drops_events(self):
        assert [e.at_generation for e in make_preset("one-moving-peak", generations=200).schedule] == [150]


class TestBounds:
    @pytest.mark.parametrize("land", [
        onemax(6), twomax(5), twomax(6),
        peaks([(as_genome("000000"), 10)]),
        peaks([(as_genome("000000"), 10), (as_genome("111111"), 8)]),
        peaks([(as_genome("001100"), 10), (as_genome("011110"), 9)]),
        peaks([(as_genome("0011000"), 3), (as_genome("0111101"), 9), (as_genome("1000001"), 6)]),
    ])
    def test_against_enumeration(self, land):
        assert fitness_bounds(land) == brute_bounds(land)
