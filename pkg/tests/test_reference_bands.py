"""Reference result bands outside the acceptance criteria, checked at full size."""

import pytest

from divbench import ExperimentConfig, run_replicated

pytestmark = pytest.mark.slow


def test_basic_onemax_offline_band():
    offline = run_replicated(ExperimentConfig()).offline_performance
    assert 88 <= offline <= 96, offline


def test_hybrid_keeps_both_height_changing_peaks():
    result = run_replicated(ExperimentConfig(algorithm="hybrid", problem="height-changing-peaks"))
    assert result.finds_both_peaks > 0.5, result.finds_both_peaks
