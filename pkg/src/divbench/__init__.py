"""Diversity mechanisms for (mu + lambda) evolutionary algorithms on binary
static and dynamic landscapes."""

from .genome import (
    Individual,
    Population,
    as_genome,
    hamming_distance,
    make_rng,
    pairwise_distances,
    random_genome,
    to_bitstring,
)
from .harness import (
    AggregateResult,
    ConfigError,
    ExperimentConfig,
    config_from_mapping,
    run_replicated,
    run_single,
    write_generation_csv,
    write_summary,
)
from .landscapes import (
    PRESET_NAMES,
    ChangeEvent,
    Landscape,
    Peak,
    apply_change,
    evaluate,
    make_preset,
    move_peak,
)
from .mechanisms import ALGORITHMS, MechanismConfig
from .variation import VariationConfig

__version__ = "0.1.0"
