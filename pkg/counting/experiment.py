"""
Experiment module - Seeded random-ensemble counting runs

Generates graphs from an ensemble, builds the constraint BDD for each, counts
exactly, and records |ln Z - n ln r| against a reference growth rate r.
Every graph has its own seed derived from (master seed, size, sample index),
so a run is reproducible in full or one sample at a time, and the output does
not depend on how many workers were used.

Example usage:
    from counting.experiment import EnsembleConfig, run_ensemble
    from counting.ensemble_stats import summarize

    cfg = EnsembleConfig(sizes=[6, 8], samples_per_size=100, master_seed=42)
    records = run_ensemble(cfg)
    print(summarize(records, 8))
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from counting.constraints import ConstraintMode, build_bdd
from counting.ensemble_stats import (
    EmptySample,
    ExperimentError,
    InsufficientData,
    bethe_constants,
    summarize,
)
from counting.graph import RNG_ALGORITHM, EnsembleKind, GraphError, Strategy
from counting.reference_data import X_AVERAGE_DEGREE, Y_KERNEL

logger = logging.getLogger(__name__)

__all__ = [
    'ConfigError',
    'CountRecord',
    'EmptySample',
    'EnsembleConfig',
    'ExperimentError',
    'InsufficientData',
    'ReferenceRate',
    'SampleFailed',
    'derive_seed',
    'run_ensemble',
]


class ConfigError(ExperimentError):
    pass


class SampleFailed(ExperimentError):
    """A single (size, sample) task failed; the message carries both."""
    pass


# ============================================================================
# REFERENCE RATES
# ============================================================================

REFERENCE_SOURCES = ('bethe', 'kernel', 'average', 'calibrated')


class ReferenceRate:
    """
    Per-vertex growth rate r used for diffs |ln Z - n ln r|.

    Attributes:
        rate: r (> 1)
        source: 'bethe', 'kernel', 'average', 'calibrated' or 'custom'
    """

    def __init__(self, rate: float, source: str = 'custom'):
        if not rate > 1.0:
            raise ConfigError(f"Reference rate must exceed 1, got {rate}")
        self.rate = float(rate)
        self.source = source

    @property
    def ln_rate(self) -> float:
        return math.log(self.rate)

    @classmethod
    def bethe(cls) -> 'ReferenceRate':
        return cls(bethe_constants().w, 'bethe')

    @classmethod
    def kernel(cls) -> 'ReferenceRate':
        return cls(Y_KERNEL, 'kernel')

    @classmethod
    def average(cls) -> 'ReferenceRate':
        return cls(X_AVERAGE_DEGREE, 'average')

    @classmethod
    def calibrated(cls, records: Sequence['CountRecord']) -> 'ReferenceRate':
        """r = exp(ln(mean) / n) at the largest size present in records."""
        if not records:
            raise EmptySample("Cannot calibrate a reference rate without records")
        n = max(r.size for r in records)
        _, rate = summarize(records, n)
        return cls(rate, 'calibrated')

    @classmethod
    def resolve(cls, selector: Union[str, float],
                records: Optional[Sequence['CountRecord']] = None) -> 'ReferenceRate':
        """
        Turn a selector into a rate.

        Args:
            selector: One of REFERENCE_SOURCES, or a number / numeric string
            records: Needed only for 'calibrated'
        """
        if isinstance(selector, (int, float)):
            return cls(float(selector))
        key = str(selector).strip().lower()
        if key == 'bethe':
            return cls.bethe()
        if key == 'kernel':
            return cls.kernel()
        if key == 'average':
            return cls.average()
        if key == 'calibrated':
            return cls.calibrated(records or [])
        try:
            return cls(float(key))
        except ValueError:
            raise ConfigError(
                f"Unknown reference rate '{selector}' "
                f"(expected one of {', '.join(REFERENCE_SOURCES)} or a number)"
            ) from None

    def __repr__(self) -> str:
        return f"ReferenceRate({self.rate!r}, {self.source!r})"


def default_reference(mode: ConstraintMode, ensemble: EnsembleKind) -> str:
    """Reference selector matching a standard experiment, else 'calibrated'."""
    mode = ConstraintMode(mode)
    if ensemble.is_regular and ensemble.degree == 3:
        return 'bethe' if mode is ConstraintMode.INDEPENDENT_SET else 'kernel'
    if not ensemble.is_regular and ensemble.degree == 3 and mode is ConstraintMode.INDEPENDENT_SET:
        return 'average'
    return 'calibrated'


# ============================================================================
# RECORDS
# ============================================================================

@dataclass(frozen=True)
class CountRecord:
    """Exact count for one sampled graph."""
    size: int
    sample: int
    seed: int
    count: int
    ln_count: float
    diff: float = 0.0
    nodes: int = 0
    accesses: int = 0

    def with_reference(self, ln_rate: float) -> 'CountRecord':
        """Copy with diff = |ln Z - n ln r|."""
        return replace(self, diff=abs(self.ln_count - self.size * ln_rate))

    def to_dict(self) -> dict:
        return {
            'size': self.size,
            'sample': self.sample,
            'seed': self.seed,
            'count': self.count,
            'ln_count': self.ln_count,
            'diff': self.diff,
        }


def apply_reference(records: Sequence[CountRecord], reference: ReferenceRate) -> List[CountRecord]:
    """Recompute every diff against another reference rate."""
    ln_rate = reference.ln_rate
    return [r.with_reference(ln_rate) for r in records]


# ============================================================================
# CONFIGURATION
# ============================================================================

class EnsembleConfig:
    """
    Settings for one ensemble run.

    Attributes:
        sizes: Graph sizes n, in run order
        samples_per_size: Graphs per size (default 1000)
        mode: ConstraintMode counted
        ensemble: EnsembleKind sampled
        strategy: Generator strategy for regular ensembles
        master_seed: Seed all per-sample seeds derive from
        reference: Reference-rate selector (see ReferenceRate.resolve);
            None picks default_reference(mode, ensemble)
    """

    def __init__(
        self,
        sizes: Sequence[int],
        samples_per_size: int = 1000,
        mode: ConstraintMode = ConstraintMode.INDEPENDENT_SET,
        ensemble: Optional[EnsembleKind] = None,
        strategy: Strategy = Strategy.GREEDY,
        master_seed: int = 0,
        reference: Optional[Union[str, float]] = None
    ):
        self.sizes = [int(n) for n in sizes]
        self.samples_per_size = int(samples_per_size)
        self.mode = ConstraintMode(mode)
        self.ensemble = ensemble if ensemble is not None else EnsembleKind.regular(3)
        self.strategy = Strategy(strategy)
        self.master_seed = int(master_seed)
        self.reference = reference if reference is not None else default_reference(
            self.mode, self.ensemble
        )

    def validate(self) -> None:
        """
        Check the configuration before any work starts.

        Raises:
            ConfigError: On empty sizes, samples < 1, negative seed, sizes
                incompatible with the ensemble, or an unknown reference
        """
        if not self.sizes:
            raise ConfigError("At least one size is required")
        if self.samples_per_size < 1:
            raise ConfigError(f"samples_per_size must be at least 1, got {self.samples_per_size}")
        if self.master_seed < 0:
            raise ConfigError(f"Master seed must be nonnegative, got {self.master_seed}")
        if len(set(self.sizes)) != len(self.sizes):
            raise ConfigError(f"Sizes must be distinct, got {self.sizes}")
        for n in self.sizes:
            try:
                self.ensemble.check_size(n)
            except GraphError as e:
                raise ConfigError(f"Size {n} is incompatible with {self.ensemble.label()}: {e}") from e
        if isinstance(self.reference, str) and self.reference.lower() == 'calibrated':
            return
        ReferenceRate.resolve(self.reference)

    def to_dict(self) -> Dict:
        return {
            'sizes': list(self.sizes),
            'samples_per_size': self.samples_per_size,
            'mode': self.mode.value,
            'ensemble': self.ensemble.label(),
            'strategy': self.strategy.value,
            'master_seed': self.master_seed,
            'reference': self.reference,
            'rng': RNG_ALGORITHM,
        }

    @classmethod
    def from_preset(cls, preset, **overrides) -> 'EnsembleConfig':
        """Build a config from an ExperimentPreset, overriding selected fields."""
        fields = {
            'sizes': preset.sizes,
            'samples_per_size': preset.samples,
            'mode': preset.mode,
            'ensemble': preset.ensemble,
            'strategy': preset.strategy,
            'reference': preset.reference,
        }
        fields.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**fields)

    def __repr__(self) -> str:
        return f"EnsembleConfig({self.to_dict()!r})"


def derive_seed(master_seed: int, n: int, sample: int) -> int:
    """Stable 32-bit seed for one (size, sample) task."""
    sequence = np.random.SeedSequence(master_seed, spawn_key=(n, sample))
    return int(sequence.generate_state(1)[0])


# ============================================================================
# RUNNING
# ============================================================================

Task = Tuple[int, int, int, str, str, float, str]


def _count_sample(task: Task) -> CountRecord:
    n, sample, seed, mode, variant, degree, strategy = task
    ensemble = EnsembleKind(variant, degree)
    graph = ensemble.sample(n, seed, strategy=Strategy(strategy))
    f = build_bdd(graph, ConstraintMode(mode))
    z = f.count()
    ln_z = math.log(z) if z > 0 else float('-inf')
    return CountRecord(
        size=n,
        sample=sample,
        seed=seed,
        count=z,
        ln_count=ln_z,
        nodes=f.node_count(),
        accesses=f.manager.accesses,
    )


def _tasks(cfg: EnsembleConfig) -> List[Task]:
    return [
        (n, i, derive_seed(cfg.master_seed, n, i), cfg.mode.value,
         cfg.ensemble.variant, cfg.ensemble.degree, cfg.strategy.value)
        for n in cfg.sizes
        for i in range(cfg.samples_per_size)
    ]


def _run_serial(tasks: List[Task]) -> List[CountRecord]:
    records = []
    current = None
    for task in tasks:
        if task[0] != current:
            current = task[0]
            logger.info("Counting size %d", current)
        try:
            records.append(_count_sample(task))
        except Exception as e:
            raise SampleFailed(f"Sample {task[1]} of size {task[0]} failed: {e}") from e
    return records


def _run_pool(tasks: List[Task], jobs: int) -> List[CountRecord]:
    records = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [(task, pool.submit(_count_sample, task)) for task in tasks]
        for task, future in futures:
            try:
                records.append(future.result())
            except Exception as e:
                raise SampleFailed(f"Sample {task[1]} of size {task[0]} failed: {e}") from e
    return records


def run_ensemble(cfg: EnsembleConfig, jobs: int = 1) -> List[CountRecord]:
    """
    Count every sampled graph of the configured ensemble.

    Records are sorted by (size, sample) and carry diffs against the
    configured reference rate. Graphs with zero solutions cannot enter the
    logarithmic statistics; they are dropped with a warning.

    Args:
        cfg: Run settings (validated here)
        jobs: Worker processes; 1 runs in-process

    Raises:
        ConfigError: If cfg is invalid
        SampleFailed: If generating or counting one sample fails
    """
    cfg.validate()
    tasks = _tasks(cfg)
    logger.info("Running %d samples over sizes %s (%s, %s)",
                len(tasks), cfg.sizes, cfg.mode.value, cfg.ensemble.label())

    records = _run_serial(tasks) if jobs <= 1 else _run_pool(tasks, jobs)

    kept = []
    for r in records:
        if r.count == 0:
            logger.warning("Excluding sample %d of size %d: zero solutions (seed %d)",
                           r.sample, r.size, r.seed)
            continue
        kept.append(r)
    kept.sort(key=lambda r: (r.size, r.sample))

    reference = ReferenceRate.resolve(cfg.reference, kept)
    return apply_reference(kept, reference)
