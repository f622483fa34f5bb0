"""Eigenphase extraction from the final statevector, plus error metrics."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .circuit import PowerMode, QpeConfig, run_qpe
from .core import StateVector, bit_reversal_permutation


class ExtractionMethod(Enum):
    MAX_NORM = "max"
    WEIGHTED_AVERAGE = "weighted"
    WEIGHTED_CIRCULAR = "circular"


@dataclass
class MeasurementDistribution:
    """p(m) over the 2^n_meas measurement outcomes."""

    n_meas: int
    probs: np.ndarray

    def __post_init__(self):
        self.probs = np.asarray(self.probs, dtype=np.float64)
        if self.probs.shape != (1 << self.n_meas,):
            raise ValueError(
                f"probability array shape {self.probs.shape} does not match "
                f"2^{self.n_meas}"
            )


@dataclass
class PhaseEstimate:
    method: ExtractionMethod
    value: float
    peak_index: int | None = None


def marginal_distribution(state: StateVector) -> MeasurementDistribution:
    """Sum |amplitude|^2 over the target register for each outcome m."""
    layout = state.layout
    weights = np.abs(state.amplitudes) ** 2
    p_raw = weights.reshape(layout.dim_mat, layout.dim_meas).sum(axis=0)
    # Raw low-bit index k decodes to m with wire 0 as the MSB.
    probs = np.empty_like(p_raw)
    probs[bit_reversal_permutation(layout.n_meas)] = p_raw
    return MeasurementDistribution(layout.n_meas, probs)


def extract_max_norm(dist: MeasurementDistribution) -> PhaseEstimate:
    """Most probable outcome; ties broken by the smallest m."""
    if dist.probs.sum() <= 0.0:
        raise ValueError("distribution has zero total probability")
    m = int(np.argmax(dist.probs))
    return PhaseEstimate(ExtractionMethod.MAX_NORM, m / (1 << dist.n_meas), m)


def extract_weighted(dist: MeasurementDistribution, circular: bool = False) -> PhaseEstimate:
    """Probability-weighted mean of the outcome phases.

    The plain average is biased for phases near the wrap point; the circular
    variant averages unit phasors instead and is wrap-safe.
    """
    total = dist.probs.sum()
    if total <= 0.0:
        raise ValueError("distribution has zero total probability")
    grid = np.arange(1 << dist.n_meas) / (1 << dist.n_meas)
    if not circular:
        value = float(np.dot(grid, dist.probs) / total)
        return PhaseEstimate(ExtractionMethod.WEIGHTED_AVERAGE, value)
    resultant = np.dot(dist.probs, np.exp(2j * np.pi * grid))
    if abs(resultant) < 1e-12:
        raise ValueError("degenerate distribution: circular resultant vanishes")
    value = float(np.mod(np.angle(resultant) / (2.0 * np.pi), 1.0))
    if value >= 1.0:
        value = 0.0
    return PhaseEstimate(ExtractionMethod.WEIGHTED_CIRCULAR, value)


def extract(dist: MeasurementDistribution, method: ExtractionMethod) -> PhaseEstimate:
    if method is ExtractionMethod.MAX_NORM:
        return extract_max_norm(dist)
    return extract_weighted(dist, circular=method is ExtractionMethod.WEIGHTED_CIRCULAR)


def phase_error(estimate: float, reference: float) -> float:
    """Circular distance on the unit phase circle."""
    delta = abs(estimate - reference)
    return min(delta, 1.0 - delta)


def absolute_phase_error(estimate: float, reference: float) -> float:
    """Plain absolute difference, ignoring wrap-around."""
    return abs(estimate - reference)


def mean_spectrum_error(
    problem,
    n_meas: int,
    method: ExtractionMethod,
    power_mode: PowerMode = PowerMode.REPEATED_SQUARING,
) -> float:
    """Mean circular phase error over all stored eigenpairs.

    Runs one phase estimation per eigenvector; pairing with the reference
    phase is by construction (the run is seeded with that eigenvector).
    Defaults to the squaring mode, which is the fast path for accuracy
    sweeps at large measurement-register sizes.
    """
    if problem.reference_phases is None:
        raise ValueError("problem carries no reference phases")
    config = QpeConfig(n_meas=n_meas, power_mode=power_mode)
    errors = []
    for j in range(problem.n_eigenvectors):
        state, _ = run_qpe(problem, j, config)
        estimate = extract(marginal_distribution(state), method)
        errors.append(phase_error(estimate.value, float(problem.reference_phases[j])))
    return float(np.mean(errors))
