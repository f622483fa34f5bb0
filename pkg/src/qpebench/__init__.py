"""Full-statevector quantum phase estimation emulator and benchmark harness."""

from .core import (
    DenseOperator,
    RegisterLayout,
    StateVector,
    apply_controlled_dense,
    apply_controlled_phase,
    apply_hadamard,
    apply_swap,
    bit_reversal_permutation,
    check_unitary,
    matrix_multiply,
    new_basis_state,
    state_norm,
)
from .circuit import (
    PhaseTimers,
    PowerMode,
    QpeConfig,
    inverse_qft,
    prepare_input,
    run_qpe,
)
from .problems import (
    EigensolverError,
    Provenance,
    ReferenceSpectrum,
    SpectralProblem,
    eigen_residual,
    gen_analytic,
    gen_random_unitary,
    haar_random_unitary,
    reference_spectrum,
)
from .extraction import (
    ExtractionMethod,
    MeasurementDistribution,
    PhaseEstimate,
    absolute_phase_error,
    extract,
    extract_max_norm,
    extract_weighted,
    marginal_distribution,
    mean_spectrum_error,
    phase_error,
)
from .bench import (
    AccuracyRecord,
    BenchmarkRecord,
    MemoryCapError,
    accuracy_sweep,
    bench_sweep,
    log2_error_slope,
    memory_model,
    modeled_peak_bytes,
    run_benchmark,
)
from .h5io import (
    BIT_CONVENTION,
    DimensionError,
    FileFormatError,
    read_problem,
    read_statevector,
    write_problem,
    write_statevector,
)

__version__ = "0.1.0"
