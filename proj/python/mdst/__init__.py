"""Direct state tomography simulator: MDST, DST, Pauli and SU(2) tomography."""

from ._mdst import (
    ConfigError,
    NumericalError,
    PreconditionError,
    __version__,
    analytic_reconstruction,
    cd_observables,
    coupling_unitary,
    fourier_mub,
    g_opt,
    reference_table,
    random_state,
    reconstruct,
    run_cell,
    run_config,
    trace_distance,
    tv1,
    variance,
)

__all__ = [
    "ConfigError",
    "NumericalError",
    "PreconditionError",
    "__version__",
    "analytic_reconstruction",
    "cd_observables",
    "coupling_unitary",
    "fourier_mub",
    "g_opt",
    "reference_table",
    "random_state",
    "reconstruct",
    "run_cell",
    "run_config",
    "trace_distance",
    "tv1",
    "variance",
]
