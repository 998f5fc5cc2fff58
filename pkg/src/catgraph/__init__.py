"""Coupled Arnol'd cat maps on circulant graphs: spectra, entropy and exact periods."""

from .graph import (
    AsymmetricCouplingError,
    BccbCoupling,
    CirculantMatrix,
    ConnectionSet,
    GeneratingVector,
    adjacency,
    bccb_assemble,
    block_diagonal,
    circulant_mul,
    connection_set,
    from_integer,
    periodic_family,
    stride_vector,
    validate_symmetric,
)
from .kernels import BACKEND
from .periods import PeriodResult, matrix_period, period_sweep_N, period_sweep_n, scaling_law_check
from .spectral import (
    eigenvalues_closed_form,
    eigenvalues_dft,
    ks_entropy,
    lyapunov_spectrum,
    rho_pair,
    sorted_spectrum,
    spectrum_report,
)
from .symplectic import build_L, build_M, build_M_bccb, is_anti_symplectic, is_symplectic

__version__ = "0.1.0"
