"""Helical Meyer wavelets and the Hodge-Beltrami split on the periodic cube."""

from .coherence import (
    CoherenceSpectrum,
    RayProfile,
    TailFit,
    coherence_spectrum,
    ray_profile,
    species_center,
    tail_fit,
)
from .fieldio import generate, read_coeffs, read_field, write_coeffs, write_field
from .fourier import (
    GridScalarField,
    GridVectorField,
    SpectralScalar,
    SpectralVector,
    Wavevector,
    fft_scalar,
    fft_vector,
    ifft_scalar,
    ifft_vector,
    parity,
    sobolev_norm,
    spectral_curl,
    spectral_divergence,
)
from .helical import Polarity, helical_vector, spherical_triad, uniform_triad
from .hodge import HelicalCoeffs, assemble, constantin_majda, decompose, project, project_harmonic, pull_up, pull_up_adjoint
from .meyer import (
    WaveletCoeffs,
    WaveletIndex,
    analyze,
    max_level,
    meyer_phi_hat,
    meyer_psi_hat,
    partition_check,
    synthesize,
)
from .transform import (
    HelicalWaveletCoeffs,
    forward,
    inverse,
    solenoidal_scaling_function,
    synth_basis_function,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
