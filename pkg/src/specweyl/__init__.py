"""specweyl: numerics for singular Schrodinger operators with discrete spectra.

Weyl solutions and singular Weyl functions, eigenvalues and norming
constants, spectral measures, Krein/Hadamard product representations, and
diagnostics for the asymptotic laws and uniqueness criteria they satisfy.
"""

from .errors import SpecweylError
from .model import (BoundaryCondition, Kind, PotentialModel, Side, bessel,
                    classify_endpoint, eval_q, from_dict, harmonic, load_model,
                    perturbed_harmonic, poschl_teller, regular, tabulated)
from .products import (HPolynomial, ProductRep, construct_phi,
                       fit_krein_constant, h_polynomial, krein_m_minus)
from .propagate import integrate, oscillation_count, sample
from .scaling import LogScaledComplex, ScaledValue
from .special import (hermite_eigenvalue, hermite_oracle, log_gamma, weber_D,
                      weber_D_derivative, weber_ray_asymptotic)
from .spectrum import (ExponentReport, SpectralMeasure, eigenvalues, expand,
                       exponent_report, norming_constants, poschl_teller_offset,
                       spectral_measure, sub_spectrum, wronskian_derivative)
from .verify import (DecayDiagnostic, IsospectralReport, RaySpec, bm_diagnostic,
                     herglotz_check, hl_condition, isospectral_compare,
                     ray_M_asymptotics, ray_phi_asymptotics, ray_psi_asymptotics,
                     stieltjes_invert)
from .weyl import FundamentalFrame

__version__ = "0.1.0"

__all__ = [
    "SpecweylError", "PotentialModel", "BoundaryCondition", "Kind", "Side",
    "harmonic", "perturbed_harmonic", "bessel", "poschl_teller", "regular",
    "tabulated", "from_dict", "load_model", "eval_q", "classify_endpoint",
    "ScaledValue", "LogScaledComplex", "integrate", "sample",
    "oscillation_count", "log_gamma", "weber_D", "weber_D_derivative",
    "weber_ray_asymptotic", "hermite_oracle", "hermite_eigenvalue",
    "FundamentalFrame", "eigenvalues", "sub_spectrum", "norming_constants",
    "spectral_measure", "SpectralMeasure", "expand", "exponent_report",
    "ExponentReport", "wronskian_derivative", "poschl_teller_offset",
    "ProductRep", "HPolynomial", "krein_m_minus", "fit_krein_constant",
    "h_polynomial", "construct_phi", "RaySpec", "DecayDiagnostic",
    "ray_phi_asymptotics", "ray_M_asymptotics", "ray_psi_asymptotics",
    "bm_diagnostic", "hl_condition", "stieltjes_invert", "herglotz_check",
    "isospectral_compare", "IsospectralReport",
]
