"""Exact commutative-algebra engine for dual Hilbert-Samuel functions of
maximal Cohen-Macaulay modules over Gorenstein quotient rings."""

from .field import QQ, PrimeField, field_from_name
from .poly import Poly, RingSignature
from .parse import parse_poly
from .groebner import buchberger, ideal_power, module_groebner, normal_form, syzygy_matrix
from .rings import (FPModule, FiniteLengthModule, Ideal, QuotientRing,
                    dual_module, ideal_layer_flm, is_cohen_macaulay_module,
                    is_mprimary, make_quotient_ring, minimal_presentation,
                    module_truncation_length, submodule_presentation,
                    syzygy_module, truncation_algebra)
from .homology import (bass_mu1, dual_hs_value, ext_dual_value, ext_length,
                       hom_length, residue_field_module)
from .invariants import (dual_hilbert_coefficients, dual_hilbert_function_delta,
                         ext1_dual_function, hilbert_coefficients,
                         minimal_reduction, phi, superficial_element,
                         ulrich_check, zero_dim_report)
from .numfun import NumericalFunction, SeriesNumerator, fit_numerical
from .claims import REGISTRY, VerificationReport, verify
from .session import run_session

__version__ = "0.1.0"
