"""Exact F-signature of pairs ``s(R, f^t)`` over ``F_p[x_1, ..., x_d]``."""

from .colength import colon_colength, pair_colength, resolve_backend
from .errors import (DuplicateAbscissa, FSignatureError, GapFormulaViolation, MissingSample,
                     NotPrimeError, ParseError, ResourceLimit, RingMismatch, UnitElement,
                     UnknownVariable, ZeroInversion)
from .fsig import (Sample, SignatureSeries, ThresholdBracket, approx_nth_derivative_terms,
                   collinear, difference_quotient, fpt_bracket, frobenius_fraction, fsig_sweep,
                   fsig_value, slope, splitting_dimension_scan, splitting_ratio_terms)
from .gfp import FieldElement, PrimeChar, inv_mod, lucas_binom
from .ideal import (IdealBasis, colength, frobenius_power, groebner, ideal_quotient, normal_form,
                    splitting_certificate)
from .poly import Polynomial, RingContext, frobenius_twist, multiply, parse_poly, power
from .syzygy import (GapRow, GapSample, LinearFormProduct, evaluate_limit, gap_series,
                     limiting_polynomial, monsky_bound_holds, syzygy_gap)

__version__ = "0.1.0"
