"""Compiler, resource analysis and exact simulation for non-adaptive l2-MBQC."""
from .boolfn import (Anf, AnfParseError, BoolFn, RealPoly, WalshSpectrum, apply_affine, degree,
                     elementary_symmetric, from_anf, hamming_distance, interpolate,
                     linear_to_monomials, symmetric_product, to_anf, walsh_forward, walsh_inverse)
from .compiler import (MeasurementScheme, NonDeterministic, StabilizerScheme, clifford_level,
                       compile_delta, compile_general, compile_quadratic, lempel_factor,
                       scheme_output_oracle)
from .dyadic import Dyadic
from .pauli import PauliString

__version__ = "0.1.0"
