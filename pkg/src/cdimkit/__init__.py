"""Exact computations around counting dimension over k((t)).

Series and polynomial arithmetic over Q, Groebner bases and Hilbert
functions, the determinant method at points of bounded height, and
witness checks for curves.
"""

from .curves import CurveSpec, WitnessMap, cdim_witness_check, xs_dimension, xs_ideal
from .detmethod import build_matrix, det_fraction_free, kernel_hypersurface
from .groebner import IdealBasis, buchberger, hilbert_fn, variety_dimension
from .monomials import dm_parameters, enumerate_grevlex, grevlex_cmp
from .polys import MultiPoly
from .series import T, LaurentPoly, ResidueClass, TruncSeries, exp_series

__version__ = "0.1.0"

__all__ = [
    "CurveSpec", "WitnessMap", "cdim_witness_check", "xs_dimension", "xs_ideal",
    "build_matrix", "det_fraction_free", "kernel_hypersurface",
    "IdealBasis", "buchberger", "hilbert_fn", "variety_dimension",
    "dm_parameters", "enumerate_grevlex", "grevlex_cmp", "MultiPoly",
    "T", "LaurentPoly", "ResidueClass", "TruncSeries", "exp_series",
]
