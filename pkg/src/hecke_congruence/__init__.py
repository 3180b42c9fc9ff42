"""Exact combinatorics of Hecke polynomials, unramified sigma-conjugacy classes
and their congruence factors for unramified groups with minuscule mu."""

from .errors import (
    ConfigError,
    EnumerationError,
    HeckeCongruenceError,
    InvarianceError,
    NotDivisibleError,
    NotMinusculeError,
    PeriodGapError,
    RootDatumError,
)
from .laurent import LaurentP
from .presets import PRESETS, get_preset, load_config, parse_config
from .root_datum import BasedRootDatum, LeviDatum, WeylElement
from .torus_algebra import HeckePolynomial, TorusAlgebraElement, dot_act, is_dot_invariant

__version__ = "0.1.0"
