"""Exact Swan conductors of Artin-Schreier-Witt characters over F((pi)).

The residue field F is a finite field GF(q) or a rational function field
GF(q)(y); characters are Witt vectors over F[pi, 1/pi].
"""

from .differentials import GradedForm, NormalFormBGr, bgr_normal_form, fmd
from .errors import (ConfigError, NotInBGr, OutOfTheoremRange, ParseError,
                     ReductionBudgetExceeded, SwanlabError, UnsupportedRange)
from .field import FieldConfig, LaurentElem, ResidueElem
from .parser import parse_element, render
from .ramification import (CharacterClass, ConductorReport, analyze, char_point, critical_slope,
                           kappa_n, log_char_point, log_critical_slope, reduce_representative,
                           refined_swan, refined_swan_modified, rho_n, swan, swan_modified, theta)
from .witt import WittVec, build_context

__version__ = "0.1.0"

__all__ = [
    "CharacterClass", "ConductorReport", "ConfigError", "FieldConfig", "GradedForm",
    "LaurentElem", "NormalFormBGr", "NotInBGr", "OutOfTheoremRange", "ParseError",
    "ReductionBudgetExceeded", "ResidueElem", "SwanlabError", "UnsupportedRange", "WittVec",
    "analyze", "bgr_normal_form", "build_context", "char_point", "critical_slope", "fmd",
    "kappa_n", "log_char_point", "log_critical_slope", "parse_element", "reduce_representative",
    "refined_swan", "refined_swan_modified", "render", "rho_n", "swan", "swan_modified", "theta",
]
