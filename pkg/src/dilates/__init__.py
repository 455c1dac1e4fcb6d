"""Sums of dilates in ordered groups: exact constructions, identity
checks and sumset bounds."""

from .alphafield import AlphaContext, AlphaSum, alpha_cmp, alpha_eq, alpha_sign, ctx_new
from .exactnum import IntPoly, KAdic, RatInterval, kadic_normalize
from .freewords import ReducedWord, is_proper_power, parse_word, relator
from .ordgroup import GroupElement, generator_e, identity, inv, mul, pow_

__version__ = "0.1.0"
