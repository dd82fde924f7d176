"""Exact symbolic computation in the two-parameter quantum groups U+_{r,s}(sl3)
and the augmented nonnegative part built from it."""

__version__ = "0.1.0"

from .scalars import Scalar, scalar_from_rs
from .algebra import Element, PRESETS, normal_form, preset
from .parser import parse, render

__all__ = ["Element", "PRESETS", "Scalar", "normal_form", "parse", "preset", "render", "scalar_from_rs", "__version__"]
