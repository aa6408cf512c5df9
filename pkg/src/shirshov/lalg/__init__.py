"""The free L-algebra: normal words, bracket normalisation and multiplication.

Theory builders for structure constants, dialgebras, free products and the
two-generator embedding live in :mod:`shirshov.lalg.builders`.
"""

from .normal import (
    bracket, count_normal, enumerate_normal, fp_irr_characterization, is_normal,
    loday_form, nmul,
)

__all__ = [
    "bracket", "count_normal", "enumerate_normal", "fp_irr_characterization",
    "is_normal", "loday_form", "nmul",
]
