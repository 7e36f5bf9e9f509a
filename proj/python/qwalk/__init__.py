"""Continuous-time quantum walks on graphs.

Thin Python layer over the C++ core. Graph specs use the same syntax as the
command-line tool: ``path:n``, ``star:k``, ``dstar:k,l``, ``cube:d``, ``file:<path>``.
"""

from fractions import Fraction

from ._qwalk import *  # noqa: F401,F403
from ._qwalk import __version__, skk_parameters as _skk_parameters


def skk_parameters(k):
    """Exact alpha and beta of S_{k,k} as (a, b, d) with value a + b*sqrt(d)."""
    return tuple((Fraction(a), Fraction(b), d) for a, b, d in _skk_parameters(k))
