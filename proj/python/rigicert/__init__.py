"""Certificates for universal completability and universal rigidity of
tensegrity frameworks.

Symmetric matrices are passed and returned as square float64 numpy arrays.
Node indices are 0-based.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
