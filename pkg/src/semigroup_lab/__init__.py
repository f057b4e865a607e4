"""
Semigroup Lab - decay rates, resolvent growth and admissibility on diagonal
C0-semigroups.

Exact constants where closed forms exist, quadrature and grid oracles that
cross-check them, and constant chains for the sufficient conditions linking
decay, Weiss conditions and admissibility.
"""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("semigroup_lab")
except PackageNotFoundError:
    # Package is not installed
    __version__ = "0.0.0-dev"

__all__ = [
    "__version__",
]
