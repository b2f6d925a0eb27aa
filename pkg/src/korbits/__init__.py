"""korbits: exact computations with spherical nilpotent K-orbits in the
isotropy representations of the classical Hermitian symmetric pairs."""

__version__ = "0.1.0"

from . import cg, hermitian, orbits, rootlat, semigroup, spherical  # noqa: F401
