"""Landau-problem toolkit on flat and curved two-dimensional geometries.

Exact operator algebra (``opalg``), geometry builders (``geometry``),
model operators and the identity suite (``models``), classical dynamics
(``classical``), special functions (``specfun``), closed-form spectra
(``spectra``), independent numerical oracles (``numverify``), many-body
trial states (``manybody``), and a CLI (``cli``).
"""

from . import (classical, errors, geometry, manybody, models, numverify,
               opalg, specfun, spectra)

__all__ = ["classical", "errors", "geometry", "manybody", "models",
           "numverify", "opalg", "specfun", "spectra"]

__version__ = "0.1.0"
