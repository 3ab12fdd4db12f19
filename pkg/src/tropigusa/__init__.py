"""Tropical Igusa invariants and genus-2 reduction types in exact arithmetic.

Modules:

* :mod:`~tropigusa.valfield` - exact discretely valued fields (Q with v_p, Q(t) with v_t)
* :mod:`~tropigusa.igusa` - Igusa invariants of quintic models and their valuations
* :mod:`~tropigusa.redtype` - w-table, reduction type, thicknesses, skeleton
* :mod:`~tropigusa.metgraph` - metric graphs, Laplacian, graph Jacobian
* :mod:`~tropigusa.tropfun` - piecewise affine functions and tropicalization maps
* :mod:`~tropigusa.torsion` - elliptic and genus-2 torsion tropicalizations
"""

__version__ = "0.1.0"

from .errors import TropigusaError  # noqa: E402
from .valfield import ExtRat, ValuedField, padic, tadic, val  # noqa: E402

__all__ = ["ExtRat", "TropigusaError", "ValuedField", "padic", "tadic", "val", "__version__"]
