"""Exact barcodes and Harder-Narasimhan filtrations for quiver representations.

Subpackage map:

* ``linalg``   -- exact scalars and dense matrices over QQ and GF(p)
* ``quiver``   -- quivers, representations, stability conditions, slopes
* ``zigzag``   -- interval modules and barcode decomposition on paths
* ``hn``       -- HN filtrations: barcode fast path and brute-force oracle
* ``affine``   -- cycle quivers: wrapped intervals, Jordan cells, unwinding
* ``cli``      -- JSON instance files and the ``hnzz`` command
"""

from .linalg import GF, QQ, Matrix
from .quiver import Quiver, Representation, StabilityCondition
from .zigzag import Barcode, Interval
from .hn import HNReport
from .affine import AffineQuiver, LiftWindow

__all__ = [
    "GF",
    "QQ",
    "Matrix",
    "Quiver",
    "Representation",
    "StabilityCondition",
    "Barcode",
    "Interval",
    "HNReport",
    "AffineQuiver",
    "LiftWindow",
]

__version__ = "0.1.0"
