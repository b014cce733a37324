"""Verification toolkit for toroidal cusp compactification geometry.

Subpackages cover the Siegel-model Heisenberg group, the punctured-disk
bundle at a cusp, cutoff profile construction, curvature of the model
metrics with an independent Koszul oracle, exact arithmetic over
imaginary quadratic fields with the Cayley density algorithm, and a
plurisubharmonicity toolkit, plus a batch verification CLI.
"""

__version__ = "0.1.0"

__all__ = [
    "heisenberg_siegel",
    "cusp_bundle",
    "profile",
    "curvature",
    "qfield_cayley",
    "psh",
    "cli",
]
