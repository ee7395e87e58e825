"""Exact spectra of the second derivative on equilateral metric graphs.

The package computes CK (continuity/Kirchhoff) and KC (anti-Kirchhoff)
spectra in closed form from the graph transition matrix, scans general
self-adjoint boundary conditions through their secular matrix, and recovers
graph invariants from spectra.
"""

__version__ = "0.1.0"
