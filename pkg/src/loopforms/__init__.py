"""Desk-scale numerics for loop-group bundle geometry.

Modules
-------
liecore      su(n)/SU(n) matrix model, normalized invariant form, symmetrized
             trace polynomials
loopspace    discretized loops, spectral circle calculus, LG x S1 semidirect
             algebra
formscalc    alternating forms on finite charts with the 1/q! evaluation
             convention
connections  connection/Higgs data on trivialized charts, curvatures, string
             forms of every odd degree
caloron      loop-bundle <-> G-bundle transport of connections and curvature
pathfib      path-fibration geometry, Higgs-field holonomy, transgression
centralext   central-extension 2-form/1-form data, curvings, descent checks
report       seeded verification suites with machine-readable reports
"""

from . import (
    caloron,
    centralext,
    connections,
    formscalc,
    liecore,
    loopspace,
    pathfib,
    report,
    sampling,
)

__all__ = [
    "caloron",
    "centralext",
    "connections",
    "formscalc",
    "liecore",
    "loopspace",
    "pathfib",
    "report",
    "sampling",
]

__version__ = "0.1.0"
