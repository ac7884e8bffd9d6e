"""Exact toolkit for distance-biregular graphs.

Submodules:

* :mod:`dbrg.gfcore` -- finite fields GF(p^t) and exact linear algebra.
* :mod:`dbrg.geometry` -- hyperovals, maximal arcs, dualities, quadric cones.
* :mod:`dbrg.perpsys` -- perp systems: verification, parameters, search.
* :mod:`dbrg.bigraph` -- bipartite graph engine and biregularity checks.
* :mod:`dbrg.constructions` -- graph builders with predicted arrays.
* :mod:`dbrg.feasibility` -- intersection-array feasibility and enumeration.
* :mod:`dbrg.cli` -- command-line front end.
"""

__version__ = "0.1.0"
