"""Quantum channel ergodicity toolkit: channel construction from bipartite
unitaries, spectral classification on the ergodic hierarchy, operator
entanglement criteria, and many-body (quasiperiodic chain / SYK) pipelines.
"""

__version__ = "0.1.0"
