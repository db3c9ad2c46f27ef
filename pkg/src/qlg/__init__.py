"""Desk-scale simulator for a coherence-selective hidden gauge interaction.

Submodules:
    states       grids, wavepackets, density kernels, two-qubit states
    coarsegrain  the coarse-graining channel and momentum filter
    currents     coherence density/current, continuity diagnostics
    dynamics     spectral free evolution, Lindblad integration, potentials
    kernels      benchmark kernels and regulated quadratures
    signals      phase shifts, geometry factor, decoherence, entanglement
    constraints  coupling bounds and exclusion curves
    cli          the `qlg` command-line tool
"""

from . import (
    coarsegrain,
    constants,
    constraints,
    currents,
    dynamics,
    kernels,
    signals,
    states,
)

__all__ = [
    "coarsegrain",
    "constants",
    "constraints",
    "currents",
    "dynamics",
    "kernels",
    "signals",
    "states",
]

__version__ = "0.1.0"
