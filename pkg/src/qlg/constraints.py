"""Coupling bounds from experimental sensitivities and exclusion curves.

The bound formulas invert the signal models; each is a strict monotone
function of its sensitivity input and satisfies a round-trip identity
against the forward model.  The gravity comparison follows the source
material's own arithmetic ("paper convention"); the dimensional caveat is
recorded in the emitted metadata rather than resolved here.
"""

from dataclasses import dataclass, field

import numpy as np

from .constants import (
    C_LIGHT,
    G_NEWTON,
    GEV_PER_KG,
    HBAR,
    INV_GEV_PER_METER,
    INV_GEV_PER_SECOND,
)
from .kernels import decoherence_form_factor, yukawa_kernel
from .signals import TrajectorySpec, geometry_factor, mass_frequency

PAPER_SLOPE_BOUND_G = 3e-7        # quoted interferometer bound on g
PAPER_SLOPE_BOUND_G2I = 1e-13     # quoted bound on g^2 |I_geom|


class ConstraintError(ValueError):
    pass


class UnconstrainedError(ConstraintError):
    """The requested configuration leaves the coupling unbounded."""


@dataclass(frozen=True)
class AtomInterferometer:
    mass: float
    interrogation_time: float
    kappa_max: float
    geometry_factor: float
    convention: str = "paper-si"
    max_separation: float = 1.0  # arm separation scale used for exclusion curves

    def __post_init__(self):
        if min(self.mass, self.interrogation_time, self.kappa_max, self.max_separation) <= 0:
            raise ConstraintError("atom interferometer magnitudes must be positive")


@dataclass(frozen=True)
class Nanosphere:
    mass: float
    delta_x: float
    gamma_max: float
    gamma0: float

    def __post_init__(self):
        if min(self.mass, self.gamma_max, self.gamma0) <= 0 or self.delta_x < 0:
            raise ConstraintError("nanosphere magnitudes must be positive")


@dataclass(frozen=True)
class EntanglementTest:
    mass_1: float
    mass_2: float
    separation: float
    energy_sensitivity: float

    def __post_init__(self):
        if min(self.mass_1, self.mass_2, self.separation, self.energy_sensitivity) <= 0:
            raise ConstraintError("entanglement test magnitudes must be positive")


@dataclass(frozen=True)
class ExclusionCurve:
    platform: str
    cutoff_lengths: np.ndarray
    g_max: np.ndarray
    sanity: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.cutoff_lengths) != len(self.g_max):
            raise ConstraintError("cutoff_lengths and g_max must have equal length")


def bound_g_from_slope(p):
    """g_max = sqrt(kappa_max / (omega_m T |I_geom|))."""
    if p.geometry_factor == 0.0:
        raise UnconstrainedError("I_geom = 0: the slope places no bound on g")
    omega = mass_frequency(p.mass, p.convention)
    return float(np.sqrt(p.kappa_max / (omega * p.interrogation_time * abs(p.geometry_factor))))


def slope_bound_report(p):
    """Bound plus the discrepancy against the quoted reference numbers."""
    g_max = bound_g_from_slope(p)
    factor = max(g_max / PAPER_SLOPE_BOUND_G, PAPER_SLOPE_BOUND_G / g_max)
    return {
        "g_max": g_max,
        "reference_g": PAPER_SLOPE_BOUND_G,
        "reference_g2_igeom": PAPER_SLOPE_BOUND_G2I,
        "g2_igeom": g_max**2 * abs(p.geometry_factor),
        "discrepancy_factor": factor,
        "within_factor_30": bool(factor <= 30.0),
        "note": (
            "quoted bound chain and direct inversion differ; both are recorded, "
            "agreement is judged at the factor-30 envelope"
        ),
    }


def bound_g_from_decoherence(p, cutoff_length):
    """g_max = sqrt(Gamma_max / (gamma0 m^2 f(delta_x)))."""
    f = decoherence_form_factor(p.delta_x, cutoff_length)
    if f == 0.0:
        raise UnconstrainedError(
            "delta_x = 0 gives f = 0: decoherence places no bound on g"
        )
    return float(np.sqrt(p.gamma_max / (p.gamma0 * p.mass**2 * f)))


def bound_g_from_entanglement(p, cutoff_length):
    """g_max = sqrt(sensitivity / (m1 m2 K(R))): our inversion of the
    effective two-qubit coupling (the source treats this test only
    qualitatively, so the formula is artifact plumbing, flagged as such)."""
    kernel = yukawa_kernel(p.separation, cutoff_length)
    return float(np.sqrt(p.energy_sensitivity / (p.mass_1 * p.mass_2 * kernel)))


def exclusion_grid(platforms, cutoff_lengths):
    """Per-platform (cutoff_length, g_max) exclusion curves.

    The interferometer recomputes I_geom per cutoff length from its
    triangular trajectory; the nanosphere and entanglement platforms
    re-evaluate their kernels.  Each curve carries a monotone-sanity
    report (e.g. the nanosphere bound must loosen once the cutoff length
    exceeds the superposition size).
    """
    cutoff_lengths = np.asarray(cutoff_lengths, dtype=float)
    if cutoff_lengths.size == 0 or not platforms:
        raise ConstraintError("need at least one platform and one cutoff length")
    if np.any(cutoff_lengths <= 0):
        raise ConstraintError("cutoff lengths must be positive")

    curves = []
    for p in platforms:
        if isinstance(p, AtomInterferometer):
            traj = TrajectorySpec(p.max_separation, 2.0 * p.interrogation_time)
            g = np.array(
                [
                    bound_g_from_slope(
                        AtomInterferometer(
                            p.mass,
                            p.interrogation_time,
                            p.kappa_max,
                            geometry_factor(traj, lc),
                            p.convention,
                            p.max_separation,
                        )
                    )
                    for lc in cutoff_lengths
                ]
            )
            sanity = {"finite": bool(np.all(np.isfinite(g))), "positive": bool(np.all(g > 0))}
            curves.append(ExclusionCurve("atom-interferometer", cutoff_lengths, g, sanity))
        elif isinstance(p, Nanosphere):
            g = np.array([bound_g_from_decoherence(p, lc) for lc in cutoff_lengths])
            beyond = cutoff_lengths > p.delta_x
            monotone = bool(np.all(np.diff(g[beyond]) > 0)) if beyond.sum() > 1 else True
            sanity = {
                "finite": bool(np.all(np.isfinite(g))),
                "loosens_beyond_delta_x": monotone,
            }
            curves.append(ExclusionCurve("nanosphere", cutoff_lengths, g, sanity))
        elif isinstance(p, EntanglementTest):
            g = np.array([bound_g_from_entanglement(p, lc) for lc in cutoff_lengths])
            # log g grows like R/(2 lc) as the kernel turns off
            slope = np.diff(np.log(g)) / np.diff(p.separation / (2.0 * cutoff_lengths))
            sanity = {
                "finite": bool(np.all(np.isfinite(g))),
                "exponential_blindness_slope": float(slope.mean()) if slope.size else 1.0,
            }
            curves.append(ExclusionCurve("entanglement-test", cutoff_lengths, g, sanity))
        else:
            raise ConstraintError(f"unknown platform type {type(p).__name__}")
    return curves


def gravity_ratio(g, r, cutoff_length):
    """Latent-to-Newtonian potential ratio g^2 exp(-R/l) / (4 pi G)."""
    if r < 0:
        raise ConstraintError(f"R must be nonnegative, got {r}")
    if cutoff_length <= 0:
        raise ConstraintError("cutoff_length must be positive")
    return g * g * np.exp(-r / cutoff_length) / (4.0 * np.pi * G_NEWTON)


_TO_NATURAL = {
    "mass": GEV_PER_KG,          # kg -> GeV
    "length": INV_GEV_PER_METER,  # m -> 1/GeV
    "time": INV_GEV_PER_SECOND,   # s -> 1/GeV
    "rate": 1.0 / INV_GEV_PER_SECOND,  # 1/s -> GeV
}

_SYSTEMS = ("SI", "natural-GeV")


def unit_convert(value, quantity, from_system, to_system):
    """Convert mass/length/time/rate between SI and GeV-based natural units.

    Round trips reproduce the input to a couple of ulps (well within the
    1e-12 relative contract).
    """
    if quantity not in _TO_NATURAL:
        raise ConstraintError(f"unknown quantity {quantity!r}; choose from {sorted(_TO_NATURAL)}")
    for system in (from_system, to_system):
        if system not in _SYSTEMS:
            raise ConstraintError(f"unknown unit system {system!r}; choose from {_SYSTEMS}")
    if from_system == to_system:
        return value
    factor = _TO_NATURAL[quantity]
    if from_system == "SI":
        return value * factor
    return value / factor
