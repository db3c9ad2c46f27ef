"""Pinned physical constants (SI).

Values are fixed here rather than read from the environment so that every
run of the suite reproduces the same bytes.
"""

HBAR = 1.054571817e-34      # J s
C_LIGHT = 2.99792458e8      # m / s
G_NEWTON = 6.674e-11        # m^3 / (kg s^2)
EV = 1.602176634e-19        # J
GEV = 1e9 * EV              # J
ATOMIC_MASS = 1.66053906660e-27  # kg

# derived conversion factors for natural (GeV-based) units
GEV_PER_KG = C_LIGHT**2 / GEV          # mass:   kg -> GeV
INV_GEV_PER_METER = GEV / (HBAR * C_LIGHT)   # length: m -> 1/GeV
INV_GEV_PER_SECOND = GEV / HBAR              # time:   s -> 1/GeV
