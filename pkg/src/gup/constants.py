"""Physical constants shared across the package.

All values are SI.  The Planck momentum squared sets the scale against
which the dimensionless deformation strength is measured, so it is
precomputed here once.
"""

import math

PLANCK_MASS = 2.176435e-8
"""Planck mass in kg."""

SPEED_OF_LIGHT = 299_792_458.0
"""Speed of light in m/s (exact)."""

PLANCK_MOMENTUM_SQ = (PLANCK_MASS * SPEED_OF_LIGHT) ** 2
"""(M_p c)^2 in kg^2 m^2 / s^2, about 42.57."""

REDUCED_PLANCK = 1.054_571_817e-34
"""hbar in J s."""

ATOMIC_MASS_UNIT = 1.66054e-27
"""Unified atomic mass unit in kg, used to convert mass to nucleon number."""

VACUUM_PERMEABILITY = 4.0e-7 * math.pi
"""mu_0 in T m / A."""
