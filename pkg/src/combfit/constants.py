"""Physical constants used across the package.

All frequency-domain code works in ordinary frequencies f (Hz); angular
quantities are divided by 2*pi on ingestion.
"""

# Speed of light in vacuum, m/s. Exact by SI definition (CGPM 1983).
SPEED_OF_LIGHT = 299_792_458.0

# Fine structure constant. CODATA-era rounding, adequate for every
# sensitivity computed here; pass an explicit value to override.
FINE_STRUCTURE_CONSTANT = 1.0 / 137.035999

# Rounded Casimir sensitivity of the Cs ground-state hyperfine splitting
# used when composing the reference hyperfine/optical drift coefficients
# (A = 2 + L_cs - L_opt).  The closed form at Z=55 gives 0.739; the
# reference combinations round it to 0.8, and the bundled datasets ship
# coefficients built with that rounding.
CS_HFS_SENSITIVITY_REFERENCE = 0.8

# Annual fractional variation of the solar gravitational potential at
# Earth (peak sinusoid amplitude used by the default potential model).
SOLAR_POTENTIAL_VARIATION = 3.3e-10
