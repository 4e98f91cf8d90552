# Physical constants (CODATA 2018) and Rb-87 data used by the closed-form
# parameter helpers. Everything else in the package works in rad/s and seconds
# and never touches these.

HBAR = 1.054571817e-34      # J s
EPSILON_0 = 8.8541878128e-12  # F/m
C_LIGHT = 299792458.0       # m/s

# Rubidium 87
RB87_MASS = 1.44316060e-25  # kg
RB_D1_WAVELENGTH = 794.979e-9  # m
# Reduced dipole matrix element of the D1 line (Steck, "Rubidium 87 D Line Data")
RB_D1_DIPOLE = 2.537e-29    # C m

TWO_PI = 6.283185307179586
