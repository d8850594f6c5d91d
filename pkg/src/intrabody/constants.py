"""Physical constants shared across the package.

Values are pinned to the rounded figures used by the reference tissue data
(c = 3e8, eps0 = 8.85e-12, mu = 1.25e-6) so that derived quantities such as
conductivity and penetration depth reproduce the published arithmetic exactly.
Do not swap in CODATA values without re-deriving the golden numbers in the
test suite.
"""

# speed of light in vacuum, m/s
SPEED_OF_LIGHT = 3e8

# vacuum permittivity, F/m
VACUUM_PERMITTIVITY = 8.85e-12

# magnetic permeability of tissue (non-magnetic assumption), H/m
PERMEABILITY = 1.25e-6

# free-space wave impedance, ohm
ETA_0 = 376.73

# fixed refractive indices for the layered-tissue sweeps
FIXED_INDEX = {
    "air": 1.0,
    "fat": 1.58,
    "skin": 1.73,
    "blood": 1.97,
}
