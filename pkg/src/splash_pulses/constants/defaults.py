import numpy as np

from splash_pulses.types import StencilOrder

OUTPUT_DIR = "splash-out"

THREADS = 1

TOL = 1e-8
"""relative tolerance handed to adaptive quadratures"""

STENCIL_ORDER: StencilOrder = 6

BASE_STEP = float(np.finfo(float).eps ** (1 / 7))
"""relative finite-difference step, about 5.8e-3"""

PROBE_CT0 = 1e3
"""first probe time for closed-form fields"""

PROBE_CT0_DERIVED = 10.0
"""first probe time for finite-difference derived fields"""

PROBE_DOUBLINGS = 24

PROBE_RTOL = 1e-6
"""model residual floor, relative to the sample scale, for closed-form fields"""

PROBE_RTOL_DERIVED = 1e-3

AMBIGUITY_MARGIN = 10.0

SINGULAR_FRACTION_LIMIT = 0.1
"""largest fraction of rejected residual sample points"""

GRID_NAN_FRACTION_LIMIT = 0.5

EPSILON0 = 1.0
RHO0 = 1.0
