"""Project-wide numeric defaults."""

DEFAULT_NMAX = 1000
# sup-type quantities are also reported at n_max // TAIL_DIVISOR
TAIL_DIVISOR = 10
DIVERGENCE_RATIO = 1.01

# half-plane grid for the Weiss oracle
GRID_XI_MIN = 1e-6
GRID_XI_MAX = 1e2
GRID_XI_POINTS = 60
GRID_ETA_POINTS = 33
GRID_ANCHOR_MODES = 128
WEISS_GRID_TOL = 1e-9

QUAD_RTOL = 1e-10
QUAD_ATOL = 1e-13
QUAD_MAX_SUBDIVISIONS = 200
QUAD_HORIZON = 50.0
# support modes with |Re λ| below this make the oracle tail nonconvergent
MIN_DECAY_RATE = 1e-12

FIT_WINDOW_DECADES = 2.0
FIT_MIN_POINTS = 10

EQUIVALENCE_POINTS_PER_DECADE = 24
EQUIVALENCE_GROWTH_THRESHOLD = 1.5

CARLESON_LEVELS = 20
CARLESON_DENSE_LIMIT = 64
POWER_ITERATION_TOL = 1e-12
POWER_ITERATION_MAX_ITER = 10_000

SUP_SEARCH_POINTS = 200
SUP_SEARCH_XTOL = 1e-6

DEFAULT_SEED = 0
