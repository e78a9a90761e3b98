"""
shockwkb Constants.

Centralized constants to avoid magic numbers and improve maintainability.
"""

# Exit Codes
EXIT_SUCCESS = 0
EXIT_CONFIG_ERROR = 2
EXIT_CONDITION_FAILURE = 3
EXIT_NUMERIC_FAILURE = 4

# Expression Language
VARIABLES = ("x", "t")
FUNCTION_NAMES = ("sin", "cos", "exp", "ln", "sqrt", "tanh", "sinh", "cosh", "atan")

# Condition Tolerances
SOLVABILITY_TOLERANCE = 1e-9       # max |alpha_1..alpha_4|
COMPATIBILITY_TOLERANCE = 1e-9     # con_a0,b0 deviation
COND_V1_TOLERANCE = 1e-9           # d/dt of the v_1 bracket
DECAY_TOLERANCE = 1e-6             # space-G tail bounds
TRANSPORT_TOLERANCE = 1e-2         # sampled transport residual of traced u_0
NONZERO_TOLERANCE = 1e-12          # a0*b0 sampling
B0X_TOLERANCE = 1e-10              # b0 independent of x
FRAME_TOLERANCE = 1e-10            # |A| lower bound
COEFFICIENT_SAMPLES = 101          # per axis, nonzero/b0x sampling
FRAME_SAMPLES = 2001               # t-samples for frame validation
DECAY_WIDTH = 40.0                 # tails checked at tau = +-DECAY_WIDTH / beta

# Front Integrator
FRONT_RTOL = 1e-11
FRONT_ATOL = 1e-12
FRONT_MAX_STEPS = 2000             # max_step = T / FRONT_MAX_STEPS
A0_VANISHING_THRESHOLD = 1e-8      # event |a0(phi,t)| - threshold

# Characteristics
CHARACTERISTIC_STEPS = 2000        # step <= T / CHARACTERISTIC_STEPS
CROSSING_TOLERANCE = 1e-6          # bisection of the first inversion
MIN_FEET = 2001

# Quadrature
QUAD_EPSREL = 1e-9
QUAD_EPSABS = 1e-11
QUAD_LIMIT = 400

# Residual Studies
DEFAULT_TAU_STAR = 10.0
DEFAULT_EPSILON_LADDER = (0.1, 0.05, 0.025, 0.0125)
TAIL_EPSILON_LADDER = (0.01, 0.005, 0.0025, 0.00125)
TAIL_OFFSET_LIMIT = 0.25          # max eps*tau_threshold before tail slopes are flagged
MIN_LADDER_LENGTH = 3
SLOPE_BAND = 0.25
BOUNDEDNESS_RATIO = 3.0
RESIDUAL_FLOOR = 1e-9
DEFAULT_N_T = 61
DEFAULT_N_TAU = 2001

REGION_GLOBAL = "global"
REGION_RIGHT = "right"
REGION_LEFT = "left"

VALID_REGIONS = [
    REGION_GLOBAL,
    REGION_RIGHT,
    REGION_LEFT,
]

# Reference Solver
MIN_NODES = 201
DEFAULT_NODES = 2001
DEFAULT_CFL = 0.9
LAYER_MARGIN = 20.0                # domain margin in units of eps / beta
DT_FLOOR = 1e-12
CHECKPOINT_FRACTIONS = (0.25, 0.5, 0.75, 1.0)
DEFAULT_MAX_CONCURRENCY = 3

ADVECTION_UPWIND = "upwind"
ADVECTION_CENTRAL = "central"

VALID_ADVECTION_SCHEMES = [
    ADVECTION_UPWIND,
    ADVECTION_CENTRAL,
]

# Background Kinds
BACKGROUND_ZERO = "zero"
BACKGROUND_EXPRESSIONS = "expressions"

VALID_ORDERS = [0, 1]

# Figure Grid
DEFAULT_X_RANGE = (-4.0, 4.0)
DEFAULT_T_RANGE = (0.0, 3.0)
DEFAULT_NX = 401
DEFAULT_NT = 61
FIGURE_EPSILONS = (0.9, 0.25)

# Output
CSV_FLOAT_FORMAT = ".17g"
REPORT_SCHEMA_VERSION = "1.0"
OUTPUT_DIR_ENV = "SHOCKWKB_OUT_DIR"
DEFAULT_OUTPUT_DIR = "output"

# Logging
DEFAULT_LOG_LEVEL = "INFO"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
