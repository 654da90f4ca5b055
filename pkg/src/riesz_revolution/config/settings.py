from __future__ import annotations
import os
from typing import Dict, List, Optional, Tuple, Union, TYPE_CHECKING

from dotenv import load_dotenv, find_dotenv

from riesz_revolution.exceptions import UsageError

if TYPE_CHECKING:
    from riesz_revolution.config.data_formats import optimizer_option_format

# settings for the .env file to set the environmental variables (seed override, log level)
DOTENV = find_dotenv(usecwd=True)
if os.path.exists(DOTENV) and DOTENV:
    load_dotenv(DOTENV)

# ---------------------------------------------------
# environment variables
SEED_ENV_VAR: str = 'RIESZ_SEED'
LOG_LEVEL_ENV_VAR: str = 'RIESZ_LOG_LEVEL'
LOG_LEVEL: str = 'WARNING'

# ---------------------------------------------------
# special function accuracy
FUNCTION_REL_TOL: float = 1e-15
FUNCTION_MAX_TERMS: int = 2000
HYP2F1_SWITCH: float = 0.5               # direct series below, connection formula at 1 - z above
INTEGER_TOL: float = 1e-8                # c - a - b closer than this to an integer is degenerate
EXACT_INTEGER_TOL: float = 1e-12         # ... unless it is an integer to this precision (logarithmic form)
AGM_MAX_ITERATIONS: int = 64
AGM_REL_TOL: float = 4.0 * 2.220446049250313e-16  # a few ulp, the iterates may settle one ulp apart

# ---------------------------------------------------
# quadrature oracles
KERNEL_QUADRATURE_NODES: int = 1024
HILFSSATZ_NODES: int = 64
CDF_ABS_TOL: float = 1e-10
CDF_QUAD_LIMIT: int = 200

# ---------------------------------------------------
# optimizer
MAX_ITERATIONS: int = 10000
GRAD_TOL: float = 1e-9
RESTARTS: int = 8
JITTER: float = 0.1                      # fraction of the mean parameter gap
SEED: int = 0
WORKERS: int = 1
ARMIJO_SHRINK: float = 0.5
ARMIJO_SUFFICIENT_DECREASE: float = 1e-4
MAX_BACKTRACKS: int = 60
INITIAL_STEP_FRACTION: float = 0.1       # first trial step moves the fastest point by this share of the mean gap
BB_STEP_BOUNDS: Tuple[float, float] = (1e-12, 1e12)
LOG_EVERY: int = 100

OPTIMIZER_PRESETS: Dict[str, Dict[str, Union[int, float]]] = {
    'default': {'max_iterations': MAX_ITERATIONS, 'grad_tol': GRAD_TOL, 'restarts': RESTARTS, 'jitter': JITTER},
    'desk': {'max_iterations': 4000, 'grad_tol': GRAD_TOL, 'restarts': 2, 'jitter': JITTER},
    'quick': {'max_iterations': 1500, 'grad_tol': 1e-8, 'restarts': 1, 'jitter': JITTER},
}

# ---------------------------------------------------
# geometry
CONTAINMENT_SAMPLES: int = 2049
CASSINI_A: float = 1.0
CASSINI_B: float = 1.05
CASSINI_MIN_X: float = 0.1

# ---------------------------------------------------
# analysis
S1_BRACKET: Tuple[float, float] = (1e-6, 1.0 - 1e-6)
S1_XTOL: float = 5e-10
SIGN_SCAN_POINTS: int = 100
DELTA_CROSS_CHECK_TOL: float = 1e-11
LEVEL_SURFACE_X_GRID: List[float] = [0.05 * k for k in range(1, 20)]
LEVEL_SURFACE_INV_GAMMA_GRID: List[float] = [0.2 * k for k in range(1, 21)]    # cut off at 1/gamma = 4
LEVEL_SURFACE_S_GRID: List[float] = [0.02 * k for k in range(1, 31)]
LEVELSET_X_RANGE: Tuple[float, float] = (0.0, 3.0)
LEVELSET_Y_RANGE: Tuple[float, float] = (-1.5, 1.5)
LEVELSET_RESOLUTION: int = 301

# ---------------------------------------------------
# output
FLOAT_FORMAT: str = '%.15g'
SIGNIFICANT_DIGITS: int = 15


def get_seed(seed: Optional[int] = None) -> int:
    """
    Resolve the random seed for an optimization run.

    The environment variable ``RIESZ_SEED`` (also read from a ``.env`` file) overrides the seed given
    by the caller or the experiment file.

    :param seed: The seed requested by the caller. None falls back to the default seed.
    :return: The seed to use.
    :raises UsageError: If the environment variable does not hold a non-negative integer.
    """
    env_seed = os.environ.get(SEED_ENV_VAR)
    if env_seed is not None and env_seed.strip() != '':
        try:
            value = int(env_seed)
        except ValueError:
            raise UsageError(f'environment variable {SEED_ENV_VAR}: {env_seed} is not an integer.') from None
        if value < 0:
            raise UsageError(f'environment variable {SEED_ENV_VAR} must be a non-negative integer.')
        return value
    return SEED if seed is None else seed


def get_log_level() -> str:
    """Log level for the command line, ``RIESZ_LOG_LEVEL`` if set."""
    return os.environ.get(LOG_LEVEL_ENV_VAR, LOG_LEVEL).upper()


def get_optimizer_options(task: str = 'default') -> Dict[str, Union[int, float]]:
    """
    Retrieve the optimizer options preset for a task.

    :param task: Name of the preset. Supported are 'default' (full multistart run), 'desk' (two restarts,
                 used by the desk-scale reproduction runs) and 'quick' (single restart, loose tolerance).
    :return: A copy of the preset dictionary with the seed and worker count added.
    :raises ValueError: If the task is unknown.
    """
    if task not in OPTIMIZER_PRESETS:
        raise ValueError(f'parameter for task: {task} is not valid.')
    options = dict(OPTIMIZER_PRESETS[task])
    options.update({'seed': SEED, 'workers': WORKERS})
    return options


def get_advanced_optimizer_options(max_iterations: int = MAX_ITERATIONS, grad_tol: float = GRAD_TOL,
                                   restarts: int = RESTARTS, jitter: float = JITTER, seed: int = SEED,
                                   workers: int = WORKERS) -> optimizer_option_format:
    """
    Validate optimizer options and bundle them into a dictionary.

    :param max_iterations: Iteration budget of a single descent run. Positive integer.
    :param grad_tol: Stopping tolerance on the sup-norm of the projected gradient. Positive real.
    :param restarts: Number of multistart runs. Positive integer.
    :param jitter: Random displacement of the equispaced start, as a fraction of the mean parameter
                   gap. Real in [0, 0.5).
    :param seed: Seed of the restart jitter. Non-negative integer.
    :param workers: Number of threads running restarts concurrently. Positive integer.

    :return: A dictionary containing all validated options as key-value pairs.
    :raises ValueError: If any option is out of range.
    """
    if type(max_iterations) != int or max_iterations < 1:
        raise ValueError(f'parameter for max_iterations must be a positive integer value.')

    if type(grad_tol) not in (int, float) or not grad_tol > 0:
        raise ValueError(f'parameter for grad_tol must be a positive real value.')

    if type(restarts) != int or restarts < 1:
        raise ValueError(f'parameter for restarts must be a positive integer value.')

    if type(jitter) not in (int, float) or not (0 <= jitter < 0.5):
        raise ValueError(f'parameter for jitter: {jitter} is not in [0, 0.5).')

    if type(seed) != int or seed < 0:
        raise ValueError(f'parameter for seed must be a non-negative integer value.')

    if type(workers) != int or workers < 1:
        raise ValueError(f'parameter for workers must be a positive integer value.')

    return {'max_iterations': max_iterations, 'grad_tol': float(grad_tol), 'restarts': restarts,
            'jitter': float(jitter), 'seed': seed, 'workers': workers}
