_ENV_PREFIX = "SPLASH"

ENV_OUTPUT_DIR = f"{_ENV_PREFIX}_OUTPUT_DIR"
ENV_THREADS = f"{_ENV_PREFIX}_THREADS"
ENV_TOL = f"{_ENV_PREFIX}_TOL"
ENV_STENCIL_ORDER = f"{_ENV_PREFIX}_STENCIL_ORDER"
