

class Constants:
    APP_NAME = "inaf.arcetri.ao.hk_infconv"
    APP_AUTHOR = "INAF Arcetri Adaptive Optics"
    THIS_PACKAGE = 'hk_infconv'

    UOT_SOLVER_CONFIG_SECTION = 'uotSolver'
    FN_SOLVER_CONFIG_SECTION = 'fnSolver'
    BRUTE_FORCE_CONFIG_SECTION = 'bruteForce'
    HARNESS_CONFIG_SECTION = 'harness'

    # must be the same of console_scripts in setup.py
    CLI_PROCESS_NAME = 'hk_infconv'

    UOT_TOLERANCE_ENV_VAR = 'UOT_TOL'

    VERTEX_SENTINEL = -1
    VERTEX_RADIUS_THRESHOLD = 1e-15
    NEGLIGIBLE_MASS = 1e-15
    MASS_BALANCE_TOLERANCE = 1e-12
    METRIC_TOLERANCE = 1e-12

    SIGNIFICANT_DIGITS = 17
