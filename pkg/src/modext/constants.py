"""
MODEXT Constants

"""

import os

# Dir where to store modext logs and generated catalogs
MODEXT_DIR = os.path.join(os.path.expanduser("~"), '.modext')

# Absolute tolerance for S-matrix and unitarity comparisons
NUMERIC_TOL = 1e-9

# Tolerance when rounding Verlinde coefficients, orders and central charges
INTEGRAL_TOL = 1e-6

# Central charges are snapped to rationals with at most this denominator
MAX_CENTRAL_DENOMINATOR = 16

# Base order of the roots of unity tried when completing split S entries
PHASE_GRID_ORDER = 16

# Upper bound on candidate S-matrix completions examined by condense
MAX_SEARCH_CANDIDATES = 1 << 18

# Exhaustive pointed extension enumeration bound on |A|
MAX_ENUMERATION_BASE = 4

# Largest n accepted by the twisted double constructor
MAX_TWISTED_DOUBLE = 6

# Largest group order for which h3_classes builds the full Smith form
MAX_COHOMOLOGY_ORDER = 4

# Largest group order for cocycle class lookup
MAX_CLASS_ORDER = 6

# Data file format tags
PREMODULAR_FORMAT = "premodular-data/v1"
WITNESS_FORMAT = "extension-witness/v1"

# Default log level for the cli, overridden by MODEXT_LOG_LEVEL
DEFAULT_LOG_LEVEL = os.environ.get("MODEXT_LOG_LEVEL", "WARNING")


def make_modext_dir():
    """
    Make Local MODEXT Directory

    Creates the local directory used for logs and generated catalogs if it
    does not exist already.

    Returns
    -------
    path : str
        Path to the modext directory.
    """
    if not os.path.exists(MODEXT_DIR):
        os.makedirs(MODEXT_DIR)
    return MODEXT_DIR
