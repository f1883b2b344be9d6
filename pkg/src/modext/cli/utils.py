"""
MODEXT CLI Utilities

Logging setup, exit codes and loading helpers shared by the command groups.
"""
import functools
import json
import logging
import os

import click
from pythonjsonlogger import jsonlogger

from modext import data_files
from modext.constructors import semion, toric_code
from modext.exceptions import (ClosureError, ModextError,
                               UnderdeterminedCondensationError)
from modext.modular_data import PreModularData
from modext.witness import ExtensionWitness

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"

logger = logging.getLogger(__name__)

# Exit codes
PASS = 0
CHECK_FAILURE = 1
INPUT_ERROR = 2

_log_format = '%(asctime)s %(name)s - %(levelname)s:%(message)s'

# Modular data that may be named on the command line instead of a file
BUILTIN_DATA = {
    "toric-code": toric_code,
    "semion": semion,
}


def configure_logging(level: str, log_file: str = None):
    """
    Attach handlers to the package logger.

    Human readable records go to stderr; with ``log_file`` set, JSON records
    are also written there.
    """
    pkg_logger = logging.getLogger('modext')
    pkg_logger.setLevel(level.upper())
    for handler in list(pkg_logger.handlers):
        pkg_logger.removeHandler(handler)
        handler.close()
    stream = logging.StreamHandler()
    stream.setFormatter(logging.Formatter('%(name)s - %(levelname)s:%(message)s'))
    pkg_logger.addHandler(stream)
    if log_file is not None:
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(jsonlogger.JsonFormatter(_log_format))
        pkg_logger.addHandler(file_handler)


def exit_with(code: int):
    click.get_current_context().exit(code)


def handle_errors(fun):
    """
    Map library errors to exit codes.

    Stacks escaping a list and unresolvable condensations are check
    failures; everything else raised by the library is an input error.
    """
    @functools.wraps(fun)
    def wrapper(*args, **kwargs):
        try:
            return fun(*args, **kwargs)
        except (ClosureError, UnderdeterminedCondensationError) as e:
            click.echo(str(e), err=True)
            exit_with(CHECK_FAILURE)
        except (ModextError, ValueError, KeyError) as e:
            click.echo(f"Error: {e}", err=True)
            exit_with(INPUT_ERROR)
    return wrapper


def load_data(path: str) -> PreModularData:
    """Premodular data from a file or a builtin name."""
    if not os.path.exists(path) and path in BUILTIN_DATA:
        return BUILTIN_DATA[path]()
    value = data_files.load(path)
    if isinstance(value, ExtensionWitness):
        return value.bulk
    return value


def load_witness(path: str) -> ExtensionWitness:
    value = data_files.load(path)
    if not isinstance(value, ExtensionWitness):
        logger.error(f"{path} holds premodular data, not an extension witness")
        raise ModextError(f"{path} is not an extension witness file")
    return value


def load_witness_dir(path: str):
    """Witnesses of a directory with their file names, in name order."""
    values = data_files.load_dir(path)
    names = sorted(f for f in os.listdir(path) if f.endswith('.json'))
    for name, v in zip(names, values):
        if not isinstance(v, ExtensionWitness):
            logger.error(f"{name} in {path} is not an extension witness")
            raise ModextError(f"{os.path.join(path, name)} is not an "
                              "extension witness file")
    if not values:
        logger.error(f"No data files in {path}")
        raise ModextError(f"{path} holds no data files")
    return names, values


def echo_json(res: dict):
    click.echo(json.dumps(res, indent=1))
