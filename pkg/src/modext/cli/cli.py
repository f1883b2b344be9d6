"""
MODEXT CLI

CLI for building, checking and combining modular data and extensions.
"""
import click

from modext.constants import DEFAULT_LOG_LEVEL

from .cohomology import cohomology_commands as cohomology_cli
from .data import data_commands as data_cli
from .extensions import extension_commands as extensions_cli
from .utils import configure_logging

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"

_log_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class NaturalOrderGroup(click.Group):
    """
    Class For custom ordering of commands in help output
    """
    def list_commands(self, ctx):
        return self.commands.keys()


@click.group(cls=NaturalOrderGroup)
@click.option("--log-level", envvar="MODEXT_LOG_LEVEL",
              type=click.Choice(_log_levels, case_sensitive=False),
              default=DEFAULT_LOG_LEVEL, show_default=True,
              help="Level of log records written to stderr.")
@click.option("--log-file", default=None, type=click.Path(dir_okay=False),
              help="Also write JSON log records to this file.")
def cli(log_level, log_file):
    """
    Modular Data Workbench

    Check premodular data and modular extensions, build the catalogs of
    extensions of sVect and Rep(Z_n), stack and condense, and compute the
    third cohomology of small abelian groups. Commands exit with 0 when
    every check passes, 1 on a failed check and 2 on bad input.
    """
    configure_logging(log_level, log_file)


cli.add_command(data_cli.validate)
cli.add_command(data_cli.info)
cli.add_command(data_cli.product)
cli.add_command(data_cli.condense)
cli.add_command(extensions_cli.stack)
cli.add_command(extensions_cli.catalog)
cli.add_command(extensions_cli.identify)
cli.add_command(extensions_cli.group_table)
cli.add_command(extensions_cli.torsor_check)
cli.add_command(extensions_cli.break_symmetry)
cli.add_command(cohomology_cli.cohomology)
