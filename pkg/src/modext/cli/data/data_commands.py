"""
MODEXT Data CLI

Commands acting on single premodular data files and witnesses.
"""
import logging

import click

from modext import data_files
from modext.condensation import condense as condense_data
from modext.condensation import is_anisotropic
from modext.modular_data import (PreModularData, central_charge,
                                 deligne_product, is_modular)
from modext.symmetric_center import classify_symmetric
from modext.utils import filter_res, format_complex, format_matrix
from modext.witness import ExtensionWitness, validate_extension

from ..utils import (CHECK_FAILURE, INPUT_ERROR, echo_json, exit_with,
                     handle_errors, load_data)

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"

logger = logging.getLogger(__name__)

_label_fields = ["label", "dual", "dim", "twist"]
_residual_fields = ["check", "residual", "status"]


def _label_rows(data: PreModularData):
    return [{'label': name,
             'dual': data.labels[data.dual[i]],
             'dim': round(float(data.dims[i]), 6),
             'twist': str(data.twists[i])}
            for i, name in enumerate(data.labels)]


def _residual_table(report) -> str:
    failed = {f.name for f in report.failures}
    rows = [{'check': name, 'residual': f"{value:.3e}",
             'status': 'FAIL' if name in failed else 'ok'}
            for name, value in report.residuals.items()]
    return filter_res(rows, _residual_fields)


def _data_info(data: PreModularData) -> dict:
    report = is_modular(data)
    res = {'name': data.name,
           'rank': data.rank,
           'labels': list(data.labels),
           'dims': [float(d) for d in data.dims],
           'twists': [str(t) for t in data.twists],
           'total_dim': float(data.total_dim),
           'modular': report.is_modular,
           'central_charge': None,
           'center': classify_symmetric(data).to_dict(data),
           'anisotropic': is_anisotropic(data)}
    if report.is_modular:
        c, xi = central_charge(data)
        res['central_charge'] = str(c)
        res['xi'] = format_complex(xi)
    return res


@click.command(short_help="Check modular data or an extension witness.")
@click.argument("path")
@click.option("--json", "as_json", is_flag=True, default=False,
              help="Print a machine readable report.")
@handle_errors
def validate(path, as_json):
    """
    Validate a Data File

    For premodular data at PATH runs the modularity checks (unitarity,
    Verlinde integrality, S squared, the modular relation and the absence of
    transparent labels). For an extension witness checks the embedding, the
    symmetric base, the bulk and the dimension identity. Exits with 1 if any
    check fails.
    """
    value = data_files.load(path)
    if isinstance(value, ExtensionWitness):
        report = validate_extension(value)
        passed = report.passed
        res = report.to_dict()
    else:
        report = is_modular(value)
        passed = report.is_modular
        res = report.to_dict()
    if as_json:
        echo_json(res)
    else:
        click.echo(f"{path}: {'PASS' if passed else 'FAIL'}")
        click.echo(_residual_table(report))
    if not passed:
        exit_with(CHECK_FAILURE)


@click.command(short_help="Summarize modular data.")
@click.argument("path")
@click.option("--json", "as_json", is_flag=True, default=False,
              help="Print a machine readable summary.")
@click.option("-s", "--smatrix", is_flag=True, default=False,
              help="Also print the unnormalized S-matrix.")
@handle_errors
def info(path, as_json, smatrix):
    """
    Show Data Summary

    Prints rank, dimensions, twists, central charge, the classification of
    the transparent labels and whether any invertible boson can be
    condensed. For a witness the bulk is summarized along with its base and
    embedding.
    """
    value = data_files.load(path)
    if isinstance(value, ExtensionWitness):
        data = value.bulk
        res = _data_info(data)
        res['base'] = value.base.name
        res['embedding'] = {value.base.labels[e]: data.labels[x]
                            for e, x in enumerate(value.embedding)}
    else:
        data = value
        res = _data_info(data)
    if as_json:
        echo_json(res)
        return

    center = res['center']
    click.echo(f"Name: {data.name}")
    click.echo(f"Rank: {data.rank}")
    click.echo(f"Total dimension: {res['total_dim']:.6g}")
    click.echo(f"Modular: {'yes' if res['modular'] else 'no'}")
    if res['central_charge'] is not None:
        click.echo(f"Central charge: {res['central_charge']}")
    fermion = f", fermion {center['fermion']}" if center['fermion'] else ""
    click.echo(f"Transparent part: {center['kind']} of order "
               f"{center['group_order']}{fermion}")
    click.echo(f"Anisotropic: {'yes' if res['anisotropic'] else 'no'}")
    if 'embedding' in res:
        pairs = ', '.join(f"{k}->{v}" for k, v in res['embedding'].items())
        click.echo(f"Base: {res['base']} ({pairs})")
    click.echo(filter_res(_label_rows(data), _label_fields))
    if smatrix:
        click.echo("S-matrix:")
        click.echo(format_matrix(data.smatrix, data.labels))


@click.command(short_help="Deligne product of two data files.")
@click.argument("first")
@click.argument("second")
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False),
              help="File to write the product to.")
@handle_errors
def product(first, second, output):
    """
    Deligne Product

    Writes the product of the data in FIRST and SECOND, labelled ``x|y``.
    Either argument may name builtin data (toric-code, semion) instead of a
    file. Witness files contribute their bulk.
    """
    res = deligne_product(load_data(first), load_data(second))
    data_files.dump(res, output)
    click.echo(f"Wrote {res.name} (rank {res.rank}) to {output}")


@click.command(short_help="Condense a group of invertible bosons.")
@click.argument("path")
@click.option("-b", "--bosons", required=True,
              help="Comma separated boson labels, e.g. 'e' or '1|e,e|1'.")
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False),
              help="File to write the condensed data to.")
@handle_errors
def condense(path, bosons, output):
    """
    Condense Bosons

    Condenses the group generated by the listed invertible bosons of the
    modular data at PATH and writes the resulting modular data. Exits with 2
    when the labels do not form a condensable group.
    """
    data = load_data(path)
    labels = [x.strip() for x in bosons.split(',') if x.strip()]
    if not labels:
        click.echo("Error: no boson labels given", err=True)
        exit_with(INPUT_ERROR)
    result = condense_data(data, labels, check_host=True)
    data_files.dump(result.condensed, output)
    click.echo(f"Condensed {result.boson_count} bosons of {data.name}: "
               f"rank {data.rank} -> {result.condensed.rank}, wrote {output}")
