"""
MODEXT Extensions CLI

Commands on modular extensions: stacking, catalogs, identification, group
tables, the torsor check and symmetry breaking.
"""
import logging
import os

import click

from modext import data_files
from modext.condensation import break_symmetry as break_witness
from modext.constants import MAX_TWISTED_DOUBLE, make_modext_dir
from modext.constructors import mext_svect_catalog, twisted_double_cyclic
from modext.extensions import (extension_times, group_table as build_table,
                               identify as find_entry, stack as stack_witnesses,
                               torsor_check as check_torsor)
from modext.utils import filter_res, parse_generators

from ..utils import (CHECK_FAILURE, INPUT_ERROR, echo_json, exit_with,
                     handle_errors, load_data, load_witness,
                     load_witness_dir)

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"

logger = logging.getLogger(__name__)

_catalog_fields = ["file", "name", "rank"]


@click.command(short_help="Stack two extensions of the same base.")
@click.argument("first")
@click.argument("second")
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False),
              help="File to write the stacked witness to.")
@handle_errors
def stack(first, second, output):
    """
    Stack Extensions

    Condenses the diagonal copy of the base in the product of the bulks of
    the witnesses FIRST and SECOND and writes the resulting witness. Exits
    with 2 if the bases differ.
    """
    res = stack_witnesses(load_witness(first), load_witness(second))
    data_files.dump(res, output)
    click.echo(f"Wrote {res.name} (rank {res.bulk.rank}) to {output}")


@click.command(short_help="Write a catalog of extensions.")
@click.argument("kind", type=click.Choice(["svect", "repzn"],
                                          case_sensitive=False))
@click.argument("n", type=int, required=False)
@click.option("-d", "--dir", "out_dir", default=None,
              help="Directory for the witness files. Defaults to a "
                   "directory under ~/.modext/catalogs.")
@click.option("-t", "--times", default=None,
              help="Modular data file (or toric-code, semion) to multiply "
                   "every bulk by.")
@handle_errors
def catalog(kind, n, out_dir, times):
    """
    Write Extension Catalog

    `svect` writes the sixteen extensions of sVect, entry k having central
    charge k/2. `repzn N` writes the N twisted doubles of Z_N as extensions
    of Rep(Z_N), entry k carrying the cocycle class k. With `--times D`
    every bulk is multiplied by D, giving extensions of the product with
    the base as the same symmetric category.
    """
    kind = kind.lower()
    if kind == "svect":
        entries = mext_svect_catalog()
        stem = "svect"
    else:
        if n is None or not 1 <= n <= MAX_TWISTED_DOUBLE:
            click.echo(f"Error: repzn needs N in [1, {MAX_TWISTED_DOUBLE}]",
                       err=True)
            exit_with(INPUT_ERROR)
        entries = [twisted_double_cyclic(n, k) for k in range(n)]
        stem = f"repz{n}"
    if times is not None:
        other = load_data(times)
        entries = [extension_times(w, other) for w in entries]
        stem = f"{stem}_times_{other.name or 'D'}"
    if out_dir is None:
        out_dir = os.path.join(make_modext_dir(), 'catalogs', stem)
    os.makedirs(out_dir, exist_ok=True)

    rows = []
    for k, w in enumerate(entries):
        fname = f"{stem}_{k:02d}.json"
        data_files.dump(w, os.path.join(out_dir, fname))
        rows.append({'file': fname, 'name': w.name, 'rank': w.bulk.rank})
    logger.info(f"Wrote {len(entries)} witnesses to {out_dir}")
    click.echo(f"Catalog written to {out_dir}:")
    click.echo(filter_res(rows, _catalog_fields))


@click.command(short_help="Find a witness in a catalog directory.")
@click.argument("path")
@click.option("-a", "--against", required=True,
              type=click.Path(file_okay=False),
              help="Directory of witness files to search.")
@click.option("--json", "as_json", is_flag=True, default=False,
              help="Print a machine readable result.")
@handle_errors
def identify(path, against, as_json):
    """
    Identify Extension

    Looks for an entry of the AGAINST directory equivalent to the witness
    at PATH and prints it with the permutation of bulk labels realizing the
    equivalence. Exits with 1 if there is none.
    """
    w = load_witness(path)
    names, entries = load_witness_dir(against)
    match = find_entry(w, entries)
    if match is None:
        res = {'match': None}
    else:
        idx, perm = match
        target = entries[idx].bulk
        res = {'match': idx, 'file': names[idx], 'name': entries[idx].name,
               'permutation': {w.bulk.labels[i]: target.labels[j]
                               for i, j in enumerate(perm)}}
    if as_json:
        echo_json(res)
    elif match is None:
        click.echo(f"{path}: no equivalent entry in {against}")
    else:
        click.echo(f"{path}: entry {res['match']} ({res['file']}, "
                   f"{res['name']})")
        pairs = ', '.join(f"{k}->{v}" for k, v in res['permutation'].items())
        click.echo(f"Permutation: {pairs}")
    if match is None:
        exit_with(CHECK_FAILURE)


@click.command(short_help="Cayley table of a catalog under stacking.")
@click.argument("path", type=click.Path(file_okay=False))
@click.option("--no-assoc", is_flag=True, default=False,
              help="Skip the associativity check.")
@click.option("--json", "as_json", is_flag=True, default=False,
              help="Print a machine readable table.")
@handle_errors
def group_table(path, no_assoc, as_json):
    """
    Stacking Group Table

    Stacks every ordered pair of witnesses in PATH, identifies the result
    in the same directory and prints the table, the identity and the
    invariant factors of the group. Exits with 1 if a stack leaves the
    directory or the table is not a commutative, associative group.
    """
    names, entries = load_witness_dir(path)
    table = build_table(entries, check_associativity=not no_assoc)
    res = table.to_dict()
    res['files'] = names
    if as_json:
        echo_json(res)
    else:
        n = table.order
        cols = [str(j) for j in range(n)]
        rows = []
        for i in range(n):
            row = {'': str(i)}
            row.update({str(j): table.table[i][j] for j in range(n)})
            rows.append(row)
        click.echo(filter_res(rows, [''] + cols))
        click.echo(f"Identity: {table.identity} ({names[table.identity]})")
        click.echo(f"Invariant factors: {table.invariant_factors}")
        click.echo(f"Commutative: {table.commutative}  "
                   f"Associative: {table.associative}")
    if not (table.commutative and table.associative):
        exit_with(CHECK_FAILURE)


@click.command(short_help="Check the torsor action on extensions of C.")
@click.option("--extC", "ext_c", required=True,
              type=click.Path(file_okay=False),
              help="Directory of extensions of C.")
@click.option("--extE", "ext_e", required=True,
              type=click.Path(file_okay=False),
              help="Directory of extensions of the base E.")
@click.option("--strict", is_flag=True, default=False,
              help="Stop at the first stack leaving the C list.")
@click.option("--json", "as_json", is_flag=True, default=False,
              help="Print a machine readable report.")
@handle_errors
def torsor_check(ext_c, ext_e, strict, as_json):
    """
    Torsor Check

    Stacks every extension of C in EXTC with every extension of E in EXTE
    and checks that this is a free and transitive action. Exits with 1 if a
    stack escapes the C list or the action is not free and transitive.
    """
    _, c_entries = load_witness_dir(ext_c)
    _, e_entries = load_witness_dir(ext_e)
    report = check_torsor(c_entries, e_entries, strict=strict)
    if as_json:
        echo_json(report.to_dict())
    else:
        click.echo(f"Identity of E: {report.identity}")
        click.echo(f"Escaping cells: {len(report.escapes)}")
        click.echo(f"Free: {report.free}  Transitive: {report.transitive}")
        click.echo("PASS" if report.passed else "FAIL")
    if not report.passed:
        exit_with(CHECK_FAILURE)


@click.command(short_help="Break an extension of Rep(A) to a subgroup.")
@click.argument("path")
@click.option("-s", "--subgroup", required=True,
              help="Generators of H in the coordinates of A, e.g. '2' or "
                   "'1,0;0,1'.")
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False),
              help="File to write the broken witness to.")
@handle_errors
def break_symmetry(path, subgroup, output):
    """
    Break Symmetry

    Condenses the characters of A trivial on the subgroup H and writes the
    resulting extension of Rep(H).
    """
    w = load_witness(path)
    res = break_witness(w, parse_generators(subgroup))
    data_files.dump(res, output)
    click.echo(f"Wrote {res.name} (rank {res.bulk.rank}) to {output}")
