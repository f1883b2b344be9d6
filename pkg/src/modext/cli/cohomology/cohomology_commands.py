"""
MODEXT Cohomology CLI
"""
import click

from modext.cohomology import cocycle_class, h3_classes, restrict_cocycle
from modext.utils import (canonical_orders, filter_res, parse_generators,
                          parse_int_list, subgroup_basis)

from ..utils import echo_json, handle_errors

__author__ = "Carlos del-Castillo-Negrete"
__copyright__ = "Carlos del-Castillo-Negrete"
__license__ = "MIT"

_restriction_fields = ["generator", "order", "restricted class"]


@click.command(short_help="Third cohomology of a small abelian group.")
@click.option("-g", "--group", "group", required=True,
              help="Cyclic orders of G, e.g. '2,2'.")
@click.option("-r", "--restrict", "restrict", default=None,
              help="Generators of a subgroup H to restrict the generating "
                   "cocycles to, e.g. '1,0'.")
@click.option("--json", "as_json", is_flag=True, default=False,
              help="Print a machine readable result.")
@handle_errors
def cohomology(group, restrict, as_json):
    """
    Group Cohomology

    Computes H^3(G, U(1)) from the Smith form of the bar complex and prints
    its invariant factors. With `--restrict` every generating cocycle is
    restricted to H and its class in H^3(H, U(1)) is printed.
    """
    orders = parse_int_list(group)
    classes = h3_classes(orders)
    res = {'group': canonical_orders(orders),
           'invariant_factors': classes.invariant_factors,
           'order': classes.order}
    rows = []
    if restrict is not None:
        gens = parse_generators(restrict)
        h_orders, _ = subgroup_basis(orders, gens)
        images = [restrict_cocycle(rep, gens) for rep in classes.representatives]
        sub = h3_classes(h_orders)
        res['restriction'] = {
            'subgroup': list(h_orders),
            'invariant_factors': sub.invariant_factors,
            'images': [list(cocycle_class(x)) for x in images]}
        for i, (d, image) in enumerate(zip(classes.torsion_orders,
                                           res['restriction']['images'])):
            rows.append({'generator': i, 'order': d,
                         'restricted class': image})
    if as_json:
        echo_json(res)
        return
    click.echo(f"H^3({' x '.join(f'Z{n}' for n in res['group']) or '1'}, U(1))"
               f" = {' x '.join(f'Z{n}' for n in res['invariant_factors']) or '0'}")
    click.echo(f"Order: {res['order']}")
    if restrict is not None:
        sub = res['restriction']
        click.echo(f"Restriction to H = {sub['subgroup']} with "
                   f"H^3(H, U(1)) factors {sub['invariant_factors']}:")
        click.echo(filter_res(rows, _restriction_fields))
