# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
RCC-8
-----
Classification of a pair of polygons into one of the eight base relations of the Region Connection Calculus.
"""
import logging
from .polygon import DEFAULT_EPS, InvalidPolygon, Polygon

__all__ = [
    'DC',
    'EC',
    'PO',
    'TPP',
    'NTPP',
    'TPPI',
    'NTPPI',
    'EQ',
    'BASE_RELATIONS',
    'CONVERSE',
    'RELATION_GROUPS',
    'expand_relation',
    'rcc8',
]
log = logging.getLogger(__name__)

DC = 'dc'
EC = 'ec'
PO = 'po'
TPP = 'tpp'
NTPP = 'ntpp'
TPPI = 'tppi'
NTPPI = 'ntppi'
EQ = 'eq'

#: Base relations in vocabulary order
BASE_RELATIONS = (DC, EC, PO, TPP, NTPP, TPPI, NTPPI, EQ)

CONVERSE = {
    DC: DC,
    EC: EC,
    PO: PO,
    TPP: TPPI,
    NTPP: NTPPI,
    TPPI: TPP,
    NTPPI: NTPP,
    EQ: EQ,
}

#: Named disjunctions of base relations between two slices
RELATION_GROUPS = {
    'dr': frozenset({DC, EC}),
    'p': frozenset({TPP, NTPP, EQ}),
    'pp': frozenset({TPP, NTPP}),
    'pi': frozenset({TPPI, NTPPI, EQ}),
    'ppi': frozenset({TPPI, NTPPI}),
    'c': frozenset(BASE_RELATIONS) - {DC},
    'o': frozenset({PO, TPP, NTPP, TPPI, NTPPI, EQ}),
}


def expand_relation(name):
    """ Set of base relations a slice-level relation name stands for.

    Args:
        name (str or iterable): base relation, group name or collection of those

    Returns:
        frozenset: base relations
    """
    if isinstance(name, str):
        if name in CONVERSE:
            return frozenset((name,))
        try:
            return RELATION_GROUPS[name]
        except KeyError as err:
            raise ValueError(
                f'Unknown slice relation {name}, expected one of {BASE_RELATIONS + tuple(RELATION_GROUPS)}'
            ) from err

    result = frozenset()
    for n in name:
        result |= expand_relation(n)
    return result


def rcc8(p, q, eps=None):
    """ Compute the RCC-8 base relation between two polygons.

    Args:
        p (Polygon): first region, anything :meth:`Polygon.create` accepts is converted
        q (Polygon): second region, converted the same way
        eps (Epsilon, optional): Tolerances; Default **Epsilon()**

    Returns:
        str: one of :data:`BASE_RELATIONS`

    Raises:
        InvalidPolygon: an argument is not a valid polygon

    Note:
        Boundary contact is decided with the absolute ``geom_eps`` tolerance,
        equality with the relative ``area_rel_eps`` tolerance on the symmetric difference.
        Interiors only count as overlapping when they still intersect after shrinking both polygons by half a ``geom_eps``.
    """
    eps = eps or DEFAULT_EPS
    try:
        p, q = Polygon.create(p, eps), Polygon.create(q, eps)
    except TypeError as err:
        raise InvalidPolygon(f'rcc8 expects two polygons, got {type(p).__name__} and {type(q).__name__}') from err
    g = eps.geom_eps
    a, b = p.geometry, q.geometry

    if a.distance(b) > g:
        return DC

    tolerance = eps.area_rel_eps * max(p.area, q.area)
    if a.symmetric_difference(b).area < tolerance:
        return EQ

    if not a.buffer(-g / 2).intersects(b.buffer(-g / 2)):
        return EC

    p_in_q = b.buffer(g, join_style='mitre').covers(a)
    q_in_p = a.buffer(g, join_style='mitre').covers(b)
    if p_in_q and q_in_p:
        return EQ

    if p_in_q or q_in_p:
        tangential = a.exterior.distance(b.exterior) <= g
        if p_in_q:
            return TPP if tangential else NTPP
        return TPPI if tangential else NTPPI

    return PO
