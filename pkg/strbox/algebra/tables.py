# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Relation tables
---------------
The RCC-8 composition table and the mapping between the topology vocabulary and the eight base relations.

Networks reason over histories. A pair of histories stands in exactly one base relation
(see :func:`strbox.spacetime.history_relation`), and every topology name corresponds to a set of those.
"""
from ..geometry import BASE_RELATIONS, CONVERSE, DC, EC, EQ, NTPP, NTPPI, PO, TPP, TPPI
from ..spacetime import TOPOLOGY_CONVERSE, VOCABULARY

__all__ = [
    'COMPOSITION',
    'TOPOLOGY_EXPANSION',
    'IMPLIED',
    'FACT_CONVERSE',
    'compose',
    'expand',
    'implied_by',
    'converse_name',
    'is_topology',
]

_ALL = frozenset(BASE_RELATIONS)
_DR_PO_PP = frozenset({DC, EC, PO, TPP, NTPP})
_DR_PO_PPI = frozenset({DC, EC, PO, TPPI, NTPPI})
_PO_PP = frozenset({PO, TPP, NTPP})
_PO_PPI = frozenset({PO, TPPI, NTPPI})

_TABLE = {
    DC: {
        DC: _ALL,
        EC: _DR_PO_PP,
        PO: _DR_PO_PP,
        TPP: _DR_PO_PP,
        NTPP: _DR_PO_PP,
        TPPI: {DC},
        NTPPI: {DC},
    },
    EC: {
        DC: _DR_PO_PPI,
        EC: {DC, EC, PO, TPP, TPPI, EQ},
        PO: _DR_PO_PP,
        TPP: {EC, PO, TPP, NTPP},
        NTPP: _PO_PP,
        TPPI: {DC, EC},
        NTPPI: {DC},
    },
    PO: {
        DC: _DR_PO_PPI,
        EC: _DR_PO_PPI,
        PO: _ALL,
        TPP: _PO_PP,
        NTPP: _PO_PP,
        TPPI: _DR_PO_PPI,
        NTPPI: _DR_PO_PPI,
    },
    TPP: {
        DC: {DC},
        EC: {DC, EC},
        PO: _DR_PO_PP,
        TPP: {TPP, NTPP},
        NTPP: {NTPP},
        TPPI: {DC, EC, PO, TPP, TPPI, EQ},
        NTPPI: _DR_PO_PPI,
    },
    NTPP: {
        DC: {DC},
        EC: {DC},
        PO: _DR_PO_PP,
        TPP: {NTPP},
        NTPP: {NTPP},
        TPPI: _DR_PO_PP,
        NTPPI: _ALL,
    },
    TPPI: {
        DC: _DR_PO_PPI,
        EC: {EC, PO, TPPI, NTPPI},
        PO: _PO_PPI,
        TPP: {PO, TPP, TPPI, EQ},
        NTPP: _PO_PP,
        TPPI: {TPPI, NTPPI},
        NTPPI: {NTPPI},
    },
    NTPPI: {
        DC: _DR_PO_PPI,
        EC: _PO_PPI,
        PO: _PO_PPI,
        TPP: _PO_PPI,
        NTPP: {PO, TPP, NTPP, TPPI, NTPPI, EQ},
        TPPI: {NTPPI},
        NTPPI: {NTPPI},
    },
}

#: ``COMPOSITION[r1, r2]`` holds the possible ``r(a, c)`` given ``r1(a, b)`` and ``r2(b, c)``
COMPOSITION = {}
for _r1 in BASE_RELATIONS:
    for _r2 in BASE_RELATIONS:
        if _r1 == EQ:
            COMPOSITION[_r1, _r2] = frozenset((_r2,))
        elif _r2 == EQ:
            COMPOSITION[_r1, _r2] = frozenset((_r1,))
        else:
            COMPOSITION[_r1, _r2] = frozenset(_TABLE[_r1][_r2])

#: Base relations between two histories that are compatible with a topology name
TOPOLOGY_EXPANSION = {
    **{base: frozenset((base,)) for base in BASE_RELATIONS},
    'dr': frozenset({DC, EC}),
    'p': frozenset({TPP, NTPP, EQ}),
    'pp': frozenset({TPP, NTPP}),
    'pi': frozenset({TPPI, NTPPI, EQ}),
    'ppi': frozenset({TPPI, NTPPI}),
    'c': _ALL - {DC},
    'o': _ALL - {DC, EC},
    'split': frozenset({PO}),
    'merge': frozenset({PO}),
}

#: Topology names that certainly hold between two histories in a base relation
IMPLIED = {
    DC: frozenset({'dc', 'dr'}),
    EC: frozenset({'ec', 'dr', 'c'}),
    PO: frozenset({'c', 'o'}),
    TPP: frozenset({'p', 'pp', 'c', 'o'}),
    NTPP: frozenset({'ntpp', 'p', 'pp', 'c', 'o'}),
    TPPI: frozenset({'pi', 'ppi', 'c', 'o'}),
    NTPPI: frozenset({'ntppi', 'pi', 'ppi', 'c', 'o'}),
    EQ: frozenset({'eq', 'p', 'pi', 'c', 'o'}),
}

#: Converse names of the non-topology binary vocabulary
FACT_CONVERSE = {
    'smaller': 'larger',
    'larger': 'smaller',
    'same_size': 'same_size',
    'move_parallel': 'move_parallel',
}


def is_topology(name):
    return name in VOCABULARY['topology']


def expand(names):
    """ Union of the base relations compatible with one or more topology names. """
    if isinstance(names, str):
        names = (names,)
    result = frozenset()
    for name in names:
        try:
            result |= TOPOLOGY_EXPANSION[name]
        except KeyError as err:
            raise ValueError(f'{name} is not a topology relation') from err
    return result


def compose(first, second):
    """ Composition of two sets of base relations. """
    result = frozenset()
    for r1 in first:
        for r2 in second:
            result |= COMPOSITION[r1, r2]
    return result


def implied_by(bases):
    """ Topology names that hold for every base relation in ``bases``. """
    bases = list(bases)
    if len(bases) == 0:
        return frozenset()
    result = IMPLIED[bases[0]]
    for base in bases[1:]:
        result &= IMPLIED[base]
    return result


def converse_name(name):
    """ Name holding on the swapped arguments, or **None** when the vocabulary has no such name. """
    if name in CONVERSE and name not in TOPOLOGY_CONVERSE:
        return CONVERSE[name]
    if name in TOPOLOGY_CONVERSE:
        return TOPOLOGY_CONVERSE[name]
    return FACT_CONVERSE.get(name)
