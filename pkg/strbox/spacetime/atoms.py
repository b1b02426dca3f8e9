# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Relation atoms
--------------
Time intervals and the relation vocabulary of space-time objects.
"""
from dataclasses import dataclass
from ..geometry import Polygon

__all__ = [
    'ASPECTS',
    'TOPOLOGY_UNIVERSAL',
    'TOPOLOGY_EXISTENTIAL',
    'TOPOLOGY_MIXED',
    'TOPOLOGY_EVENTS',
    'TOPOLOGY_CONVERSE',
    'VOCABULARY',
    'Interval',
    'Slice',
    'RelationAtom',
    'arity',
]

ASPECTS = ('topology', 'size', 'movement')

#: Topology names that hold when their slice relation holds at every time
TOPOLOGY_UNIVERSAL = ('dc', 'dr', 'p', 'ntpp', 'eq', 'pi', 'ntppi')

#: Topology names that hold when their slice relation holds at some time
TOPOLOGY_EXISTENTIAL = ('c', 'o', 'po')

#: Topology names of the form "group at every time and member at some time": name -> (universal, existential)
TOPOLOGY_MIXED = {
    'ec': ('dr', 'ec'),
    'pp': ('p', 'pp'),
    'tpp': ('p', 'tpp'),
    'ppi': ('pi', 'ppi'),
    'tppi': ('pi', 'tppi'),
}

TOPOLOGY_EVENTS = ('split', 'merge')

#: Name that holds on the swapped arguments, for the names that have one in the vocabulary
TOPOLOGY_CONVERSE = {
    'dc': 'dc',
    'dr': 'dr',
    'ec': 'ec',
    'po': 'po',
    'c': 'c',
    'o': 'o',
    'eq': 'eq',
    'p': 'pi',
    'pi': 'p',
    'pp': 'ppi',
    'ppi': 'pp',
    'tpp': 'tppi',
    'tppi': 'tpp',
    'ntpp': 'ntppi',
    'ntppi': 'ntpp',
}

#: Relation names per aspect, with their arity
VOCABULARY = {
    'topology': {
        **{n: 2 for n in TOPOLOGY_UNIVERSAL},
        **{n: 2 for n in TOPOLOGY_EXISTENTIAL},
        **{n: 2 for n in TOPOLOGY_MIXED},
        **{n: 2 for n in TOPOLOGY_EVENTS},
    },
    'size': {
        'fixed_size': 1,
        'grows': 1,
        'shrinks': 1,
        'smaller': 2,
        'larger': 2,
        'same_size': 2,
    },
    'movement': {
        'moves': 1,
        'stationary': 1,
        'move_parallel': 2,
        'towards': 2,
        'away': 2,
        'follows': 2,
    },
}


def arity(aspect, name):
    """ Number of objects a relation takes. """
    try:
        return VOCABULARY[aspect][name]
    except KeyError as err:
        if aspect not in VOCABULARY:
            raise ValueError(f'Unknown aspect {aspect}, expected one of {ASPECTS}') from err
        raise ValueError(
            f'Unknown {aspect} relation {name}, expected one of {sorted(VOCABULARY[aspect])}'
        ) from err


@dataclass(frozen=True, order=True)
class Interval:
    """ Closed interval of frame indices. """

    start: int
    end: int

    def __post_init__(self):
        for value in (self.start, self.end):
            if isinstance(value, bool) or int(value) != value:
                raise TypeError(f'Time stamps should be integers [{value!r}]')
        object.__setattr__(self, 'start', int(self.start))
        object.__setattr__(self, 'end', int(self.end))
        if self.start < 0:
            raise ValueError(f'Time stamps should be non-negative [{self.start}]')
        if self.start > self.end:
            raise ValueError(f'Interval start should not exceed its end [{self.start}, {self.end}]')

    def __contains__(self, t):
        return self.start <= t <= self.end

    @property
    def duration(self):
        return self.end - self.start

    def __str__(self):
        return f'[{self.start}, {self.end}]'


@dataclass(frozen=True)
class Slice:
    """ Spatial slice of a space-time object at one time. """

    time: int
    shape: Polygon

    def __post_init__(self):
        if int(self.time) != self.time or self.time < 0:
            raise ValueError(f'Slice time should be a non-negative integer [{self.time!r}]')
        if not isinstance(self.shape, Polygon):
            raise TypeError(f'Slice shape should be a Polygon, got {type(self.shape).__name__}')


@dataclass(frozen=True, order=True)
class RelationAtom:
    """ Named relation between one or two space-time objects over an interval.

    Args:
        aspect (str): topology, size or movement
        name (str): relation name from the aspect vocabulary
        args (tuple): object identifiers
        interval (Interval): time interval
    """

    aspect: str
    name: str
    args: tuple
    interval: Interval

    def __post_init__(self):
        object.__setattr__(self, 'args', tuple(self.args))
        expected = arity(self.aspect, self.name)
        if len(self.args) != expected:
            raise ValueError(
                f'{self.aspect} relation {self.name} takes {expected} object(s), got {len(self.args)}'
            )
        if not isinstance(self.interval, Interval):
            raise TypeError(f'Atom interval should be an Interval, got {type(self.interval).__name__}')

    def __str__(self):
        args = ', '.join(self.args)
        return f'{self.aspect}({self.name}, {args}, time({self.interval.start},{self.interval.end}))'
