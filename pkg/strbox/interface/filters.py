# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
These functions allow to filter out relation atoms depending on certain criteria.
"""
from ..spacetime import MissingSlices, Interval, near

__all__ = [
    'filter_discard',
    'filter_split',
    'program_filters',
    'MinDurationFilter',
    'WindowFilter',
    'RelationFilter',
    'NearFilter',
]


def filter_discard(atoms, filter_fns):
    """ Delete atoms when they do not pass the provided filter functions.

    Args:
        atoms (list): relation atoms
        filter_fns (list or fn): List of filter functions that get applied or single filter function

    Returns:
        list: atoms after filtering

    Warning:
        This function removes atoms from the list you pass.
        Pass a copy if you want to keep the original list.
    """
    if callable(filter_fns):
        filter_fns = [filter_fns]

    for i in range(len(atoms) - 1, -1, -1):
        for fn in filter_fns:
            if not fn(atoms[i]):
                del atoms[i]
                break

    return atoms


def filter_split(atoms, filter_fns):
    """ Split atoms in 2 lists, based upon whether or not they pass the filters.

    Returns:
        (tuple of list): pass,fail atoms
    """
    if callable(filter_fns):
        filter_fns = [filter_fns]

    ok, nok = [], []
    for atom in atoms:
        if all(fn(atom) for fn in filter_fns):
            ok.append(atom)
        else:
            nok.append(atom)
    return ok, nok


class MinDurationFilter:
    """ Checks whether an atom holds for at least a number of time units.

    Args:
        duration (int): minimal ``end - start`` of the atom interval

    Returns:
        Boolean: **True** if the atom interval is long enough
    """

    def __init__(self, duration):
        if duration < 0:
            raise ValueError(f'Duration should be non-negative [{duration}]')
        self.duration = duration

    def __call__(self, atom):
        return atom.interval.duration >= self.duration


class WindowFilter:
    """ Checks whether an atom lies inside a time window.

    Args:
        window (Interval or tuple): ``[start, end]`` of the window
    """

    def __init__(self, window):
        if not isinstance(window, Interval):
            window = Interval(*window)
        self.window = window

    def __call__(self, atom):
        return atom.interval.start in self.window and atom.interval.end in self.window


class RelationFilter:
    """ Checks whether an atom has one of the given relation names.

    Args:
        names (str or list): relation names to keep
    """

    def __init__(self, names):
        if isinstance(names, str):
            names = [names]
        self.names = frozenset(names)

    def __call__(self, atom):
        return atom.name in self.names


class NearFilter:
    """ Checks whether the objects of a binary atom are near each other at a time.

    Args:
        scene (Scene): objects of the atoms
        time (int): time at which the objects should be near
        cfg (DeriveConfig, optional): near threshold; Default **twice the mean slice diameter of the scene**

    Note:
        Unary atoms and pairs without slices around ``time`` do not pass.
    """

    def __init__(self, scene, time, cfg=None):
        self.scene = scene
        self.time = time
        self.cfg = cfg
        self._cache = {}

    def __call__(self, atom):
        if len(atom.args) != 2:
            return False
        key = tuple(sorted(atom.args))
        if key not in self._cache:
            try:
                self._cache[key] = near(self.scene[key[0]], self.scene[key[1]], self.time, self.cfg, self.scene)
            except MissingSlices:
                self._cache[key] = False
        return self._cache[key]


def program_filters(filters, scene=None, cfg=None):
    """ Filter functions for the ``(kind, value)`` query filters of a fact program.

    Args:
        filters (list): ``(kind, value)`` tuples
        scene (Scene, optional): objects, needed for ``near`` filters
        cfg (DeriveConfig, optional): derivation parameters for ``near`` filters

    Returns:
        list: filter functions; relation filters are merged into one that keeps any of the names
    """
    fns = []
    names = []
    for kind, value in filters:
        if kind == 'min_duration':
            fns.append(MinDurationFilter(value))
        elif kind == 'window':
            fns.append(WindowFilter(value))
        elif kind == 'relation':
            names.append(value)
        elif kind == 'near':
            if scene is None:
                raise ValueError('Near filters need a scene')
            fns.append(NearFilter(scene, value, cfg))
        else:
            raise ValueError(f'Unknown filter {kind}')
    if names:
        fns.append(RelationFilter(names))
    return fns
