# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Derivation
----------
Qualitative relations of space-time objects, derived from their slices over an interval.
Time is discrete: a relation over an interval is evaluated on the frames of that interval,
interpolating objects that have no slice at a frame.
"""
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional
import numpy as np
from scipy.spatial.distance import cdist, pdist
from ..geometry import DC, EQ, NTPP, NTPPI, DEFAULT_EPS, Epsilon
from ..geometry import RELATION_GROUPS, expand_relation, rcc8
from .atoms import *
from .stobject import MissingSlices, Scene, common_frames

__all__ = [
    'DeriveConfig',
    'derive_topology',
    'derive_size',
    'derive_movement',
    'derive_scene',
    'near',
    'history_relation',
    'atom_holds',
    'binary_relations',
    'unary_relations',
]
log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DeriveConfig:
    """ Parameters of relation derivation.

    Args:
        follows_max_gap (int, optional): Largest number of frames between a leading and a following position; Default **5**
        near_threshold (float, optional): Centroid distance below which objects are near; Default **twice the mean slice diameter**
        eps (Epsilon, optional): Tolerances; Default **Epsilon()**
        segments (bool, optional): Report relations on the maximal sub-intervals where they hold; Default **False**
        workers (int, optional): Number of threads for scene derivation; Default **executor default**
    """

    follows_max_gap: int = 5
    near_threshold: Optional[float] = None
    eps: Epsilon = DEFAULT_EPS
    segments: bool = False
    workers: Optional[int] = None

    def __post_init__(self):
        if int(self.follows_max_gap) != self.follows_max_gap or self.follows_max_gap < 1:
            raise ValueError(f'follows_max_gap should be a positive integer [{self.follows_max_gap}]')
        if self.near_threshold is not None and not self.near_threshold > 0:
            raise ValueError(f'near_threshold should be strictly positive [{self.near_threshold}]')
        if self.workers is not None and self.workers < 1:
            raise ValueError(f'workers should be at least 1 [{self.workers}]')

    def resolved(self, scene):
        """ Copy with the data-driven ``near_threshold`` filled in for a scene. """
        if self.near_threshold is not None:
            return self
        return replace(self, near_threshold=2 * scene.mean_diameter)


# Names reported on the directive interval only, also in segment mode
_WHOLE_INTERVAL = frozenset(TOPOLOGY_EXISTENTIAL + TOPOLOGY_EVENTS)


def _maximal_segments(n, holds):
    """ Greedy maximal runs ``(i, j)`` of at least two frames, extending each start as far as the relation keeps holding. """
    segments = []
    last_end = -1
    for i in range(n - 1):
        if not holds(i, i + 1):
            continue
        j = i + 1
        while j + 1 < n and holds(i, j + 1):
            j += 1
        if j > last_end:
            segments.append((i, j))
            last_end = j
    return segments


def _report(aspect, name, args, frames, interval, holds, cfg):
    n = len(frames)
    if not cfg.segments or name in _WHOLE_INTERVAL or n < 2:
        if holds(0, n - 1):
            return [RelationAtom(aspect, name, args, interval)]
        return []

    return [
        RelationAtom(aspect, name, args, Interval(frames[i], frames[j]))
        for i, j in _maximal_segments(n, holds)
    ]


def _topology_holds(name, rels):
    if name in TOPOLOGY_UNIVERSAL:
        group = expand_relation(name)
        return all(r in group for r in rels)
    if name in TOPOLOGY_EXISTENTIAL:
        group = expand_relation(name)
        return any(r in group for r in rels)
    if name in TOPOLOGY_MIXED:
        always, sometimes = (expand_relation(n) for n in TOPOLOGY_MIXED[name])
        return all(r in always for r in rels) and any(r in sometimes for r in rels)
    if name == 'split':
        return rels[0] in RELATION_GROUPS['p'] and rels[-1] == DC
    if name == 'merge':
        return rels[0] == DC and rels[-1] in RELATION_GROUPS['p']
    raise ValueError(f'Unknown topology relation {name}')


def _fixed_size(areas, eps):
    return areas.max() - areas.min() <= eps.area_rel_eps * areas.max()


def _grows(areas, eps):
    if _fixed_size(areas, eps):
        return False
    tolerance = eps.area_rel_eps * areas.max()
    return bool(np.all(areas >= np.maximum.accumulate(areas) - tolerance))


def _moves(centroids, eps):
    return len(centroids) > 1 and pdist(centroids).max() > eps.geom_eps


def _parallel(c1, c2, eps):
    if not _moves(c1, eps):
        return False
    return pdist(c2 - c1).max() <= eps.geom_eps


def _towards(c1, c2, eps):
    if not _moves(c1, eps) or _parallel(c1, c2, eps):
        return False
    dist = np.linalg.norm(c1 - c2, axis=1)
    return bool(np.all(dist <= np.minimum.accumulate(dist) + eps.geom_eps))


def _follows(c1, c2, times, alpha, eps):
    if len(times) < 2:
        return False
    g = eps.geom_eps
    dist = cdist(c1, c2)
    own = np.diag(dist)[:, None]
    gap = times[None, :] - times[:, None]

    # leader at t is left behind and the follower closes in on where the leader was
    closer = own > dist.T + g
    farther = own < dist - g
    ok = closer & farther & (gap > 0) & (gap <= alpha)
    return bool(np.all(ok.any(axis=0)[1:]))


class _Track:
    """ Per-frame data of one object over a list of frames. """

    def __init__(self, obj, frames):
        self.id = obj.id
        self.shapes = [obj.shape_at(t) for t in frames]
        self.centroids = np.array([tuple(s.centroid) for s in self.shapes])
        self.areas = np.array([s.area for s in self.shapes])


def _frames(objects, interval, times):
    if interval is None:
        start = max(o.span[0] for o in objects)
        end = min(o.span[1] for o in objects)
        if start > end:
            raise MissingSlices(f'Objects {[o.id for o in objects]} have no common time span')
        interval = Interval(start, end)
    return interval, common_frames(objects, interval, times)


def _topology_atoms(ta, tb, frames, interval, cfg):
    rels = [rcc8(p, q, cfg.eps) for p, q in zip(ta.shapes, tb.shapes)]
    atoms = []
    for name in VOCABULARY['topology']:
        holds = lambda i, j, name=name: _topology_holds(name, rels[i : j + 1])  # noqa: E731
        atoms.extend(_report('topology', name, (ta.id, tb.id), frames, interval, holds, cfg))
    return atoms


def _size_unary_atoms(track, frames, interval, cfg):
    eps = cfg.eps
    areas = track.areas
    tests = {
        'fixed_size': lambda i, j: _fixed_size(areas[i : j + 1], eps),
        'grows': lambda i, j: _grows(areas[i : j + 1], eps),
        'shrinks': lambda i, j: _grows(areas[i : j + 1][::-1], eps),
    }
    atoms = []
    for name, holds in tests.items():
        atoms.extend(_report('size', name, (track.id,), frames, interval, holds, cfg))
    return atoms


def _size_binary_atoms(ta, tb, frames, interval, cfg):
    a, b = ta.areas, tb.areas
    tolerance = cfg.eps.area_rel_eps * np.maximum(a, b)
    tests = {
        'smaller': lambda i, j: bool(np.all(a[i : j + 1] < b[i : j + 1] - tolerance[i : j + 1])),
        'larger': lambda i, j: bool(np.all(a[i : j + 1] > b[i : j + 1] + tolerance[i : j + 1])),
        'same_size': lambda i, j: bool(
            np.all(np.abs(a[i : j + 1] - b[i : j + 1]) <= tolerance[i : j + 1])
        ),
    }
    atoms = []
    for name, holds in tests.items():
        atoms.extend(_report('size', name, (ta.id, tb.id), frames, interval, holds, cfg))
    return atoms


def _movement_unary_atoms(track, frames, interval, cfg):
    c = track.centroids
    tests = {
        'moves': lambda i, j: _moves(c[i : j + 1], cfg.eps),
        'stationary': lambda i, j: not _moves(c[i : j + 1], cfg.eps),
    }
    atoms = []
    for name, holds in tests.items():
        atoms.extend(_report('movement', name, (track.id,), frames, interval, holds, cfg))
    return atoms


def _movement_binary_atoms(ta, tb, frames, interval, cfg):
    eps = cfg.eps
    c1, c2 = ta.centroids, tb.centroids
    times = np.asarray(frames)
    tests = {
        'move_parallel': lambda i, j: _parallel(c1[i : j + 1], c2[i : j + 1], eps),
        'towards': lambda i, j: _towards(c1[i : j + 1], c2[i : j + 1], eps),
        'away': lambda i, j: _towards(c1[i : j + 1][::-1], c2[i : j + 1][::-1], eps),
        'follows': lambda i, j: _follows(
            c1[i : j + 1], c2[i : j + 1], times[i : j + 1], cfg.follows_max_gap, eps
        ),
    }
    atoms = []
    for name, holds in tests.items():
        atoms.extend(_report('movement', name, (ta.id, tb.id), frames, interval, holds, cfg))
    return atoms


def derive_topology(a, b, interval=None, cfg=None, times=None):
    """ Derive the topology relations between two objects.

    Args:
        a (STObject): first object
        b (STObject): second object
        interval (Interval, optional): time interval; Default **common time span of both objects**
        cfg (DeriveConfig, optional): derivation parameters; Default **DeriveConfig()**
        times (iterable, optional): candidate frames; Default **slice times of both objects**

    Returns:
        set: :class:`RelationAtom` objects with arguments ``(a, b)``

    Note:
        Converse names (``pi``, ``ppi``, ``tppi``, ``ntppi``) are reported as well,
        so there is no need to derive ``(b, a)`` separately.
    """
    cfg = cfg or DeriveConfig()
    interval, frames = _frames((a, b), interval, times)
    ta, tb = _Track(a, frames), _Track(b, frames)
    return set(_topology_atoms(ta, tb, frames, interval, cfg))


def derive_size(a, b=None, interval=None, cfg=None, times=None):
    """ Derive the size relations of one object, or of a pair of objects.

    Args:
        a (STObject): first object
        b (STObject, optional): second object; Default **only unary relations of a**
        interval (Interval, optional): time interval; Default **common time span**
        cfg (DeriveConfig, optional): derivation parameters; Default **DeriveConfig()**
        times (iterable, optional): candidate frames; Default **slice times of the objects**

    Returns:
        set: :class:`RelationAtom` objects
    """
    cfg = cfg or DeriveConfig()
    objects = (a,) if b is None else (a, b)
    interval, frames = _frames(objects, interval, times)
    tracks = [_Track(o, frames) for o in objects]

    atoms = []
    for track in tracks:
        atoms.extend(_size_unary_atoms(track, frames, interval, cfg))
    if b is not None:
        atoms.extend(_size_binary_atoms(*tracks, frames, interval, cfg))
    return set(atoms)


def derive_movement(a, b=None, interval=None, cfg=None, times=None):
    """ Derive the movement relations of one object, or of a pair of objects.

    Args:
        a (STObject): first object
        b (STObject, optional): second object; Default **only unary relations of a**
        interval (Interval, optional): time interval; Default **common time span**
        cfg (DeriveConfig, optional): derivation parameters; Default **DeriveConfig()**
        times (iterable, optional): candidate frames; Default **slice times of the objects**

    Returns:
        set: :class:`RelationAtom` objects

    Note:
        Binary relations are derived in both directions,
        eg. ``towards(a, b)`` and ``towards(b, a)`` are both checked.
    """
    cfg = cfg or DeriveConfig()
    objects = (a,) if b is None else (a, b)
    interval, frames = _frames(objects, interval, times)
    tracks = [_Track(o, frames) for o in objects]

    atoms = []
    for track in tracks:
        atoms.extend(_movement_unary_atoms(track, frames, interval, cfg))
    if b is not None:
        ta, tb = tracks
        atoms.extend(_movement_binary_atoms(ta, tb, frames, interval, cfg))
        atoms.extend(_movement_binary_atoms(tb, ta, frames, interval, cfg))
    return set(atoms)


_DERIVERS = {
    'topology': lambda a, b, interval, cfg, times: derive_topology(a, b, interval, cfg, times)
    if b is not None
    else set(),
    'size': derive_size,
    'movement': derive_movement,
}


def near(a, b, t, cfg=None, scene=None):
    """ Whether the centroids of two objects are closer than the near threshold at time ``t``.

    Args:
        a (STObject): first object
        b (STObject): second object
        t (int): time
        cfg (DeriveConfig, optional): derivation parameters; Default **DeriveConfig()**
        scene (Scene, optional): scene that resolves a missing ``near_threshold``; Default **a scene of both objects**

    Note:
        The threshold comes from :meth:`DeriveConfig.resolved`,
        so pass the scene of the objects to get the same answer as scene-wide filters.
    """
    cfg = cfg or DeriveConfig()
    if cfg.near_threshold is None:
        cfg = cfg.resolved(scene if scene is not None else Scene([a, b]))
    ca, cb = np.array(a.centroid_at(t)), np.array(b.centroid_at(t))
    return bool(np.linalg.norm(ca - cb) < cfg.near_threshold)


def history_relation(a, b, interval=None, eps=None, times=None):
    """ RCC-8 base relation between two histories.

    Args:
        a (STObject): first object
        b (STObject): second object
        interval (Interval, optional): time interval; Default **common time span**
        eps (Epsilon, optional): Tolerances; Default **Epsilon()**
        times (iterable, optional): candidate frames; Default **slice times of both objects**

    Returns:
        str: exactly one of the base relations

    Note:
        Histories are disconnected when every slice pair is, externally connected when every pair is dr,
        equal or non-tangential proper parts when every pair is, tangential proper parts when every pair is p
        and partially overlapping otherwise.
    """
    eps = eps or DEFAULT_EPS
    _, frames = _frames((a, b), interval, times)
    rels = {rcc8(a.shape_at(t), b.shape_at(t), eps) for t in frames}

    for base in (DC, EQ, NTPP, NTPPI):
        if rels == {base}:
            return base
    if rels <= RELATION_GROUPS['dr']:
        return 'ec'
    if rels <= RELATION_GROUPS['p']:
        return 'tpp'
    if rels <= RELATION_GROUPS['pi']:
        return 'tppi'
    return 'po'


def binary_relations(a, b, frames, cfg=None):
    """ Names of every binary relation holding between two objects on the given frames. """
    cfg = cfg or DeriveConfig()
    ta, tb = _Track(a, frames), _Track(b, frames)
    interval = Interval(frames[0], frames[-1])
    whole = replace(cfg, segments=False)
    atoms = (
        _topology_atoms(ta, tb, frames, interval, whole)
        + _size_binary_atoms(ta, tb, frames, interval, whole)
        + _movement_binary_atoms(ta, tb, frames, interval, whole)
    )
    return {atom.name for atom in atoms}


def unary_relations(a, frames, cfg=None):
    """ Names of every unary relation holding for an object on the given frames. """
    cfg = cfg or DeriveConfig()
    track = _Track(a, frames)
    interval = Interval(frames[0], frames[-1])
    whole = replace(cfg, segments=False)
    atoms = _size_unary_atoms(track, frames, interval, whole) + _movement_unary_atoms(
        track, frames, interval, whole
    )
    return {atom.name for atom in atoms}


def atom_holds(scene, atom, cfg=None, times=None):
    """ Verify a relation atom on the geometry of a scene.

    Args:
        scene (Scene): ground objects
        atom (RelationAtom): relation to check
        cfg (DeriveConfig, optional): derivation parameters; Default **DeriveConfig()**
        times (iterable, optional): candidate frames; Default **slice times of the objects**

    Returns:
        bool: whether the relation holds on the interval of the atom
    """
    cfg = replace(cfg or DeriveConfig(), segments=False)
    objects = [scene[arg] for arg in atom.args]
    b = objects[1] if len(objects) > 1 else None
    derived = _DERIVERS[atom.aspect](objects[0], b, atom.interval, cfg, times)
    return atom in derived


def _derive_task(task):
    objects, interval, aspects, cfg, times = task
    a = objects[0]
    b = objects[1] if len(objects) > 1 else None
    atoms = set()
    for aspect in aspects:
        atoms |= _DERIVERS[aspect](a, b, interval, cfg, times)
    return atoms


def derive_scene(scene, pairs=None, interval=None, aspects=ASPECTS, cfg=None, times=None):
    """ Derive relations for many object pairs concurrently.

    Args:
        scene (Scene): ground objects
        pairs (list, optional): ``(id_a, id_b)`` tuples; Default **every unordered pair of ground objects**
        interval (Interval, optional): time interval; Default **common time span of each pair**
        aspects (iterable, optional): aspects to derive; Default **all aspects**
        cfg (DeriveConfig, optional): derivation parameters; Default **DeriveConfig()**
        times (iterable, optional): candidate frames; Default **slice times of the scene**

    Returns:
        list: sorted :class:`RelationAtom` objects

    Note:
        Objects that appear in no pair still get their unary relations derived.
    """
    cfg = cfg or DeriveConfig()
    for aspect in aspects:
        if aspect not in ASPECTS:
            raise ValueError(f'Unknown aspect {aspect}, expected one of {ASPECTS}')
    if times is None:
        times = scene.times

    ground = [i for i in scene if scene[i].is_ground]
    if pairs is None:
        pairs = list(itertools.combinations(ground, 2))
    paired = {i for pair in pairs for i in pair}

    tasks = [((scene[a], scene[b]), interval, aspects, cfg, times) for a, b in pairs]
    tasks += [((scene[i],), interval, aspects, cfg, times) for i in ground if i not in paired]
    log.debug(f'Deriving {aspects} for {len(tasks)} tasks')

    atoms = set()
    with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
        for result in executor.map(_safe_task, tasks):
            atoms |= result
    return sorted(atoms)


def _safe_task(task):
    try:
        return _derive_task(task)
    except MissingSlices as err:
        if task[1] is not None:
            raise
        log.debug(f'Skipping {[o.id for o in task[0]]}: {err}')
        return set()
