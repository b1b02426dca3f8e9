# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Solution sets
-------------
Translations of one polygon that put it in a given RCC-8 relation to another polygon.

With ``S = P1 + (-P0)``, the translation ``t`` makes ``P0 + t`` meet ``P1`` exactly when ``t`` lies in ``S``.
Containment families come from the inner region of ``P1`` for ``P0`` and its counterpart for ``P1`` in ``P0``.
Every region keeps a margin to the classification thresholds of :func:`~strbox.geometry.rcc8`,
so points inside a region classify as intended.
Thin regions (``ec``, ``tpp``, ``tppi``, ``eq``) also keep their exact locus, onto which witnesses are projected.
"""
import functools
import logging
from dataclasses import dataclass
from typing import Optional
import numpy as np
import shapely
from shapely.affinity import scale as shapely_scale
from shapely.geometry import Point as ShapelyPoint
from shapely.ops import nearest_points, unary_union
from ..geometry import *
from ..spacetime import Slice
from .workspace import *

__all__ = [
    'RelationUnsupported',
    'NoWitness',
    'SolutionSet',
    'Witness',
    'solution_set',
    'intersect_solution_sets',
    'minimal_witness',
]
log = logging.getLogger(__name__)


class RelationUnsupported(ValueError):
    """ Raised when a solution set is requested for a relation that is not topological. """


class NoWitness(LookupError):
    """ Raised when a witness is requested from an empty solution set. """


class SolutionSet:
    """ Set of translation vectors inside a workspace.

    Args:
        region (PolygonSet): feasible region, clipped to (or resolved against) the workspace box
        workspace (WorkspaceConfig): workspace
        exact (shapely geometry, optional): exact lower-dimensional locus of thin regions; Default **None**
    """

    def __init__(self, region, workspace, exact=None):
        if not isinstance(region, PolygonSet):
            region = PolygonSet(region)
        self.region = region.resolve(workspace.box)
        self.workspace = workspace
        if exact is not None:
            exact = exact.intersection(shapely.box(*workspace.box))
            if exact.is_empty:
                exact = None
        self.exact = exact

    @classmethod
    def full(cls, workspace):
        return cls(PolygonSet.full(), workspace)

    @classmethod
    def empty(cls, workspace):
        return cls(PolygonSet(), workspace)

    @property
    def is_empty(self):
        return self.region.is_empty

    @property
    def area(self):
        return self.region.area

    def contains(self, point):
        return self.region.contains(point)

    def intersection(self, other):
        return intersect_solution_sets([self, other])

    def __repr__(self):
        return f'SolutionSet(area={self.area:g}, exact={self.exact is not None})'


@dataclass(frozen=True)
class Witness:
    """ Translation that satisfies a set of requirements.

    Args:
        vector (TranslationVector): the translation
        slices (tuple, optional): translated source slices; Default **empty**
        time (int, optional): frame of a per-slice translation; Default **None**, ie. one vector for every slice
    """

    vector: TranslationVector
    slices: tuple = ()
    time: Optional[int] = None

    def ground(self, source):
        """ Copy with the slices of a source object translated by the witness vector. """
        slices = tuple(
            Slice(s.time, s.shape.translate(self.vector))
            for s in source
            if self.time is None or s.time == self.time
        )
        return Witness(self.vector, slices, self.time)


def _reflect(geometry):
    return shapely_scale(geometry, -1, -1, origin=(0, 0))


def _buffered(polygon, distance):
    return Polygon.create(polygon.geometry.buffer(distance, join_style='mitre'))


def _dc(p0, p1, s, eps):
    g = eps.geom_eps
    return PolygonSet(s.buffer(1.5 * g), complement=True), None


def _ec(p0, p1, s, eps):
    g = eps.geom_eps
    return PolygonSet(s.boundary.buffer(0.5 * g)), s.boundary


def _tpp(p0, p1, s, eps):
    g = eps.geom_eps
    locus = unary_union([inner_region(p1, p0).geometry.boundary, exact_fits(p1, p0, eps)])
    return PolygonSet(locus.buffer(0.5 * g)), locus


def _ntpp(p0, p1, s, eps):
    g = eps.geom_eps
    return PolygonSet(inner_region(p1, p0).geometry.buffer(-1.5 * g)), None


def _tppi(p0, p1, s, eps):
    g = eps.geom_eps
    locus = _reflect(unary_union([inner_region(p0, p1).geometry.boundary, exact_fits(p0, p1, eps)]))
    return PolygonSet(locus.buffer(0.5 * g)), locus


def _ntppi(p0, p1, s, eps):
    g = eps.geom_eps
    return PolygonSet(_reflect(inner_region(p0, p1).geometry).buffer(-1.5 * g)), None


def _eq(p0, p1, s, eps):
    g = eps.geom_eps
    c0, c1 = p0.centroid, p1.centroid
    t = (c1.x - c0.x, c1.y - c0.y)
    if rcc8(p0.translate(t), p1, eps) != EQ:
        return PolygonSet(), None
    point = ShapelyPoint(*t)
    return PolygonSet(point.buffer(0.5 * g)), point


def _po(p0, p1, s, eps):
    g = eps.geom_eps
    overlap = s.buffer(-1.5 * g)
    inside = inner_region(_buffered(p1, 1.5 * g), p0).geometry
    around = _reflect(inner_region(_buffered(p0, 1.5 * g), p1).geometry)
    return PolygonSet(overlap.difference(inside).difference(around)), None


_FAMILIES = {
    DC: _dc,
    EC: _ec,
    PO: _po,
    TPP: _tpp,
    NTPP: _ntpp,
    TPPI: _tppi,
    NTPPI: _ntppi,
    EQ: _eq,
}


def solution_set(p0, p1, relation, workspace, eps=None):
    """ Translations ``t`` for which ``rcc8(p0 + t, p1)`` is one of the given relations.

    Args:
        p0 (Polygon): polygon that is translated
        p1 (Polygon): fixed polygon
        relation (str or iterable): base relation, relation group (eg. ``pp``) or collection of those
        workspace (WorkspaceConfig): translation space
        eps (Epsilon, optional): Tolerances; Default **Epsilon()**

    Returns:
        SolutionSet: union of the regions of every base relation

    Raises:
        RelationUnsupported: ``relation`` is not a slice-level topology relation
    """
    try:
        bases = expand_relation(relation)
    except ValueError as err:
        raise RelationUnsupported(f'No solution set for relation {relation!r}') from err

    eps = eps or DEFAULT_EPS
    s = minkowski_sum(p1, p0.reflect(), eps).geometry

    region = PolygonSet()
    exacts = []
    thin = False
    for base in BASE_RELATIONS:
        if base not in bases:
            continue
        part, exact = _FAMILIES[base](p0, p1, s, eps)
        region = region.union(part)
        if exact is not None:
            thin = True
            exacts.append(exact)
        else:
            exacts.append(part.resolve(workspace.box).geometry)

    exact = unary_union(exacts) if thin else None
    return SolutionSet(region, workspace, exact)


def intersect_solution_sets(sets):
    """ Intersection of solution sets from the same workspace.

    Args:
        sets (list): :class:`SolutionSet` objects

    Returns:
        SolutionSet: vectors that are in every set

    Raises:
        WorkspaceMismatch: the sets were built in different workspaces
    """
    sets = list(sets)
    if len(sets) == 0:
        raise ValueError('Cannot intersect an empty list of solution sets')
    workspace = sets[0].workspace
    for other in sets[1:]:
        if other.workspace != workspace:
            raise WorkspaceMismatch(f'Workspaces {workspace.box} and {other.workspace.box} differ')
    if len(sets) == 1:
        return sets[0]

    region = functools.reduce(lambda a, b: a.intersection(b), (s.region for s in sets))
    exact = None
    if any(s.exact is not None for s in sets) and not region.is_empty:
        exact = functools.reduce(
            lambda a, b: a.intersection(b),
            (s.exact if s.exact is not None else s.region.geometry for s in sets),
        )
    return SolutionSet(region, workspace, exact)


def _nearest_on_boundary(region, origin):
    segments = []
    for poly in region.polygons:
        for ring in (poly.exterior, *poly.interiors):
            coords = np.asarray(ring.coords)
            segments.append(np.stack([coords[:-1], coords[1:]], axis=1))
    segments = np.concatenate(segments)

    a, b = segments[:, 0], segments[:, 1]
    d = b - a
    length = np.einsum('ij,ij->i', d, d)
    with np.errstate(invalid='ignore', divide='ignore'):
        u = np.where(length > 0, np.einsum('ij,ij->i', origin - a, d) / length, 0)
    points = a + np.clip(u, 0, 1)[:, None] * d
    dist = np.round(np.linalg.norm(points - origin, axis=1), 12)
    best = np.lexsort((points[:, 1], points[:, 0], dist))[0]
    return points[best]


def minimal_witness(solutions, origin=(0, 0), prefer_exact=True):
    """ Vector of a solution set that lies closest to ``origin``.

    Args:
        solutions (SolutionSet): feasible vectors
        origin (tuple, optional): reference vector; Default **(0, 0)**, ie. the smallest translation
        prefer_exact (bool, optional): project onto the exact locus of thin regions; Default **True**

    Returns:
        Witness: closest vector, ties broken on the smallest ``(tx, ty)``

    Raises:
        NoWitness: the set is empty
    """
    if solutions.is_empty:
        raise NoWitness('Solution set is empty')
    origin = np.asarray(tuple(origin), dtype=float)
    region = solutions.region

    if region.contains(origin):
        point = origin
    else:
        point = _nearest_on_boundary(region, origin)

    exact = solutions.exact
    if prefer_exact and exact is not None and not exact.is_empty:
        candidate, _ = nearest_points(exact, ShapelyPoint(*origin))
        candidate = np.array([candidate.x, candidate.y])
        g = DEFAULT_EPS.geom_eps
        if np.linalg.norm(candidate - origin) <= np.linalg.norm(point - origin) + 2 * g:
            point = candidate

    return Witness(TranslationVector(*point))
