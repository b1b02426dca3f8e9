# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Minkowski sums
--------------
Non-convex inputs are split in convex pieces by ear clipping,
after which the pairwise convex sums are merged with a boolean union.
"""
import logging
import numpy as np
import shapely
import tripy
from shapely.geometry import GeometryCollection, LineString, MultiPoint
from shapely.geometry import Point as ShapelyPoint
from shapely.geometry import Polygon as ShapelyPolygon
from shapely.ops import unary_union
from .polygon import DEFAULT_EPS, Point, Polygon, TranslationVector, _signed_area
from .polygonset import PolygonSet

__all__ = ['minkowski_sum', 'inner_region', 'exact_fits', 'convex_pieces']
log = logging.getLogger(__name__)


def _is_convex(coords):
    d1 = np.roll(coords, -1, axis=0) - coords
    d2 = np.roll(d1, -1, axis=0)
    cross = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
    return bool(np.all(cross >= 0))


def convex_pieces(polygon, eps=None):
    """ Split a polygon in convex pieces.

    Args:
        polygon (Polygon): polygon to split
        eps (Epsilon, optional): Tolerances; Default **Epsilon()**

    Returns:
        list or None: (k, 2) coordinate arrays, or **None** when the triangulation lost area
    """
    coords = polygon.coords
    if _is_convex(coords):
        return [coords]

    eps = eps or DEFAULT_EPS
    triangles = [np.array(t, dtype=float) for t in tripy.earclip([tuple(v) for v in coords])]
    pieces = [t for t in triangles if abs(_signed_area(t)) > eps.geom_eps ** 2]

    covered = sum(abs(_signed_area(t)) for t in pieces)
    if abs(covered - polygon.area) > eps.area_rel_eps * polygon.area:
        log.debug(f'Ear clipping covered {covered} of {polygon.area}, falling back to boundary sweep')
        return None
    return pieces


def _sweep(ring, shape):
    """ Region swept by ``shape`` when its reference point travels along the closed ``ring``.

    Args:
        ring (numpy.ndarray): (n, 2) vertices of a closed boundary
        shape (numpy.ndarray): (m, 2) vertices of a simple polygon

    Returns:
        shapely geometry: union of the copies of ``shape`` at every ring vertex and of every edge-pair parallelogram
    """
    copies = shapely.polygons(shape[None, :, :] + ring[:, None, :])

    ea = np.stack([ring, np.roll(ring, -1, axis=0)], axis=1)
    eb = np.stack([shape, np.roll(shape, -1, axis=0)], axis=1)
    a0, a1 = ea[:, None, 0], ea[:, None, 1]
    b0, b1 = eb[None, :, 0], eb[None, :, 1]
    quads = np.stack([a0 + b0, a1 + b0, a1 + b1, a0 + b1], axis=2).reshape(-1, 4, 2)
    quads = shapely.polygons(quads)
    quads = quads[shapely.area(quads) > 0]

    return unary_union(np.concatenate([copies, quads]))


def _sum_geometry(p, q, eps):
    pieces_p = convex_pieces(p, eps)
    pieces_q = convex_pieces(q, eps)

    if pieces_p is not None and pieces_q is not None:
        hulls = [
            MultiPoint((a[:, None, :] + b[None, :, :]).reshape(-1, 2)).convex_hull
            for a in pieces_p
            for b in pieces_q
        ]
        return unary_union(hulls)

    # Exact for connected operands: P + Q = (P + q0) U (boundary(P) + Q)
    shifted = p.translate(q.coords[0]).geometry
    return unary_union([shifted, _sweep(p.coords, q.coords)])


def minkowski_sum(p, q, eps=None):
    """ Compute the Minkowski sum ``{a + b : a in p, b in q}``.

    Args:
        p (Polygon): first operand
        q (Polygon, TranslationVector or Point): second operand
        eps (Epsilon, optional): Tolerances; Default **Epsilon()**

    Returns:
        PolygonSet: the sum

    Note:
        A single point as second operand degenerates to a translation.
    """
    if not isinstance(p, Polygon):
        raise TypeError(f'minkowski_sum expects a Polygon as first operand, got {type(p).__name__}')
    if isinstance(q, (TranslationVector, Point)):
        return PolygonSet(p.translate(tuple(q)))
    if not isinstance(q, Polygon):
        raise TypeError(f'minkowski_sum cannot add a {type(q).__name__}')

    return PolygonSet(_sum_geometry(p, q, eps or DEFAULT_EPS))


def inner_region(container, shape):
    """ Set of translations ``t`` for which ``shape + t`` lies inside ``container``.

    Args:
        container (Polygon): enclosing polygon
        shape (Polygon): polygon to place

    Returns:
        PolygonSet: regularized region, empty when ``shape`` does not fit

    Note:
        The region is ``(container - s0)`` minus the sweep of ``-shape`` along the boundary of ``container``,
        where ``s0`` is the first vertex of ``shape``.
        Placements that only fit exactly (a point or a segment of translations) have no area and are dropped,
        :func:`exact_fits` returns them.
    """
    anchor = container.translate(-shape.coords[0]).geometry
    blocked = _sweep(container.coords, -shape.coords)
    return PolygonSet(anchor.difference(blocked))


def _midline(part, trim):
    rect = shapely.minimum_rotated_rectangle(part)
    if not isinstance(rect, ShapelyPolygon):
        return rect
    c = np.asarray(rect.exterior.coords)[:4]
    if np.linalg.norm(c[1] - c[0]) < np.linalg.norm(c[2] - c[1]):
        c = np.roll(c, -1, axis=0)
    start, end = (c[0] + c[3]) / 2, (c[1] + c[2]) / 2
    length = np.linalg.norm(end - start)
    if length <= 2 * trim:
        return ShapelyPoint(*((start + end) / 2))
    direction = (end - start) / length
    return LineString([start + trim * direction, end - trim * direction])


def exact_fits(container, shape, eps=None):
    """ Translations that place ``shape`` inside ``container`` without any room to move in some direction.

    Args:
        container (Polygon): enclosing polygon
        shape (Polygon): polygon to place
        eps (Epsilon, optional): Tolerances; Default **Epsilon()**

    Returns:
        shapely geometry: segments and points of translations, empty when every fit encloses an area

    Note:
        These are the placements :func:`inner_region` drops.
        They are found as the parts of the inner region of ``container`` grown by half a ``geom_eps``
        that do not meet the inner region of ``container`` itself, and reported by their midline.
    """
    eps = eps or DEFAULT_EPS
    half = eps.geom_eps / 2
    tight = inner_region(container, shape).geometry
    grown = Polygon.create(container.geometry.buffer(half, join_style='mitre'), eps)
    loose = inner_region(grown, shape).geometry

    loci = [
        _midline(part, half)
        for part in shapely.get_parts(loose)
        if not part.is_empty and not part.intersects(tight)
    ]
    if len(loci) == 0:
        return GeometryCollection()
    return unary_union(loci)
