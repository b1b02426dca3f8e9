# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Polygons
--------
Ground simple polygons are the spatial slices every other part of strbox works on.
They are immutable, validated on construction and stored counter-clockwise.
"""
import logging
import math
from dataclasses import dataclass
from functools import cached_property
import numpy as np
from scipy.spatial.distance import pdist
from shapely.geometry import LinearRing
from shapely.geometry import Polygon as ShapelyPolygon

__all__ = [
    'Point',
    'TranslationVector',
    'Epsilon',
    'DEFAULT_EPS',
    'Polygon',
    'InvalidPolygon',
    'TooFewVertices',
    'SelfIntersecting',
    'DegenerateArea',
    'validate_polygon',
    'area',
    'centroid',
    'translate',
    'distance',
    'random_polygon',
]
log = logging.getLogger(__name__)


class InvalidPolygon(ValueError):
    """ Raised when a vertex list does not describe a simple polygon. """


class TooFewVertices(InvalidPolygon):
    """ Raised when a polygon has less than 3 vertices. """


class SelfIntersecting(InvalidPolygon):
    """ Raised when the boundary of a polygon crosses or touches itself. """


class DegenerateArea(InvalidPolygon):
    """ Raised when a polygon has (almost) no area. """


@dataclass(frozen=True, order=True)
class Point:
    """ Point in the plane, in scene units. """

    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, 'x', float(self.x))
        object.__setattr__(self, 'y', float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f'Point coordinates should be finite [{self.x}, {self.y}]')

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True, order=True)
class TranslationVector:
    """ Rigid translation of the plane. """

    tx: float
    ty: float

    def __post_init__(self):
        object.__setattr__(self, 'tx', float(self.tx) + 0.0)
        object.__setattr__(self, 'ty', float(self.ty) + 0.0)
        if not (math.isfinite(self.tx) and math.isfinite(self.ty)):
            raise ValueError(f'Translation should be finite [{self.tx}, {self.ty}]')

    @classmethod
    def create(cls, obj=None):
        """ Create a translation vector from another vector, a point or a pair of numbers. """
        if obj is None:
            return cls(0.0, 0.0)
        if isinstance(obj, TranslationVector):
            return obj
        try:
            tx, ty = obj
        except (TypeError, ValueError) as err:
            raise TypeError(f'Cannot interpret {obj!r} as a translation vector') from err
        return cls(tx, ty)

    def __iter__(self):
        yield self.tx
        yield self.ty

    def __add__(self, other):
        other = TranslationVector.create(other)
        return TranslationVector(self.tx + other.tx, self.ty + other.ty)

    def __sub__(self, other):
        other = TranslationVector.create(other)
        return TranslationVector(self.tx - other.tx, self.ty - other.ty)

    def __neg__(self):
        return TranslationVector(-self.tx, -self.ty)

    @property
    def norm(self):
        return math.hypot(self.tx, self.ty)


@dataclass(frozen=True)
class Epsilon:
    """ Tolerance policy used by all geometric decisions.

    Args:
        geom_eps (float, optional): Absolute tolerance for boundary contact decisions, in scene units; Default **1e-9**
        area_rel_eps (float, optional): Relative tolerance for area comparisons; Default **1e-6**
    """

    geom_eps: float = 1e-9
    area_rel_eps: float = 1e-6

    def __post_init__(self):
        if not self.geom_eps > 0 or not self.area_rel_eps > 0:
            raise ValueError(
                f'Tolerances should be strictly positive [{self.geom_eps}, {self.area_rel_eps}]'
            )


DEFAULT_EPS = Epsilon()


def _signed_area(coords):
    x, y = coords[:, 0], coords[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _redundant_vertex(points, geom_eps):
    """ Index of the first vertex that duplicates its predecessor or lies on the line through its neighbours. """
    n = len(points)
    for i in range(n):
        a, b, c = points[i - 1], points[i], points[(i + 1) % n]
        if math.dist(a, b) <= geom_eps:
            return i
        base = math.dist(a, c)
        if base <= geom_eps:
            return i
        cross = (c[0] - a[0]) * (b[1] - a[1]) - (c[1] - a[1]) * (b[0] - a[0])
        if abs(cross) / base <= geom_eps:
            return i
    return None


def _canonicalize(raw, eps):
    try:
        points = [(float(x), float(y)) for x, y in raw]
    except (TypeError, ValueError) as err:
        raise InvalidPolygon(f'Polygon vertices should be pairs of numbers [{raw!r}]') from err

    if len(points) < 3:
        raise TooFewVertices(f'Polygon needs at least 3 vertices, got {len(points)}')
    if not all(math.isfinite(v) for p in points for v in p):
        raise InvalidPolygon('Polygon vertices should be finite')

    while len(points) >= 3:
        idx = _redundant_vertex(points, eps.geom_eps)
        if idx is None:
            break
        del points[idx]
    if len(points) < 3:
        raise DegenerateArea('Polygon collapses to a line or a point')

    if not LinearRing(points).is_simple:
        raise SelfIntersecting('Polygon boundary intersects itself')

    coords = np.array(points, dtype=float)
    signed = _signed_area(coords)
    if abs(signed) < eps.geom_eps ** 2:
        raise DegenerateArea(f'Polygon area {abs(signed)} is too small')
    if signed < 0:
        # Keep the first vertex in place while reversing orientation
        coords = np.concatenate([coords[:1], coords[:0:-1]])

    return coords


class Polygon:
    """ Simple polygon with counter-clockwise vertices.

    Args:
        vertices (list): Sequence of ``(x, y)`` pairs or :class:`Point` objects
        eps (Epsilon, optional): Tolerances used while validating; Default **Epsilon()**

    Raises:
        TooFewVertices: less than 3 vertices
        SelfIntersecting: the boundary crosses itself
        DegenerateArea: collinear or (almost) zero area polygons

    Note:
        Consecutive duplicate vertices and vertices lying on the line through their neighbours are dropped.
        Clockwise input is reversed, keeping the first vertex first.
    """

    def __init__(self, vertices, eps=None):
        coords = _canonicalize(vertices, eps or DEFAULT_EPS)
        coords.setflags(write=False)
        self._coords = coords

    @classmethod
    def _trusted(cls, coords):
        """ Wrap coordinates that are known to be canonical (eg. a translated polygon). """
        instance = cls.__new__(cls)
        coords = np.array(coords, dtype=float)
        coords.setflags(write=False)
        instance._coords = coords
        return instance

    @classmethod
    def create(cls, obj, eps=None):
        """ Create a polygon from another polygon, a list of points or a flat coordinate sequence ``(x1, y1, x2, y2, ...)``. """
        if isinstance(obj, Polygon):
            return obj
        if isinstance(obj, ShapelyPolygon):
            return cls(list(obj.exterior.coords)[:-1], eps)

        values = list(obj)
        if len(values) > 0 and all(isinstance(v, (int, float, np.number)) for v in values):
            if len(values) % 2 != 0:
                raise InvalidPolygon(f'Flat coordinate list has an odd length [{len(values)}]')
            values = list(zip(values[0::2], values[1::2]))
        return cls(values, eps)

    @property
    def coords(self):
        """ Read-only (n, 2) array of vertices. """
        return self._coords

    @property
    def vertices(self):
        return tuple(Point(x, y) for x, y in self._coords)

    @cached_property
    def geometry(self):
        """ Shapely counterpart of this polygon. """
        return ShapelyPolygon(self._coords)

    @cached_property
    def area(self):
        return _signed_area(self._coords)

    @cached_property
    def centroid(self):
        x, y = self._coords[:, 0], self._coords[:, 1]
        xn, yn = np.roll(x, -1), np.roll(y, -1)
        cross = x * yn - xn * y
        factor = 1 / (6 * self.area)
        return Point(factor * np.dot(x + xn, cross), factor * np.dot(y + yn, cross))

    @property
    def bounds(self):
        """ Tuple ``(xmin, ymin, xmax, ymax)``. """
        (xmin, ymin), (xmax, ymax) = self._coords.min(axis=0), self._coords.max(axis=0)
        return float(xmin), float(ymin), float(xmax), float(ymax)

    @cached_property
    def diameter(self):
        """ Largest distance between two vertices. """
        return float(pdist(self._coords).max())

    def translate(self, t):
        t = TranslationVector.create(t)
        return Polygon._trusted(self._coords + np.array([t.tx, t.ty]))

    def reflect(self):
        """ Point reflection through the origin, ie. ``-P``. """
        return Polygon._trusted(-self._coords)

    def __len__(self):
        return len(self._coords)

    def __eq__(self, other):
        if not isinstance(other, Polygon):
            return NotImplemented
        return self._coords.shape == other._coords.shape and bool(
            np.all(self._coords == other._coords)
        )

    def __hash__(self):
        return hash(self._coords.tobytes())

    def __repr__(self):
        pts = ', '.join(f'({x:g}, {y:g})' for x, y in self._coords)
        return f'Polygon([{pts}])'


def validate_polygon(raw, eps=None):
    """ Validate and canonicalize a vertex list.

    Args:
        raw (list): Sequence of ``(x, y)`` pairs
        eps (Epsilon, optional): Tolerances; Default **Epsilon()**

    Returns:
        Polygon: counter-clockwise simple polygon
    """
    return Polygon(raw, eps)


def area(polygon):
    return polygon.area


def centroid(polygon):
    """ Area centroid of a polygon. """
    return polygon.centroid


def translate(polygon, t):
    """ Translate every vertex of a polygon by ``t``, keeping the vertex order. """
    return polygon.translate(t)


def distance(p, q):
    """ Euclidean distance between two points. """
    (px, py), (qx, qy) = p, q
    return math.hypot(px - qx, py - qy)


def random_polygon(rng, center=(0, 0), radius=1.0, vertices=None):
    """ Generate a random star-shaped simple polygon.

    Args:
        rng (numpy.random.Generator): Random number generator
        center (tuple, optional): Center of the star; Default **(0, 0)**
        radius (float, optional): Largest distance between the center and a vertex; Default **1**
        vertices (int, optional): Number of vertices; Default **random between 5 and 10**

    Returns:
        Polygon: random polygon
    """
    if vertices is None:
        vertices = int(rng.integers(5, 11))

    angles = (np.arange(vertices) + rng.uniform(0.15, 0.85, vertices)) * (2 * np.pi / vertices)
    radii = radius * rng.uniform(0.4, 1.0, vertices)
    coords = np.stack([np.cos(angles) * radii, np.sin(angles) * radii], axis=1)
    return Polygon(coords + np.asarray(center, dtype=float))
