# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Polygon sets
------------
Regions built from boolean and Minkowski operations.
A set can be flagged as a complement, meaning "everything except the listed region",
so unbounded regions never need to be materialized until they are clipped to a workspace box.
"""
import logging
import shapely
from shapely.geometry import MultiPolygon, box as shapely_box
from shapely.geometry import Point as ShapelyPoint
from shapely.geometry import Polygon as ShapelyPolygon
from shapely.geometry.polygon import orient
from shapely.ops import unary_union
from .polygon import InvalidPolygon, Polygon

__all__ = ['PolygonSet', 'boolean_op', 'BOOLEAN_OPS']
log = logging.getLogger(__name__)

BOOLEAN_OPS = ('union', 'intersection', 'difference')


def _polygonal(geometry):
    """ Keep the 2D parts of a shapely geometry, as a valid (Multi)Polygon. """
    if geometry is None or geometry.is_empty:
        return ShapelyPolygon()
    if not geometry.is_valid:
        geometry = shapely.make_valid(geometry)
    if isinstance(geometry, (ShapelyPolygon, MultiPolygon)):
        return geometry

    parts = [
        g for g in shapely.get_parts(geometry) if isinstance(g, (ShapelyPolygon, MultiPolygon))
    ]
    if len(parts) == 0:
        return ShapelyPolygon()
    return unary_union(parts)


class PolygonSet:
    """ Regularized planar region, possibly flagged as a complement.

    Args:
        geometry (shapely geometry, Polygon or list, optional): Region; Default **empty**
        complement (bool, optional): Whether this set stands for everything outside ``geometry``; Default **False**
    """

    def __init__(self, geometry=None, complement=False):
        if isinstance(geometry, Polygon):
            geometry = geometry.geometry
        elif isinstance(geometry, (list, tuple)):
            geometry = unary_union([g.geometry if isinstance(g, Polygon) else g for g in geometry])
        self._geometry = _polygonal(geometry)
        self.complement = bool(complement)

    @classmethod
    def full(cls):
        """ The whole plane. """
        return cls(complement=True)

    @property
    def geometry(self):
        """ Shapely geometry of the listed region (the excluded region for complements). """
        return self._geometry

    @property
    def is_empty(self):
        return not self.complement and self._geometry.is_empty

    @property
    def area(self):
        if self.complement:
            raise ValueError('A complement set has no finite area, resolve it against a workspace first')
        return self._geometry.area

    @property
    def polygons(self):
        """ Shapely polygons making up the listed region. """
        if self._geometry.is_empty:
            return []
        if isinstance(self._geometry, MultiPolygon):
            return list(self._geometry.geoms)
        return [self._geometry]

    @property
    def shells(self):
        """ Outer boundaries as counter-clockwise :class:`~strbox.geometry.Polygon` objects.

        Note:
            Shells that are too thin to be valid polygons under the default tolerances are skipped.
        """
        shells = []
        for poly in self.polygons:
            try:
                shells.append(Polygon(list(poly.exterior.coords)[:-1]))
            except InvalidPolygon:
                log.debug('Skipping degenerate shell')
        return shells

    @property
    def holes(self):
        """ Holes as clockwise tuples of ``(x, y)`` vertices. """
        holes = []
        for poly in self.polygons:
            for ring in orient(poly, 1.0).interiors:
                holes.append(tuple((float(x), float(y)) for x, y in list(ring.coords)[:-1]))
        return holes

    def contains(self, point):
        """ Closed membership test for a point ``(x, y)``. """
        pt = ShapelyPoint(*point)
        if self.complement:
            return not self._geometry.contains(pt)
        return self._geometry.covers(pt)

    def resolve(self, bounds):
        """ Clip to an axis-aligned box, removing the complement flag.

        Args:
            bounds (tuple): ``(xmin, ymin, xmax, ymax)``

        Returns:
            PolygonSet: bounded region
        """
        region = shapely_box(*bounds)
        if self.complement:
            return PolygonSet(region.difference(self._geometry))
        return PolygonSet(region.intersection(self._geometry))

    def union(self, other):
        return boolean_op(self, other, 'union')

    def intersection(self, other):
        return boolean_op(self, other, 'intersection')

    def difference(self, other):
        return boolean_op(self, other, 'difference')

    def __repr__(self):
        prefix = 'complement of ' if self.complement else ''
        return f'PolygonSet({prefix}{self._geometry.geom_type}, area={self._geometry.area:g})'


def boolean_op(a, b, op):
    """ Regularized boolean operation on two polygon sets.

    Args:
        a (PolygonSet): first operand
        b (PolygonSet): second operand
        op (str): one of **union**, **intersection** or **difference**

    Returns:
        PolygonSet: result

    Note:
        Complement operands are rewritten with De Morgan's laws,
        so the result only becomes a complement when it is unbounded.
    """
    if op not in BOOLEAN_OPS:
        raise ValueError(f'Unknown boolean operation {op}, expected one of {BOOLEAN_OPS}')
    ga, gb = a.geometry, b.geometry

    if op == 'union':
        if a.complement and b.complement:
            return PolygonSet(ga.intersection(gb), complement=True)
        if a.complement:
            return PolygonSet(ga.difference(gb), complement=True)
        if b.complement:
            return PolygonSet(gb.difference(ga), complement=True)
        return PolygonSet(ga.union(gb))

    if op == 'intersection':
        if a.complement and b.complement:
            return PolygonSet(ga.union(gb), complement=True)
        if a.complement:
            return PolygonSet(gb.difference(ga))
        if b.complement:
            return PolygonSet(ga.difference(gb))
        return PolygonSet(ga.intersection(gb))

    # difference
    if a.complement and b.complement:
        return PolygonSet(gb.difference(ga))
    if a.complement:
        return PolygonSet(ga.union(gb), complement=True)
    if b.complement:
        return PolygonSet(ga.intersection(gb))
    return PolygonSet(ga.difference(gb))
