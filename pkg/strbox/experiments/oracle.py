# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Oracles
-------
Slow, independent counterparts of the geometric and qualitative reasoning of strbox,
used to cross-check results on small instances.
They work on rasters and lattices instead of exact polygon operations.
"""
import itertools
import logging
import numpy as np
from matplotlib.path import Path as MplPath
from PIL import Image, ImageDraw
from scipy.ndimage import distance_transform_edt
from scipy.spatial import cKDTree
from ..geometry import BASE_RELATIONS, CONVERSE, DC, EC, EQ, NTPP, NTPPI, PO, TPP, TPPI
from ..geometry import DEFAULT_EPS, Polygon, expand_relation, rcc8

__all__ = [
    'raster_rcc8',
    'robust_pair',
    'grid_minkowski_contains',
    'grid_solution_set',
    'grid_optimum',
    'brute_force_scenarios',
]
log = logging.getLogger(__name__)


def _signed_distance(polygon, origin, pixel, shape):
    """ Signed distance to the boundary of a polygon on a raster, negative inside. """
    image = Image.new('1', (shape[1], shape[0]), 0)
    coords = (polygon.coords - origin) / pixel
    ImageDraw.Draw(image).polygon([(float(x), float(y)) for x, y in coords], fill=1)
    inside = np.array(image, dtype=bool)
    return (distance_transform_edt(~inside) - distance_transform_edt(inside)) * pixel


def raster_rcc8(p, q, resolution=400, tolerance=1.5):
    """ RCC-8 relation of two polygons, decided on rasterized signed distance fields.

    Args:
        p (Polygon): first polygon
        q (Polygon): second polygon
        resolution (int, optional): number of pixels along the largest side of the common bounding box; Default **400**
        tolerance (float, optional): contact tolerance, in pixels; Default **1.5**

    Returns:
        str: base relation

    Note:
        The result is only meaningful for pairs that are robust at a margin of a few pixels, see :func:`robust_pair`.
    """
    p, q = Polygon.create(p), Polygon.create(q)
    bounds = np.array([p.bounds, q.bounds])
    lo = bounds[:, :2].min(axis=0)
    hi = bounds[:, 2:].max(axis=0)
    pixel = float((hi - lo).max()) / resolution
    origin = lo - 4 * pixel
    shape = tuple(int(v) for v in np.ceil((hi - origin) / pixel) + 5)[::-1]

    dp = _signed_distance(p, origin, pixel, shape)
    dq = _signed_distance(q, origin, pixel, shape)
    tol = tolerance * pixel

    if np.maximum(dp, dq).min() > tol:
        return DC
    if not np.any((dp < -tol) & (dq < -tol)):
        return EC

    p_in_q = not np.any((dp < -tol) & (dq > tol))
    q_in_p = not np.any((dq < -tol) & (dp > tol))
    tangent = np.any((np.abs(dp) <= tol) & (np.abs(dq) <= tol))
    if p_in_q and q_in_p:
        return EQ
    if p_in_q:
        return TPP if tangent else NTPP
    if q_in_p:
        return TPPI if tangent else NTPPI
    return PO


def robust_pair(p, q, margin):
    """ Whether a pair of polygons is far from every threshold of the RCC-8 decision.

    The pair is not robust when the polygons are closer than ``margin`` without touching,
    when their overlap or one of their differences is thinner than ``margin``,
    or when one lies inside the other with the boundaries closer than ``margin`` without touching.
    """
    a, b = Polygon.create(p).geometry, Polygon.create(q).geometry
    dist = a.distance(b)
    if 0 < dist < margin:
        return False
    if dist > 0:
        return True

    for part in (a.intersection(b), a.difference(b), b.difference(a)):
        if part.area > 0 and part.buffer(-margin / 2).is_empty:
            return False

    inner, outer = (a, b) if a.difference(b).area == 0 else (b, a)
    if inner.difference(outer).area == 0:
        gap = inner.exterior.distance(outer.exterior)
        if 0 < gap < margin:
            return False
    return True


def _inside_points(polygon, step):
    xmin, ymin, xmax, ymax = polygon.bounds
    xs = np.arange(xmin, xmax + step, step)
    ys = np.arange(ymin, ymax + step, step)
    grid = np.stack(np.meshgrid(xs, ys), axis=-1).reshape(-1, 2)
    path = MplPath(polygon.coords, closed=False)
    inside = grid[path.contains_points(grid)]
    return np.concatenate([inside, polygon.coords])


def grid_minkowski_contains(a, b, points, step):
    """ Approximate membership of points in the Minkowski sum of two polygons.

    Both polygons are sampled on a lattice of pitch ``step`` (plus their vertices),
    every pairwise sum is formed and a point is a member when it lies within ``step * sqrt(2)`` of a sum.

    Args:
        a (Polygon): first polygon
        b (Polygon): second polygon
        points (array-like): ``(n, 2)`` points to test
        step (float): lattice pitch

    Returns:
        numpy.ndarray: boolean membership per point
    """
    pa = _inside_points(Polygon.create(a), step)
    pb = _inside_points(Polygon.create(b), step)
    sums = (pa[:, None, :] + pb[None, :, :]).reshape(-1, 2)
    tree = cKDTree(sums)
    dist, _ = tree.query(np.asarray(points, dtype=float))
    return dist <= step * np.sqrt(2)


def grid_solution_set(p0, p1, relation, workspace, step=None, eps=None):
    """ Lattice translations ``t`` of the workspace for which ``rcc8(p0 + t, p1)`` is in ``relation``.

    Args:
        p0 (Polygon): polygon that is translated
        p1 (Polygon): fixed polygon
        relation (str or iterable): relation name(s)
        workspace (WorkspaceConfig): translation space
        step (float, optional): lattice pitch; Default **workspace.grid_step**
        eps (Epsilon, optional): Tolerances; Default **Epsilon()**

    Returns:
        tuple: ``(n, 2)`` lattice points and their boolean membership
    """
    step = step or workspace.grid_step
    eps = eps or DEFAULT_EPS
    bases = expand_relation(relation)
    xmin, ymin, xmax, ymax = workspace.box
    xs = np.arange(xmin, xmax + step / 2, step)
    ys = np.arange(ymin, ymax + step / 2, step)
    points = np.stack(np.meshgrid(xs, ys), axis=-1).reshape(-1, 2)
    member = np.array([rcc8(p0.translate(t), p1, eps) in bases for t in points])
    return points, member


def grid_optimum(points, member, origin=(0, 0)):
    """ Feasible lattice point closest to ``origin``, or **None**. """
    if not np.any(member):
        return None
    feasible = points[member]
    dist = np.linalg.norm(feasible - np.asarray(origin, dtype=float), axis=1)
    return feasible[int(np.argmin(dist))]


def brute_force_scenarios(net, table):
    """ Count the atomic refinements of a topology network by exhaustive enumeration.

    Every combination of base relations is checked for composition consistency on all triples of nodes.
    Facts are not taken into account.

    Args:
        net (QualitativeNetwork): network
        table (RuleTable): composition source

    Returns:
        int: number of consistent atomic refinements
    """
    nodes = net.nodes
    pairs = list(itertools.combinations(range(len(nodes)), 2))
    choices = [sorted(net.get_constraint(nodes[i], nodes[j])) for i, j in pairs]
    comp = {(r1, r2): table.composition(r1, r2) for r1 in BASE_RELATIONS for r2 in BASE_RELATIONS}
    triples = list(itertools.permutations(range(len(nodes)), 3))

    count = 0
    for combo in itertools.product(*choices):
        rel = {}
        for (i, j), r in zip(pairs, combo):
            rel[(i, j)] = r
            rel[(j, i)] = CONVERSE[r]
        if all(rel[(i, k)] in comp[(rel[(i, j)], rel[(j, k)])] for i, j, k in triples):
            count += 1
    log.debug(f'Brute force found {count} scenario(s) for {len(nodes)} nodes')
    return count
