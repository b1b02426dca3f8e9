# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Export
------
Solution sets as polygon facts or SVG drawings.
"""
import logging
from pathlib import Path
import numpy as np
from matplotlib.figure import Figure
from matplotlib.patches import PathPatch
from matplotlib.path import Path as MplPath
from ..geometry import Polygon, PolygonSet

__all__ = ['solution_set_facts', 'export_svg']
log = logging.getLogger(__name__)

default_colors = [
    '#1f77b4',
    '#ff7f0e',
    '#2ca02c',
    '#d62728',
    '#9467bd',
    '#8c564b',
    '#e377c2',
    '#7f7f7f',
    '#bcbd22',
    '#17becf',
]


def _number(value):
    return f'{value:.9g}'


def _coords(points):
    return ','.join(f'{_number(x)},{_number(y)}' for x, y in points)


def solution_set_facts(solutions, prefix='m'):
    """ Polygon facts describing a solution set.

    Args:
        solutions (SolutionSet or PolygonSet): region to describe
        prefix (str, optional): prefix of the polygon identifiers; Default **m**

    Returns:
        list: ``polygon(prefix_i, (...)).`` lines for the shells, ``polygon(prefix_i_hole_j, (...)).`` lines for their holes
    """
    region = solutions if isinstance(solutions, PolygonSet) else solutions.region
    lines = []
    for i, poly in enumerate(region.polygons):
        shell = np.asarray(poly.exterior.coords)[:-1]
        lines.append(f'polygon({prefix}_{i}, ({_coords(shell)})).')
        for j, ring in enumerate(poly.interiors):
            hole = np.asarray(ring.coords)[:-1]
            lines.append(f'polygon({prefix}_{i}_hole_{j}, ({_coords(hole)})).')
    return lines


def _patch(poly, **kwargs):
    """ Matplotlib patch of a shapely polygon with holes. """
    vertices = []
    codes = []
    for ring in (poly.exterior, *poly.interiors):
        coords = np.asarray(ring.coords)
        vertices.append(coords)
        codes.extend([MplPath.MOVETO] + [MplPath.LINETO] * (len(coords) - 2) + [MplPath.CLOSEPOLY])
    return PathPatch(MplPath(np.concatenate(vertices), codes), **kwargs)


def export_svg(path, regions=(), polygons=(), points=(), bounds=None):
    """ Draw solution sets, polygons and witness vectors to an SVG file.

    Args:
        path (str or Path): output file
        regions (list, optional): :class:`SolutionSet` or :class:`PolygonSet` objects, filled
        polygons (list, optional): :class:`~strbox.geometry.Polygon` objects, outlined
        points (list, optional): ``(x, y)`` witness vectors, marked
        bounds (tuple, optional): ``(xmin, ymin, xmax, ymax)`` view; Default **fit everything**
    """
    fig = Figure(figsize=(6, 6))
    ax = fig.add_subplot()
    ax.set_aspect('equal')

    for idx, region in enumerate(regions):
        region = region if isinstance(region, PolygonSet) else region.region
        color = default_colors[idx % len(default_colors)]
        for poly in region.polygons:
            ax.add_patch(_patch(poly, facecolor=color, edgecolor=color, alpha=0.4))

    for idx, polygon in enumerate(polygons):
        polygon = Polygon.create(polygon)
        color = default_colors[(idx + len(regions)) % len(default_colors)]
        ax.add_patch(_patch(polygon.geometry, facecolor='none', edgecolor=color, linewidth=1.5))

    if len(points) > 0:
        pts = np.asarray([tuple(p) for p in points], dtype=float)
        ax.plot(pts[:, 0], pts[:, 1], 'kx')

    if bounds is not None:
        ax.set_xlim(bounds[0], bounds[2])
        ax.set_ylim(bounds[1], bounds[3])
    else:
        ax.autoscale_view()

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format='svg')
    log.debug(f'Wrote {path}')
