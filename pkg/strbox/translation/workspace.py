# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Workspace
---------
Bounded region of translation space in which solution sets are represented.
"""
import math
from dataclasses import dataclass
from typing import Optional

__all__ = ['EmptyWorkspace', 'WorkspaceMismatch', 'WorkspaceConfig']


class EmptyWorkspace(ValueError):
    """ Raised when a workspace box has no area. """


class WorkspaceMismatch(ValueError):
    """ Raised when solution sets from different workspaces are combined. """


@dataclass(frozen=True)
class WorkspaceConfig:
    """ Axis-aligned box of translation vectors.

    Args:
        box (tuple): ``(xmin, ymin, xmax, ymax)``
        grid_step (float, optional): sampling resolution for grid oracles; Default **1/100 of the largest box side**

    Raises:
        EmptyWorkspace: the box is degenerate
    """

    box: tuple
    grid_step: Optional[float] = None

    def __post_init__(self):
        try:
            box = tuple(float(v) for v in self.box)
        except (TypeError, ValueError) as err:
            raise TypeError(f'Workspace box should be 4 numbers [{self.box!r}]') from err
        if len(box) != 4:
            raise TypeError(f'Workspace box should be 4 numbers [{self.box!r}]')
        if not all(math.isfinite(v) for v in box):
            raise EmptyWorkspace(f'Workspace box should be finite {box}')
        xmin, ymin, xmax, ymax = box
        if not (xmin < xmax and ymin < ymax):
            raise EmptyWorkspace(f'Workspace box has no area {box}')
        object.__setattr__(self, 'box', box)

        if self.grid_step is None:
            object.__setattr__(self, 'grid_step', max(self.width, self.height) / 100)
        elif not self.grid_step > 0:
            raise ValueError(f'grid_step should be strictly positive [{self.grid_step}]')

    @classmethod
    def from_scene(cls, bounds, scale=4, grid_step=None):
        """ Workspace centred on the zero translation, ``scale`` times the size of a scene bounding box.

        Args:
            bounds (tuple or Scene): ``(xmin, ymin, xmax, ymax)`` of the scene, or the scene itself
            scale (float, optional): size of the workspace relative to the scene; Default **4**
            grid_step (float, optional): see :class:`WorkspaceConfig`
        """
        if hasattr(bounds, 'bounds'):
            bounds = bounds.bounds
        xmin, ymin, xmax, ymax = bounds
        hw, hh = scale * (xmax - xmin) / 2, scale * (ymax - ymin) / 2
        return cls((-hw, -hh, hw, hh), grid_step)

    @property
    def width(self):
        return self.box[2] - self.box[0]

    @property
    def height(self):
        return self.box[3] - self.box[1]

    def contains(self, point):
        x, y = point
        xmin, ymin, xmax, ymax = self.box
        return xmin <= x <= xmax and ymin <= y <= ymax
