# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Space-time objects
------------------
A space-time object is an identifier with a time-indexed sequence of polygon slices.
Missing slices are filled in by moving the earlier slice along the centroid trajectory.
"""
import bisect
import logging
from collections.abc import Mapping
from types import MappingProxyType
import numpy as np
from ..geometry import Polygon
from .atoms import Slice

__all__ = [
    'MissingSlices',
    'NoBracketingSlices',
    'UnboundEntity',
    'STObject',
    'Scene',
    'interpolate',
    'common_frames',
]
log = logging.getLogger(__name__)


class MissingSlices(LookupError):
    """ Raised when an object has no slice for a required time. """


class NoBracketingSlices(MissingSlices):
    """ Raised when interpolation is requested outside the slice range of an object. """


class UnboundEntity(LookupError):
    """ Raised when an identifier refers to no known object. """


class STObject:
    """ Space-time object.

    Args:
        id (str): unique identifier
        slices (dict or iterable, optional): ``{time: Polygon}`` mapping or iterable of :class:`Slice`; Default **no slices**
    """

    def __init__(self, id, slices=None):
        self.id = str(id)
        if slices is None:
            slices = {}
        elif not isinstance(slices, Mapping):
            items = {}
            for s in slices:
                if s.time in items:
                    raise ValueError(f'Object {self.id} has two slices at time {s.time}')
                items[s.time] = s.shape
            slices = items

        clean = {}
        for t, shape in sorted(slices.items()):
            if int(t) != t or t < 0:
                raise ValueError(f'Slice time should be a non-negative integer [{t!r}]')
            if not isinstance(shape, Polygon):
                shape = Polygon.create(shape)
            clean[int(t)] = shape
        self._slices = MappingProxyType(clean)
        self._times = tuple(clean)

    @property
    def slices(self):
        """ Read-only ``{time: Polygon}`` mapping. """
        return self._slices

    @property
    def times(self):
        """ Sorted slice times. """
        return self._times

    @property
    def is_ground(self):
        return len(self._times) > 0

    @property
    def span(self):
        """ First and last slice time. """
        if not self._times:
            raise MissingSlices(f'Object {self.id} has no slices')
        return self._times[0], self._times[-1]

    def __iter__(self):
        for t in self._times:
            yield Slice(t, self._slices[t])

    def __len__(self):
        return len(self._times)

    def shape_at(self, t):
        """ Shape at time ``t``, interpolated when there is no slice at that time. """
        shape = self._slices.get(t)
        if shape is not None:
            return shape
        return interpolate(self, t)

    def centroid_at(self, t):
        c = self.shape_at(t).centroid
        return c.x, c.y

    def without(self, times):
        """ Copy of this object with the slices at the given times removed. """
        times = set(times)
        return STObject(self.id, {t: s for t, s in self._slices.items() if t not in times})

    def __repr__(self):
        return f'STObject({self.id}, {len(self)} slices)'


def interpolate(obj, t):
    """ Shape of an object at a time between two of its slices.

    Args:
        obj (STObject): object
        t (int): time

    Returns:
        Polygon: nearest earlier slice, moved along the line between the centroids of the bracketing slices

    Raises:
        NoBracketingSlices: ``t`` lies before the first or after the last slice
    """
    shape = obj.slices.get(t)
    if shape is not None:
        return shape

    times = obj.times
    idx = bisect.bisect_left(times, t)
    if idx == 0 or idx == len(times):
        raise NoBracketingSlices(f'Object {obj.id} has no slices around time {t}')

    t1, t2 = times[idx - 1], times[idx]
    s1, s2 = obj.slices[t1], obj.slices[t2]
    c1, c2 = np.array(tuple(s1.centroid)), np.array(tuple(s2.centroid))
    return s1.translate((t - t1) / (t2 - t1) * (c2 - c1))


def common_frames(objects, interval, times=None):
    """ Frames on which a group of objects is evaluated over an interval.

    Args:
        objects (list): space-time objects
        interval (Interval): time interval
        times (iterable, optional): candidate frames; Default **union of the slice times of the objects**

    Returns:
        list: sorted frames inside ``interval``, always containing both interval ends

    Raises:
        MissingSlices: some object cannot be evaluated on the whole interval
    """
    for obj in objects:
        first, last = obj.span
        if interval.start < first or interval.end > last:
            raise MissingSlices(
                f'Object {obj.id} has slices on [{first}, {last}], which does not cover {interval}'
            )

    if times is None:
        times = set()
        for obj in objects:
            times.update(obj.times)
    frames = {t for t in times if t in interval}
    frames.update((interval.start, interval.end))
    return sorted(frames)


class Scene(Mapping):
    """ Collection of space-time objects with unique identifiers.

    Args:
        objects (iterable, optional): :class:`STObject` instances; Default **empty scene**
    """

    def __init__(self, objects=()):
        self._objects = {}
        for obj in objects:
            self.add(obj)

    def add(self, obj):
        if obj.id in self._objects:
            raise ValueError(f'Duplicate object identifier {obj.id}')
        self._objects[obj.id] = obj
        return obj

    def __getitem__(self, id):
        try:
            return self._objects[id]
        except KeyError as err:
            raise UnboundEntity(f'Unknown object {id}') from err

    def __contains__(self, id):
        return id in self._objects

    def get(self, id, default=None):
        return self._objects.get(id, default)

    def __iter__(self):
        return iter(sorted(self._objects))

    def __len__(self):
        return len(self._objects)

    def copy(self):
        return Scene(self._objects.values())

    @property
    def times(self):
        """ Sorted union of all slice times. """
        times = set()
        for obj in self._objects.values():
            times.update(obj.times)
        return sorted(times)

    @property
    def bounds(self):
        """ Bounding box ``(xmin, ymin, xmax, ymax)`` of every slice. """
        boxes = np.array([s.bounds for obj in self._objects.values() for s in obj.slices.values()])
        if len(boxes) == 0:
            raise MissingSlices('Scene has no slices')
        return (
            float(boxes[:, 0].min()),
            float(boxes[:, 1].min()),
            float(boxes[:, 2].max()),
            float(boxes[:, 3].max()),
        )

    @property
    def mean_diameter(self):
        diameters = [s.diameter for obj in self._objects.values() for s in obj.slices.values()]
        if len(diameters) == 0:
            raise MissingSlices('Scene has no slices')
        return float(np.mean(diameters))

    def __repr__(self):
        return f'Scene({len(self)} objects)'
