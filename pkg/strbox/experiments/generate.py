# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Scene generation
----------------
Synthetic scenes of random polygons that drift, turn and accelerate.
"""
import logging
import math
from dataclasses import dataclass
import numpy as np
from ..geometry import random_polygon
from ..spacetime import Scene, STObject

__all__ = ['MotionParams', 'gen_scene', 'object_ids']
log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MotionParams:
    """ Motion of a generated object.

    Args:
        direction (tuple): unit vector of the initial heading
        speed (float): initial distance per frame
        angular_speed (float): heading change per frame, in radians
        acceleration (float): speed change per frame
    """

    direction: tuple
    speed: float
    angular_speed: float = 0.0
    acceleration: float = 0.0

    def __post_init__(self):
        dx, dy = (float(v) for v in self.direction)
        norm = math.hypot(dx, dy)
        if not math.isclose(norm, 1.0, rel_tol=1e-6):
            raise ValueError(f'Direction should be a unit vector [{dx}, {dy}]')
        object.__setattr__(self, 'direction', (dx, dy))
        for name in ('angular_speed', 'acceleration'):
            value = getattr(self, name)
            if not -0.1 <= value <= 0.1:
                raise ValueError(f'{name} should be in [-0.1, 0.1] [{value}]')

    @classmethod
    def random(cls, rng):
        angle = rng.uniform(0, 2 * np.pi)
        return cls(
            (math.cos(angle), math.sin(angle)),
            float(rng.uniform(0.2, 1.0)),
            float(rng.uniform(-0.1, 0.1)),
            float(rng.uniform(-0.1, 0.1)),
        )

    def positions(self, start, frames):
        """ Offsets of ``frames`` consecutive frames, starting at ``start``. """
        angle = math.atan2(self.direction[1], self.direction[0])
        speed = self.speed
        pos = np.asarray(start, dtype=float)
        result = [pos]
        for _ in range(frames - 1):
            pos = pos + speed * np.array([math.cos(angle), math.sin(angle)])
            result.append(pos)
            angle += self.angular_speed
            speed = max(speed + self.acceleration, 0.0)
        return np.array(result)


def object_ids(n):
    width = len(str(max(n - 1, 0)))
    return [f'o{i:0{width}d}' for i in range(n)]


def gen_scene(n, m, seed=None, rng=None, radius=1.0):
    """ Random scene of moving polygons.

    Args:
        n (int): number of objects
        m (int): number of frames
        seed (int, optional): random seed, ignored when ``rng`` is given; Default **None**
        rng (numpy.random.Generator, optional): random number generator; Default **numpy.random.default_rng(seed)**
        radius (float, optional): largest vertex distance of the polygons; Default **1**

    Returns:
        Scene: objects ``o0 ... o{n-1}`` with one slice at every frame ``0 ... m-1``

    Note:
        Objects start uniformly inside a square of side ``4 * sqrt(n) * radius``.
        Every frame they move along their heading, after which the heading turns and the speed changes.
    """
    if n < 1 or m < 1:
        raise ValueError(f'Scenes need at least one object and one frame [{n}, {m}]')
    if rng is None:
        rng = np.random.default_rng(seed)

    side = 4 * math.sqrt(n) * radius
    objects = []
    for id in object_ids(n):
        shape = random_polygon(rng, (0, 0), radius)
        motion = MotionParams.random(rng)
        offsets = motion.positions(rng.uniform(0, side, 2), m)
        objects.append(STObject(id, {t: shape.translate(offsets[t]) for t in range(m)}))

    log.debug(f'Generated scene with {n} objects and {m} frames in a square of side {side:.2f} [seed={seed}]')
    return Scene(objects)
