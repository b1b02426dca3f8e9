# -*- coding: utf-8 -*-
import unittest
import numpy as np
from shapely.geometry import Point
import strbox.geometry as stg
from strbox.experiments import grid_minkowski_contains


def box(x, y, w, h):
    return stg.Polygon([(x, y), (x + w, y), (x + w, y + h), (x, y + h)])


class TestPolygonSet(unittest.TestCase):
    def setUp(self):
        self.a = stg.PolygonSet(box(0, 0, 2, 2))
        self.b = stg.PolygonSet(box(1, 1, 2, 2))

    def test_intersection(self):
        """Overlapping squares intersect in a unit square"""
        result = self.a.intersection(self.b)
        self.assertAlmostEqual(result.area, 1.0)
        self.assertTrue(result.contains((1.5, 1.5)))
        self.assertFalse(result.contains((0.5, 0.5)))

    def test_idempotent(self):
        """A set intersected with itself keeps its area"""
        self.assertAlmostEqual(self.a.intersection(self.a).area, self.a.area)

    def test_inclusion_exclusion(self):
        """Union area equals the sum minus the intersection for random polygons"""
        rng = np.random.default_rng(3)
        for _ in range(20):
            p = stg.PolygonSet(stg.random_polygon(rng, rng.uniform(-1, 1, 2)))
            q = stg.PolygonSet(stg.random_polygon(rng, rng.uniform(-1, 1, 2)))
            union = stg.boolean_op(p, q, 'union').area
            inter = stg.boolean_op(p, q, 'intersection').area
            self.assertAlmostEqual(union, p.area + q.area - inter, places=6)

    def test_complement(self):
        """Complement sets follow De Morgan and resolve against a box"""
        outside = stg.PolygonSet(box(0, 0, 1, 1), complement=True)
        self.assertTrue(outside.contains((2, 2)))
        self.assertFalse(outside.contains((0.5, 0.5)))
        self.assertTrue(outside.intersection(stg.PolygonSet(box(0, 0, 1, 1))).is_empty)
        self.assertAlmostEqual(outside.resolve((-1, -1, 2, 2)).area, 8.0)
        with self.assertRaises(ValueError):
            outside.area

    def test_full(self):
        """The full plane is the identity of intersection"""
        result = stg.PolygonSet.full().intersection(self.a)
        self.assertFalse(result.complement)
        self.assertAlmostEqual(result.area, 4.0)

    def test_unknown_op(self):
        """Unknown operations raise ValueError"""
        with self.assertRaises(ValueError):
            stg.boolean_op(self.a, self.b, 'xor')


class TestMinkowskiSum(unittest.TestCase):
    def test_squares(self):
        """Unit square plus unit square is the square [0, 2]"""
        result = stg.minkowski_sum(box(0, 0, 1, 1), box(0, 0, 1, 1))
        self.assertAlmostEqual(result.area, 4.0)
        self.assertEqual(tuple(round(v, 9) for v in result.geometry.bounds), (0, 0, 2, 2))

    def test_lshape(self):
        """L-shape plus unit square covers [0, 3] without its top right corner"""
        lshape = stg.Polygon([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])
        result = stg.minkowski_sum(lshape, box(0, 0, 1, 1))
        self.assertAlmostEqual(result.area, 8.0)
        self.assertFalse(result.contains((2.5, 2.5)))
        self.assertTrue(result.contains((2.5, 1.5)))

    def test_point(self):
        """A vector as second operand translates"""
        result = stg.minkowski_sum(box(0, 0, 1, 1), stg.TranslationVector(2, 3))
        self.assertTrue(result.contains((2.5, 3.5)))
        self.assertAlmostEqual(result.area, 1.0)

    def test_type(self):
        """Non polygon operands raise TypeError"""
        with self.assertRaises(TypeError):
            stg.minkowski_sum([(0, 0), (1, 0), (0, 1)], box(0, 0, 1, 1))

    def test_grid_oracle(self):
        """Membership agrees with a lattice of pairwise sums away from the boundary"""
        rng = np.random.default_rng(4)
        step = 0.02
        for _ in range(5):
            p = stg.random_polygon(rng)
            q = stg.random_polygon(rng)
            result = stg.minkowski_sum(p, q)
            samples = rng.uniform(-2, 2, (100, 2))
            oracle = grid_minkowski_contains(p, q, samples, step)
            boundary = result.geometry.boundary
            for point, expected in zip(samples, oracle):
                if boundary.distance(Point(point)) < 5 * step:
                    continue
                self.assertEqual(result.contains(point), bool(expected))


class TestInnerRegion(unittest.TestCase):
    def test_fits(self):
        """A unit square fits a 4 by 4 square on a 3 by 3 region of translations"""
        region = stg.inner_region(box(0, 0, 4, 4), box(0, 0, 1, 1))
        self.assertAlmostEqual(region.area, 9.0)
        self.assertTrue(region.contains((1.5, 1.5)))
        self.assertFalse(region.contains((3.5, 0.5)))

    def test_too_large(self):
        """Shapes that do not fit give an empty region"""
        region = stg.inner_region(box(0, 0, 1, 1), box(0, 0, 2, 2))
        self.assertTrue(region.is_empty)

    def test_exact_fits(self):
        """Shapes that fit without room in one direction give a segment of translations"""
        self.assertTrue(stg.inner_region(box(0, 0, 2, 1), box(0, 0, 1, 1)).is_empty)
        locus = stg.exact_fits(box(0, 0, 2, 1), box(0, 0, 1, 1))
        self.assertFalse(locus.is_empty)
        self.assertAlmostEqual(locus.length, 1.0, places=6)
        self.assertLess(locus.distance(Point(0, 0)), 1e-6)
        self.assertLess(locus.distance(Point(1, 0)), 1e-6)

    def test_exact_fits_point(self):
        """Shapes equal to their container fit on a single translation"""
        locus = stg.exact_fits(box(0, 0, 1, 1), box(0, 0, 1, 1))
        self.assertFalse(locus.is_empty)
        self.assertLess(locus.distance(Point(0, 0)), 1e-6)
        self.assertLess(locus.length, 1e-6)

    def test_exact_fits_roomy(self):
        """Shapes with room to move have no exact fits"""
        self.assertTrue(stg.exact_fits(box(0, 0, 4, 4), box(0, 0, 1, 1)).is_empty)
        self.assertTrue(stg.exact_fits(box(0, 0, 1, 1), box(0, 0, 2, 2)).is_empty)


if __name__ == '__main__':
    unittest.main()
