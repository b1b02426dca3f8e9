# -*- coding: utf-8 -*-
import unittest
import numpy as np
import strbox.geometry as stg
from strbox.experiments import raster_rcc8, robust_pair


def box(x, y, w, h):
    return stg.Polygon([(x, y), (x + w, y), (x + w, y + h), (x, y + h)])


class TestRcc8(unittest.TestCase):
    def setUp(self):
        self.unit = box(0, 0, 1, 1)

    def test_dc(self):
        """Separated squares are disconnected"""
        self.assertEqual(stg.rcc8(self.unit, box(2, 2, 1, 1)), stg.DC)

    def test_ec(self):
        """Squares sharing an edge are externally connected"""
        self.assertEqual(stg.rcc8(self.unit, box(1, 0, 1, 1)), stg.EC)

    def test_po(self):
        """Overlapping squares partially overlap"""
        self.assertEqual(stg.rcc8(self.unit, box(0.5, 0.5, 1, 1)), stg.PO)

    def test_ntpp(self):
        """A square strictly inside another is a non-tangential proper part"""
        inner = box(0.25, 0.25, 0.5, 0.5)
        self.assertEqual(stg.rcc8(inner, self.unit), stg.NTPP)
        self.assertEqual(stg.rcc8(self.unit, inner), stg.NTPPI)

    def test_tpp(self):
        """A square in a corner of another is a tangential proper part"""
        inner = box(0, 0, 0.5, 0.5)
        self.assertEqual(stg.rcc8(inner, self.unit), stg.TPP)
        self.assertEqual(stg.rcc8(self.unit, inner), stg.TPPI)

    def test_eq(self):
        """Identical squares, even with another start vertex, are equal"""
        shifted = stg.Polygon([(1, 1), (0, 1), (0, 0), (1, 0)])
        self.assertEqual(stg.rcc8(self.unit, shifted), stg.EQ)

    def test_type(self):
        """Point lists are read as polygons, other values raise InvalidPolygon"""
        self.assertEqual(stg.rcc8(self.unit, [(0, 0), (1, 0), (0, 1)]), stg.TPPI)
        with self.assertRaises(stg.InvalidPolygon):
            stg.rcc8(self.unit, 5)
        with self.assertRaises(stg.InvalidPolygon):
            stg.rcc8(None, self.unit)
        with self.assertRaises(stg.InvalidPolygon):
            stg.rcc8(self.unit, [(0, 0), (1, 1)])

    def test_converse(self):
        """Swapping the arguments gives the converse relation"""
        rng = np.random.default_rng(5)
        for _ in range(50):
            p = stg.random_polygon(rng, rng.uniform(-1, 1, 2))
            q = stg.random_polygon(rng, rng.uniform(-1, 1, 2))
            self.assertEqual(stg.rcc8(q, p), stg.CONVERSE[stg.rcc8(p, q)])

    def test_raster_oracle(self):
        """Classification agrees with a rasterized oracle on robust random pairs"""
        rng = np.random.default_rng(6)
        checked = 0
        while checked < 25:
            p = stg.random_polygon(rng, rng.uniform(-1.5, 1.5, 2))
            q = stg.random_polygon(rng, rng.uniform(-1.5, 1.5, 2), rng.uniform(0.3, 1.5))
            if not robust_pair(p, q, 0.05):
                continue
            self.assertEqual(stg.rcc8(p, q), raster_rcc8(p, q))
            checked += 1


class TestExpandRelation(unittest.TestCase):
    def test_groups(self):
        """Group names expand to their base relations"""
        self.assertEqual(stg.expand_relation('dr'), {stg.DC, stg.EC})
        self.assertEqual(stg.expand_relation('pp'), {stg.TPP, stg.NTPP})
        self.assertEqual(len(stg.expand_relation('c')), 7)
        self.assertEqual(stg.expand_relation(['dc', 'eq']), {stg.DC, stg.EQ})

    def test_unknown(self):
        """Unknown names raise ValueError"""
        with self.assertRaises(ValueError):
            stg.expand_relation('near')


if __name__ == '__main__':
    unittest.main()
