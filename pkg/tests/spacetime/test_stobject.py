# -*- coding: utf-8 -*-
import unittest
import strbox.geometry as stg
import strbox.spacetime as sts


def box(x, y, w=1, h=1):
    return stg.Polygon([(x, y), (x + w, y), (x + w, y + h), (x, y + h)])


class TestInterval(unittest.TestCase):
    def test_valid(self):
        """Intervals are closed and know their duration"""
        interval = sts.Interval(2, 5)
        self.assertIn(2, interval)
        self.assertIn(5, interval)
        self.assertNotIn(6, interval)
        self.assertEqual(interval.duration, 3)

    def test_invalid(self):
        """Reversed, negative and fractional intervals are rejected"""
        with self.assertRaises(ValueError):
            sts.Interval(3, 1)
        with self.assertRaises(ValueError):
            sts.Interval(-1, 1)
        with self.assertRaises(TypeError):
            sts.Interval(0.5, 1)


class TestRelationAtom(unittest.TestCase):
    def test_arity(self):
        """Atoms check the arity of their relation"""
        with self.assertRaises(ValueError):
            sts.RelationAtom('topology', 'dc', ('a',), sts.Interval(0, 1))
        with self.assertRaises(ValueError):
            sts.RelationAtom('movement', 'moves', ('a', 'b'), sts.Interval(0, 1))

    def test_unknown(self):
        """Unknown aspects and names raise ValueError"""
        with self.assertRaises(ValueError):
            sts.RelationAtom('colour', 'red', ('a',), sts.Interval(0, 1))
        with self.assertRaises(ValueError):
            sts.RelationAtom('topology', 'touches', ('a', 'b'), sts.Interval(0, 1))

    def test_str(self):
        """Atoms print in the fact syntax"""
        atom = sts.RelationAtom('topology', 'dc', ('a', 'b'), sts.Interval(0, 3))
        self.assertEqual(str(atom), 'topology(dc, a, b, time(0,3))')


class TestSTObject(unittest.TestCase):
    def setUp(self):
        self.obj = sts.STObject('o', {0: box(0, 0), 2: box(2, 0), 5: box(2, 3)})

    def test_slices(self):
        """Slices are sorted by time"""
        self.assertEqual(self.obj.times, (0, 2, 5))
        self.assertEqual(self.obj.span, (0, 5))
        self.assertTrue(self.obj.is_ground)
        self.assertEqual([s.time for s in self.obj], [0, 2, 5])

    def test_interpolate(self):
        """Missing slices are the earlier slice moved to the interpolated centroid"""
        shape = self.obj.shape_at(1)
        self.assertEqual(shape, box(1, 0))
        self.assertAlmostEqual(self.obj.centroid_at(3)[1], 1.5)

    def test_identical(self):
        """Interpolation between identical slices gives the same shape"""
        obj = sts.STObject('o', {0: box(0, 0), 4: box(0, 0)})
        self.assertEqual(obj.shape_at(2), box(0, 0))

    def test_no_bracketing(self):
        """Times outside the slice range cannot be interpolated"""
        with self.assertRaises(sts.NoBracketingSlices):
            self.obj.shape_at(6)
        self.assertTrue(issubclass(sts.NoBracketingSlices, sts.MissingSlices))

    def test_without(self):
        """Deleting slices leaves the original untouched"""
        reduced = self.obj.without([2])
        self.assertEqual(reduced.times, (0, 5))
        self.assertEqual(self.obj.times, (0, 2, 5))
        self.assertEqual(reduced.id, 'o')
        self.assertFalse(hasattr(reduced, 'renamed'))

    def test_unground(self):
        """Objects without slices have no span"""
        obj = sts.STObject('g')
        self.assertFalse(obj.is_ground)
        with self.assertRaises(sts.MissingSlices):
            obj.span

    def test_slice_list(self):
        """Slices can be given as a list, without duplicate times"""
        obj = sts.STObject('o', [sts.Slice(1, box(0, 0)), sts.Slice(0, box(1, 1))])
        self.assertEqual(obj.times, (0, 1))
        with self.assertRaises(ValueError):
            sts.STObject('o', [sts.Slice(1, box(0, 0)), sts.Slice(1, box(1, 1))])


class TestScene(unittest.TestCase):
    def setUp(self):
        self.scene = sts.Scene(
            [
                sts.STObject('b', {0: box(0, 0), 1: box(4, 0)}),
                sts.STObject('a', {0: box(0, 0, 2, 2)}),
                sts.STObject('g'),
            ]
        )

    def test_mapping(self):
        """Scenes are sorted mappings of objects"""
        self.assertEqual(list(self.scene), ['a', 'b', 'g'])
        self.assertEqual(len(self.scene), 3)
        self.assertIn('g', self.scene)

    def test_unbound(self):
        """Unknown ids raise UnboundEntity"""
        with self.assertRaises(sts.UnboundEntity):
            self.scene['x']

    def test_duplicate(self):
        """Ids are unique"""
        with self.assertRaises(ValueError):
            self.scene.add(sts.STObject('a'))

    def test_properties(self):
        """Times and bounds span every slice"""
        self.assertEqual(self.scene.times, [0, 1])
        self.assertEqual(self.scene.bounds, (0, 0, 5, 2))

    def test_copy(self):
        """Copies are independent"""
        copy = self.scene.copy()
        copy.add(sts.STObject('c'))
        self.assertNotIn('c', self.scene)


if __name__ == '__main__':
    unittest.main()
