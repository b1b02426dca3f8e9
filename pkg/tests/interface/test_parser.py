# -*- coding: utf-8 -*-
import unittest
import strbox.geometry as stg
import strbox.interface as sti
import strbox.spacetime as sts
import strbox.translation as stt

program_string = """% two flies
polygon(p1, (0,0, 2,0, 2,2, 0,2)).
polygon(p2, (5,0, 6,0, 6,1, 5,1)).
st_object(fly1, at(0), id(p1)).
st_object(fly2, at(0), id(p2)).
st_object(hand).
spacetime(topology, fly1, X, time(0,0)).
topology(dc, fly1, hand, time(0,3)).
movement(moves, hand, time(1,2)).
filter(min_duration, 1).
filter(relation, dc).
"""


class TestParse(unittest.TestCase):
    def test_example(self):
        """A polygon with one slice parses"""
        prog = sti.parse('polygon(p1, (0,0, 1,0, 1,1, 0,1)). st_object(o1, at(0), id(p1)).')
        self.assertEqual(len(prog.polygons), 1)
        self.assertEqual(prog.slices, [sti.SliceDeclaration('o1', 0, 'p1')])

    def test_program(self):
        """Every kind of fact ends up in its own list"""
        prog = sti.parse(program_string)
        self.assertEqual(prog.objects, ['fly1', 'fly2', 'hand'])
        self.assertEqual(prog.directives, [sti.Directive('topology', ('fly1', 'X'), sts.Interval(0, 0))])
        self.assertEqual(
            prog.assertions,
            [
                sts.RelationAtom('topology', 'dc', ('fly1', 'hand'), sts.Interval(0, 3)),
                sts.RelationAtom('movement', 'moves', ('hand',), sts.Interval(1, 2)),
            ],
        )
        self.assertEqual(prog.filters, [('min_duration', 1), ('relation', 'dc')])

    def test_empty(self):
        """Empty and comment only input gives an empty program"""
        self.assertTrue(sti.parse('').is_empty)
        self.assertTrue(sti.parse('% nothing here\n\n').is_empty)

    def test_strings(self):
        """Quoted strings are symbols"""
        prog = sti.parse('st_object("fly 1").')
        self.assertEqual(prog.entities, ['fly 1'])

    def test_too_few_vertices(self):
        """Polygons need three vertices, errors carry their position"""
        with self.assertRaises(sti.ParseError) as ctx:
            sti.parse('polygon(p1, (0,0)).')
        self.assertEqual(ctx.exception.line, 1)
        self.assertEqual(ctx.exception.column, 13)

    def test_syntax(self):
        """Malformed text raises ParseError with a position"""
        with self.assertRaises(sti.ParseError) as ctx:
            sti.parse('st_object(a).\nst_object(b)\n')
        self.assertEqual(ctx.exception.line, 3)
        with self.assertRaises(sti.ParseError) as ctx:
            sti.parse('st_object(a) ; ')
        self.assertEqual(ctx.exception.column, 14)

    def test_unknown_predicate(self):
        """Unknown predicates are rejected"""
        with self.assertRaises(sti.ParseError):
            sti.parse('colour(a, red).')
        with self.assertRaises(sti.ParseError):
            sti.parse('topology(touches, a, b, time(0,1)).')

    def test_invalid_polygon(self):
        """Self intersecting polygons are rejected when parsed"""
        with self.assertRaises(sti.ParseError):
            sti.parse('polygon(p1, (0,0, 1,1, 1,0, 0,1)).')

    def test_dangling(self):
        """Slices of undeclared polygons raise DanglingReference"""
        with self.assertRaises(sti.DanglingReference) as ctx:
            sti.parse('st_object(o1, at(0), id(p9)).')
        self.assertEqual(ctx.exception.line, 1)

    def test_duplicate(self):
        """Polygon ids are declared once"""
        with self.assertRaises(sti.DuplicatePolygonId):
            sti.parse('polygon(p1, (0,0, 1,0, 0,1)).\npolygon(p1, (0,0, 2,0, 0,2)).')
        first = sti.parse('polygon(p1, (0,0, 1,0, 0,1)).')
        with self.assertRaises(sti.DuplicatePolygonId):
            first.update(sti.parse('polygon(p1, (0,0, 2,0, 0,2)).'))

    def test_two_slices(self):
        """An entity has one slice per time"""
        with self.assertRaises(sti.ParseError):
            sti.parse(
                'polygon(p1, (0,0, 1,0, 0,1)). st_object(o, at(0), id(p1)). st_object(o, at(0), id(p1)).'
            )

    def test_time(self):
        """Time stamps are non-negative and ordered"""
        with self.assertRaises(sti.ParseError):
            sti.parse('topology(dc, a, b, time(3,1)).')
        with self.assertRaises(sti.ParseError):
            sti.parse('movement(moves, a, time(0.5,1)).')


class TestSerialize(unittest.TestCase):
    def setUp(self):
        vector = stg.TranslationVector(2, 3)
        square = stg.Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
        shape = sts.Slice(0, square.translate(vector))
        self.results = sti.ResultSet(
            'consistent',
            [
                sts.RelationAtom('topology', 'dc', ('a', 'b'), sts.Interval(0, 2)),
                sts.RelationAtom('movement', 'moves', ('Fly 1',), sts.Interval(0, 1)),
            ],
            {'tr': [stt.Witness(vector, (shape,))]},
        )

    def test_lines(self):
        """Results are written one fact per line"""
        text = sti.serialize(self.results)
        lines = text.splitlines()
        self.assertEqual(lines[0], 'status(consistent).')
        self.assertIn('topology(dc, a, b, time(0,2)).', lines)
        self.assertIn('movement(moves, "Fly 1", time(0,1)).', lines)
        self.assertIn('translation_vector(tr, 2, 3).', lines)
        self.assertIn('spatial(witness, tr, (slice(0, tr_w0))).', lines)

    def test_roundtrip(self):
        """Serialized results parse back to the same text"""
        text = sti.serialize(self.results)
        again = sti.serialize(sti.ResultSet.from_program(sti.parse(text)))
        self.assertEqual(text, again)

    def test_empty(self):
        """Empty consistent results are an empty string"""
        self.assertEqual(sti.serialize(sti.ResultSet()), '')
        self.assertEqual(sti.serialize(sti.ResultSet('inconsistent')), 'status(inconsistent).\n')

    def test_symbols(self):
        """Symbols are quoted when they would not read back"""
        self.assertEqual(sti.format_symbol('fly1'), 'fly1')
        self.assertEqual(sti.format_symbol('Fly'), '"Fly"')
        self.assertEqual(sti.format_symbol('a"b'), '"a\\"b"')
        with self.assertRaises(ValueError) as ctx:
            sti.format_symbol('two\nlines')
        self.assertNotIsInstance(ctx.exception, sti.ParseError)
        self.assertEqual(sti.format_number(-0.0), '0')
        self.assertEqual(sti.format_number(2.5), '2.5')


if __name__ == '__main__':
    unittest.main()
