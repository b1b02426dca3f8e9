# -*- coding: utf-8 -*-
import unittest
import numpy as np
import strbox.algebra as sta
import strbox.geometry as stg


class TestTables(unittest.TestCase):
    def test_composition_converse(self):
        """Composition commutes with converse: conv(r1 o r2) = conv(r2) o conv(r1)"""
        for r1 in stg.BASE_RELATIONS:
            for r2 in stg.BASE_RELATIONS:
                left = {stg.CONVERSE[r] for r in sta.compose({r1}, {r2})}
                right = sta.compose({stg.CONVERSE[r2]}, {stg.CONVERSE[r1]})
                self.assertEqual(left, right)

    def test_identity(self):
        """Equality is the identity of composition"""
        for r in stg.BASE_RELATIONS:
            self.assertEqual(sta.compose({'eq'}, {r}), {r})
            self.assertEqual(sta.compose({r}, {'eq'}), {r})

    def test_expansion(self):
        """Topology names expand to history base relations"""
        self.assertEqual(sta.expand('pp'), {'tpp', 'ntpp'})
        self.assertNotIn('dc', sta.expand('c'))
        self.assertEqual(sta.expand('split'), {'po'})
        self.assertTrue(sta.is_topology('dc'))
        self.assertFalse(sta.is_topology('towards'))


class TestRuleTable(unittest.TestCase):
    def setUp(self):
        self.table = sta.RuleTable.embedded()

    def test_embedded(self):
        """The embedded table carries the expected topology and fact rules"""
        self.assertTrue(self.table.has('symmetric', 'ec'))
        self.assertTrue(self.table.has('asymmetric', 'ntpp'))
        self.assertTrue(self.table.has('converse', 'ntpp', 'ntppi'))
        self.assertTrue(self.table.has('irreflexive', 'dc'))
        self.assertTrue(self.table.has('mutuallyInconsistent', 'pp', 'dr'))
        self.assertTrue(self.table.has('transitivelyInconsistent', 'pp', 'pp', 'dc'))
        self.assertTrue(self.table.has('mutuallyInconsistent', 'moves', 'stationary'))
        self.assertFalse(self.table.has('irreflexive', 'eq'))

    def test_no_contradictions(self):
        """No relation is both reflexive and irreflexive"""
        reflexive = set(self.table.of_kind('reflexive'))
        irreflexive = set(self.table.of_kind('irreflexive'))
        self.assertEqual(reflexive & irreflexive, set())

    def test_composition(self):
        """Composition is read back from the transitive rules"""
        self.assertEqual(self.table.composition('ntpp', 'ntpp'), {'ntpp'})
        self.assertEqual(len(self.table.composition('dc', 'dc')), 8)

    def test_roundtrip(self):
        """Serialized tables parse back to the same table"""
        text = self.table.serialize()
        self.assertTrue(text.startswith('# version: 1\n'))
        self.assertEqual(sta.RuleTable.parse(text), self.table)

    def test_parse_errors(self):
        """Unknown kinds, relations and arities raise ValueError"""
        with self.assertRaises(ValueError):
            sta.RuleTable.parse('# version: 1\nsometimes dc\n')
        with self.assertRaises(ValueError):
            sta.RuleTable.parse('# version: 1\nsymmetric touches\n')
        with self.assertRaises(ValueError):
            sta.RuleTable.parse('# version: 1\nconverse dc\n')
        with self.assertRaises(ValueError):
            sta.RuleTable.parse('# version: 99\nsymmetric dc\n')

    def test_contradiction(self):
        """Tables with a reflexive and irreflexive relation are rejected"""
        with self.assertRaises(ValueError):
            sta.RuleTable([('reflexive', ('eq',)), ('irreflexive', ('eq',))])

    def test_missing_version(self):
        """Tables without version header still parse"""
        table = sta.RuleTable.parse('symmetric dc\n')
        self.assertEqual(table.version, sta.RULES_VERSION)
        self.assertEqual(len(table), 1)


class TestDeriveRuleTable(unittest.TestCase):
    def test_sample_scene(self):
        """Sampled scenes have three ground objects over three frames"""
        objects = sta.sample_scene(np.random.default_rng(0))
        self.assertEqual(len(objects), 3)
        for obj in objects:
            self.assertEqual(obj.times, (0, 1, 2))

    def test_small_budget(self):
        """Derivation keeps the sound topology rules and is deterministic for a seed"""
        first = sta.derive_rule_table(budget=100, seed=7, min_support=5)
        second = sta.derive_rule_table(budget=100, seed=7, min_support=5)
        self.assertEqual(first, second)
        self.assertEqual(first.provenance, 'derived')
        self.assertTrue(first.has('symmetric', 'ec'))
        self.assertTrue(first.has('converse', 'ntpp', 'ntppi'))
        self.assertTrue(first.has('transitivelyInconsistent', 'pp', 'pp', 'dc'))


if __name__ == '__main__':
    unittest.main()
