# -*- coding: utf-8 -*-
import unittest
import os
import tempfile
import strbox.geometry as stg
import strbox.spacetime as sts
import strbox.translation as stt


def box(x, y, w=1, h=1):
    return stg.Polygon([(x, y), (x + w, y), (x + w, y + h), (x, y + h)])


def topology(name, a, b, start=0, end=1):
    return sts.RelationAtom('topology', name, (a, b), sts.Interval(start, end))


class TestCheckTranslatedProgram(unittest.TestCase):
    def setUp(self):
        self.scene = sts.Scene(
            [
                sts.STObject('tray', {0: box(0, 0, 10, 10), 1: box(0, 0, 10, 10)}),
                sts.STObject('cup', {0: box(20, 20), 1: box(20, 20)}),
            ]
        )
        self.moved = [stt.UngroundTranslation('cup', 'moved')]

    def test_inside(self):
        """A translated cup can be put in the tray"""
        result = stt.check_translated_program(self.scene, self.moved, [topology('pp', 'moved', 'tray')])
        self.assertTrue(result)
        witness = result.witnesses['moved'][0]
        self.assertAlmostEqual(witness.vector.tx, -11, places=6)
        self.assertAlmostEqual(witness.vector.ty, -11, places=6)
        self.assertEqual([s.time for s in witness.slices], [0, 1])
        for s in witness.slices:
            self.assertIn(stg.rcc8(s.shape, box(0, 0, 10, 10)), (stg.TPP, stg.NTPP))
        self.assertIn(('moved',), result.per_slice_sets)

    def test_contradiction(self):
        """A cup cannot be inside and disconnected from the tray"""
        atoms = [topology('pp', 'moved', 'tray'), topology('dc', 'moved', 'tray')]
        result = stt.check_translated_program(self.scene, self.moved, atoms)
        self.assertFalse(result)
        self.assertTrue(result.reason)

    def test_no_atoms(self):
        """Without requirements the zero translation is the witness"""
        result = stt.check_translated_program(self.scene, self.moved, [])
        self.assertTrue(result)
        self.assertEqual(result.witnesses['moved'][0].vector, stg.TranslationVector(0, 0))

    def test_ground_violation(self):
        """Ground atoms that do not hold make the program inconsistent"""
        atom = topology('pp', 'cup', 'tray')
        result = stt.check_translated_program(self.scene, self.moved, [atom])
        self.assertFalse(result)
        self.assertEqual(result.violated, (atom,))

    def test_per_slice(self):
        """Per slice vectors move every frame on its own"""
        moved = [stt.UngroundTranslation('cup', 'moved', shared_vector=False)]
        atoms = [topology('pp', 'moved', 'tray', 0, 0), topology('dc', 'moved', 'tray', 1, 1)]
        result = stt.check_translated_program(self.scene, moved, atoms)
        self.assertTrue(result)
        self.assertEqual({w.time for w in result.witnesses['moved']}, {0, 1})

    def test_models(self):
        """Models are enumerated lazily and collected up to the limit"""
        scene = sts.Scene(
            [
                sts.STObject('tray', {0: box(0, 0, 10, 10), 1: box(30, 0, 10, 10)}),
                sts.STObject('cup', {0: box(20, 20), 1: box(20, 20)}),
            ]
        )
        models = list(stt.enumerate_translation_models(scene, self.moved, [topology('split', 'moved', 'tray')]))
        self.assertGreaterEqual(len(models), 1)
        result = stt.check_translated_program(scene, self.moved, [topology('split', 'moved', 'tray')], limit=5)
        self.assertEqual(len(result.models), len(models[:5]))

    def test_unsupported(self):
        """Atoms between two unknown translations are not solved"""
        translations = self.moved + [stt.UngroundTranslation('tray', 'other')]
        with self.assertRaises(stt.UnsupportedConstraintShape):
            stt.check_translated_program(self.scene, translations, [topology('dc', 'moved', 'other')])
        movement = sts.RelationAtom('movement', 'towards', ('moved', 'tray'), sts.Interval(0, 1))
        with self.assertRaises(stt.UnsupportedConstraintShape):
            stt.check_translated_program(self.scene, self.moved, [movement])

    def test_invalid_translation(self):
        """Objects are not translations of themselves or of unground objects"""
        with self.assertRaises(ValueError):
            stt.UngroundTranslation('cup', 'cup')
        scene = self.scene.copy()
        scene.add(sts.STObject('ghost'))
        with self.assertRaises(sts.MissingSlices):
            stt.check_translated_program(scene, [stt.UngroundTranslation('ghost', 'moved')], [])


class TestExport(unittest.TestCase):
    def test_svg(self):
        """Solution sets and polygons are drawn to an svg file"""
        ws = stt.WorkspaceConfig((-10, -10, 10, 10))
        sol = stt.solution_set(box(0, 0), box(3, 0), 'dc', ws)
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, 'region.svg')
            stt.export_svg(path, regions=[sol], polygons=[box(3, 0)], points=[(0, 0)])
            with open(path) as f:
                self.assertIn('<svg', f.read())


if __name__ == '__main__':
    unittest.main()
