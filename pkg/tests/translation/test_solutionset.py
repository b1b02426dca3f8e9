# -*- coding: utf-8 -*-
import unittest
import numpy as np
from shapely.geometry import Point
import strbox.geometry as stg
import strbox.translation as stt
from strbox.experiments import grid_optimum, grid_solution_set


def box(x, y, w=1, h=1):
    return stg.Polygon([(x, y), (x + w, y), (x + w, y + h), (x, y + h)])


class TestWorkspace(unittest.TestCase):
    def test_from_scene(self):
        """Workspaces are centred on the zero translation"""
        ws = stt.WorkspaceConfig.from_scene((0, 0, 2, 1))
        self.assertEqual(ws.box, (-4.0, -2.0, 4.0, 2.0))
        self.assertAlmostEqual(ws.grid_step, 0.08)
        self.assertTrue(ws.contains((0, 0)))
        self.assertFalse(ws.contains((5, 0)))

    def test_invalid(self):
        """Degenerate boxes raise EmptyWorkspace"""
        with self.assertRaises(stt.EmptyWorkspace):
            stt.WorkspaceConfig((0, 0, 0, 1))
        with self.assertRaises(stt.EmptyWorkspace):
            stt.WorkspaceConfig((0, 0, float('inf'), 1))
        with self.assertRaises(TypeError):
            stt.WorkspaceConfig((0, 0, 1))
        with self.assertRaises(ValueError):
            stt.WorkspaceConfig((0, 0, 1, 1), grid_step=0)


class TestSolutionSet(unittest.TestCase):
    def setUp(self):
        self.ws = stt.WorkspaceConfig((-10, -10, 10, 10))
        self.p0 = box(0, 0)
        self.p1 = box(3, 0)

    def test_dc(self):
        """Disconnected translations are everything but the blocked square"""
        sol = stt.solution_set(self.p0, self.p1, 'dc', self.ws)
        self.assertAlmostEqual(sol.area, 396, places=5)
        self.assertTrue(sol.contains((0, 0)))
        self.assertFalse(sol.contains((3, 0)))
        self.assertFalse(sol.contains((2.5, 0.5)))

    def test_ec(self):
        """Touching translations form a thin band with an exact locus"""
        sol = stt.solution_set(self.p0, self.p1, 'ec', self.ws)
        self.assertLess(sol.area, 1e-6)
        self.assertIsNotNone(sol.exact)
        self.assertTrue(sol.contains((2, 0)))
        self.assertFalse(sol.contains((3, 0)))

    def test_group(self):
        """Relation groups are the union of their base relations"""
        dr = stt.solution_set(self.p0, self.p1, 'dr', self.ws)
        self.assertTrue(dr.contains((0, 0)))
        self.assertTrue(dr.contains((2, 0)))
        self.assertFalse(dr.contains((3, 0)))

    def test_unsupported(self):
        """Only topology relations have a solution set"""
        with self.assertRaises(stt.RelationUnsupported):
            stt.solution_set(self.p0, self.p1, 'towards', self.ws)

    def test_full_identity(self):
        """The full set is the identity of intersection"""
        sol = stt.solution_set(self.p0, self.p1, 'dc', self.ws)
        result = stt.SolutionSet.full(self.ws).intersection(sol)
        self.assertAlmostEqual(result.area, sol.area, places=6)

    def test_mismatch(self):
        """Sets of different workspaces are not intersected"""
        other = stt.WorkspaceConfig((-5, -5, 5, 5))
        with self.assertRaises(stt.WorkspaceMismatch):
            stt.intersect_solution_sets([stt.SolutionSet.full(self.ws), stt.SolutionSet.full(other)])
        with self.assertRaises(ValueError):
            stt.intersect_solution_sets([])

    def test_grid_oracle(self):
        """Solution sets agree with a lattice of rcc8 checks away from their boundary"""
        rng = np.random.default_rng(11)
        ws = stt.WorkspaceConfig((-4, -4, 4, 4), grid_step=0.25)
        p0 = stg.random_polygon(rng, (0, 0), 0.8)
        p1 = stg.random_polygon(rng, (0.5, 0), 1.5)
        for relation in ('dc', 'po', 'ntpp'):
            sol = stt.solution_set(p0, p1, relation, ws)
            boundary = sol.region.geometry.boundary
            points, member = grid_solution_set(p0, p1, relation, ws)
            for point, inside in zip(points, member):
                if boundary.distance(Point(*point)) < 0.05:
                    continue
                self.assertEqual(sol.contains(point), bool(inside), f'{relation} at {tuple(point)}')


class TestMinimalWitness(unittest.TestCase):
    def setUp(self):
        self.ws = stt.WorkspaceConfig((-10, -10, 10, 10))
        self.p0 = box(0, 0)
        self.p1 = box(3, 0)

    def test_ec(self):
        """The smallest touching translation slides up to the nearest edge"""
        sol = stt.solution_set(self.p0, self.p1, 'ec', self.ws)
        witness = stt.minimal_witness(sol)
        self.assertAlmostEqual(witness.vector.tx, 2, places=6)
        self.assertAlmostEqual(witness.vector.ty, 0, places=6)
        self.assertEqual(stg.rcc8(self.p0.translate(witness.vector), self.p1), stg.EC)

    def test_origin_inside(self):
        """The origin is its own witness when it is feasible"""
        sol = stt.solution_set(self.p0, self.p1, 'dc', self.ws)
        self.assertEqual(stt.minimal_witness(sol).vector, stg.TranslationVector(0, 0))

    def test_pp(self):
        """Proper part witnesses lie on the closest corner of the inner region"""
        sol = stt.solution_set(self.p0, box(3, 3, 2, 2), 'pp', self.ws)
        witness = stt.minimal_witness(sol)
        self.assertAlmostEqual(witness.vector.tx, 3, places=6)
        self.assertAlmostEqual(witness.vector.ty, 3, places=6)

    def test_exact_fit_tpp(self):
        """A square in a box of its own height slides along a segment of tangential placements"""
        container = box(0, 0, 2, 1)
        sol = stt.solution_set(self.p0, container, 'tpp', self.ws)
        self.assertFalse(sol.is_empty)
        self.assertIsNotNone(sol.exact)
        witness = stt.minimal_witness(sol)
        self.assertAlmostEqual(witness.vector.tx, 0, places=6)
        self.assertAlmostEqual(witness.vector.ty, 0, places=6)
        self.assertEqual(stg.rcc8(self.p0.translate(witness.vector), container), stg.TPP)
        middle = stt.minimal_witness(sol, origin=(0.5, 0.3))
        self.assertAlmostEqual(middle.vector.tx, 0.5, places=6)
        self.assertAlmostEqual(middle.vector.ty, 0, places=6)
        self.assertEqual(stg.rcc8(self.p0.translate(middle.vector), container), stg.TPP)

    def test_exact_fit_pp(self):
        """A square in a box of its own width has proper part placements on a segment"""
        container = box(0, 0, 1, 3)
        sol = stt.solution_set(self.p0, container, 'pp', self.ws)
        self.assertFalse(sol.is_empty)
        witness = stt.minimal_witness(sol, origin=(0.2, 1))
        self.assertAlmostEqual(witness.vector.tx, 0, places=6)
        self.assertAlmostEqual(witness.vector.ty, 1, places=6)
        self.assertIn(stg.rcc8(self.p0.translate(witness.vector), container), (stg.TPP, stg.NTPP))

    def test_exact_fit_tppi(self):
        """Inverse containment keeps exact fits as well"""
        sol = stt.solution_set(box(0, 0, 2, 1), self.p0, 'tppi', self.ws)
        self.assertFalse(sol.is_empty)
        witness = stt.minimal_witness(sol, origin=(-0.5, 0))
        self.assertEqual(stg.rcc8(box(0, 0, 2, 1).translate(witness.vector), self.p0), stg.TPPI)

    def test_grid_optimum(self):
        """Minimal witnesses are as close to the origin as the closest feasible lattice point"""
        rng = np.random.default_rng(23)
        ws = stt.WorkspaceConfig((-4, -4, 4, 4), grid_step=0.25)
        tolerance = ws.grid_step * np.sqrt(2) + 1e-6
        for _ in range(6):
            p0 = stg.random_polygon(rng, (0, 0), 0.8)
            p1 = stg.random_polygon(rng, rng.uniform(-1.5, 1.5, 2), 1.5)
            for relation in ('dc', 'po', 'ntpp'):
                sol = stt.solution_set(p0, p1, relation, ws)
                best = grid_optimum(*grid_solution_set(p0, p1, relation, ws))
                if best is None:
                    continue
                witness = stt.minimal_witness(sol)
                self.assertAlmostEqual(
                    np.linalg.norm(tuple(witness.vector)),
                    np.linalg.norm(best),
                    delta=tolerance,
                    msg=relation,
                )

    def test_empty(self):
        """Empty sets have no witness"""
        with self.assertRaises(stt.NoWitness):
            stt.minimal_witness(stt.SolutionSet.empty(self.ws))

    def test_facts(self):
        """Solution sets are described as polygon facts"""
        sol = stt.solution_set(self.p0, self.p1, 'dc', self.ws)
        lines = stt.solution_set_facts(sol, 'sol')
        self.assertEqual(len(lines), 2)
        self.assertTrue(lines[0].startswith('polygon(sol_0, ('))
        self.assertTrue(lines[1].startswith('polygon(sol_0_hole_0, ('))


if __name__ == '__main__':
    unittest.main()
