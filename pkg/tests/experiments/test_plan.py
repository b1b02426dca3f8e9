# -*- coding: utf-8 -*-
import itertools
import unittest
import numpy as np
import strbox.geometry as stg
import strbox.spacetime as sts
from strbox.experiments import NoPlan, PlanProblem, desk_problem, desk_scene, grid_solution_set, plan, verify_plan
from strbox.experiments.plan import _assignments


def box(x, y, w=1, h=1):
    return stg.Polygon([(x, y), (x + w, y), (x + w, y + h), (x, y + h)])


def still_scene(**shapes):
    return sts.Scene([sts.STObject(id, {0: shape}) for id, shape in shapes.items()])


class TestPlan(unittest.TestCase):
    def test_desk(self):
        """Moving the hand once is the cheapest way to reach the cup"""
        problem = desk_problem()
        solution = plan(problem)
        self.assertEqual(solution.total_cost, 1)
        self.assertFalse(any(solution.assignment['cup']))
        self.assertFalse(any(solution.assignment['laptop']))
        self.assertEqual(sum(solution.assignment['hand']), 1)
        self.assertTrue(verify_plan(problem, solution))

        scene = desk_scene()
        self.assertEqual(stg.rcc8(solution.shape_at('hand', 2), scene['cup'].shape_at(0)), stg.EC)
        for t in problem.frames:
            self.assertEqual(stg.rcc8(solution.shape_at('hand', t), scene['laptop'].shape_at(0)), stg.DC)

    def test_trajectories(self):
        """Every movable object has one witness per frame"""
        problem = desk_problem()
        solution = plan(problem)
        for id in problem.movable:
            self.assertEqual([w.time for w in solution.trajectories[id]], problem.frames)

    def test_satisfied(self):
        """Goals that already hold cost nothing"""
        problem = PlanProblem(
            desk_scene(),
            {'hand': 1},
            [],
            sts.RelationAtom('topology', 'dc', ('hand', 'cup'), sts.Interval(1, 1)),
            sts.Interval(0, 1),
        )
        solution = plan(problem)
        self.assertEqual(solution.total_cost, 0)
        self.assertEqual(solution.assignment, {'hand': (False,)})

    def test_no_plan(self):
        """A hand cannot become a proper part of a cup of the same size"""
        problem = PlanProblem(
            desk_scene(),
            {'hand': 1},
            [],
            sts.RelationAtom('topology', 'pp', ('hand', 'cup'), sts.Interval(2, 2)),
            sts.Interval(0, 2),
        )
        with self.assertRaises(NoPlan):
            plan(problem)

    def test_max_cost(self):
        """Assignments above the cost limit are not tried"""
        problem = desk_problem()
        problem.max_cost = 0
        with self.assertRaises(NoPlan):
            plan(problem)

    def test_invalid(self):
        """Problems check their objects, costs and constraints"""
        goal = sts.RelationAtom('topology', 'ec', ('hand', 'cup'), sts.Interval(1, 1))
        with self.assertRaises(sts.UnboundEntity):
            PlanProblem(desk_scene(), {'foot': 1}, [], goal, sts.Interval(0, 1))
        with self.assertRaises(ValueError):
            PlanProblem(desk_scene(), {'hand': -1}, [], goal, sts.Interval(0, 1))
        moving = sts.RelationAtom('movement', 'moves', ('hand',), sts.Interval(0, 1))
        with self.assertRaises(ValueError):
            PlanProblem(desk_scene(), {'hand': 1}, [moving], goal, sts.Interval(0, 1))


    def test_move_together(self):
        """Two objects that move in the same frame are placed jointly"""
        problem = PlanProblem(
            still_scene(a=box(-20, 0), b=box(20, 0), c=box(0, 10, 4, 4)),
            {'a': 1, 'b': 1},
            [sts.RelationAtom('topology', 'ntpp', ('b', 'c'), sts.Interval(1, 1))],
            sts.RelationAtom('topology', 'ec', ('a', 'b'), sts.Interval(1, 1)),
            sts.Interval(0, 1),
        )
        solution = plan(problem)
        self.assertEqual(solution.total_cost, 2)
        self.assertEqual(solution.assignment, {'a': (True,), 'b': (True,)})
        self.assertTrue(verify_plan(problem, solution))
        self.assertEqual(stg.rcc8(solution.shape_at('b', 1), box(0, 10, 4, 4)), stg.NTPP)
        self.assertEqual(stg.rcc8(solution.shape_at('a', 1), solution.shape_at('b', 1)), stg.EC)

    def test_move_in_turn(self):
        """Objects are placed jointly when their constraints hold at a later frame"""
        problem = PlanProblem(
            still_scene(a=box(-20, 0), b=box(20, 0), c=box(0, 10, 4, 4)),
            {'a': 1, 'b': 1},
            [sts.RelationAtom('topology', 'ntpp', ('b', 'c'), sts.Interval(2, 2))],
            sts.RelationAtom('topology', 'ec', ('a', 'b'), sts.Interval(2, 2)),
            sts.Interval(0, 2),
        )
        solution = plan(problem)
        self.assertEqual(solution.total_cost, 2)
        self.assertTrue(verify_plan(problem, solution))


class TestOptimality(unittest.TestCase):
    def test_assignment_order(self):
        """Assignments come in increasing cost and lexicographic order, like a sorted enumeration of all of them"""
        problem = PlanProblem(
            still_scene(a=box(0, 0), b=box(3, 0), c=box(6, 0)),
            {'a': 1, 'b': 2, 'c': 0},
            [],
            sts.RelationAtom('topology', 'dc', ('a', 'b'), sts.Interval(2, 2)),
            sts.Interval(0, 2),
        )
        expected = []
        for bits in itertools.product((False, True), repeat=6):
            assignment = {id: bits[2 * i:2 * i + 2] for i, id in enumerate('abc')}
            cost = sum(problem.move_costs[id] * sum(moves) for id, moves in assignment.items())
            expected.append((cost, bits, assignment))
        expected.sort(key=lambda e: (e[0], e[1]))
        self.assertEqual(list(_assignments(problem)), [(cost, a) for cost, _, a in expected])

    def test_assignments_lazy(self):
        """The cheapest assignments are available without building every assignment"""
        shapes = {f'o{i:02d}': box(3 * i, 0) for i in range(16)}
        problem = PlanProblem(
            still_scene(**shapes),
            {id: 1 for id in shapes},
            [],
            sts.RelationAtom('topology', 'dc', ('o00', 'o01'), sts.Interval(4, 4)),
            sts.Interval(0, 4),
        )
        first = list(itertools.islice(_assignments(problem), 65))
        self.assertEqual(first[0], (0, {id: (False,) * 4 for id in shapes}))
        self.assertEqual([cost for cost, _ in first], [0] + [1] * 64)

    def test_exhaustive_single_mover(self):
        """Plans are as cheap as a lattice search over every assignment of one movable object"""
        rng = np.random.default_rng(5)
        mover = stg.random_polygon(rng, (0, 0), 1.0)
        target = stg.random_polygon(rng, (4, 0), 2.0)
        wall = stg.random_polygon(rng, (0, 4), 1.5)
        objects = still_scene(m=mover, f=target, w=wall)
        horizon = sts.Interval(0, 1)
        hard = [sts.RelationAtom('topology', 'dc', ('m', 'w'), horizon)]

        for relation in ('dc', 'ec', 'po', 'pp', 'ntpp', 'ppi'):
            goal = sts.RelationAtom('topology', relation, ('m', 'f'), sts.Interval(1, 1))
            problem = PlanProblem(objects, {'m': 1}, hard, goal, horizon)
            ws = problem.workspace
            step = ws.width / 40

            if stg.rcc8(mover, target) in stg.expand_relation(relation):
                expected = 0
            else:
                points, member = grid_solution_set(mover, target, relation, ws, step)
                _, free = grid_solution_set(mover, wall, 'dc', ws, step)
                expected = 1 if np.any(member & free) else None

            try:
                solution = plan(problem)
            except NoPlan:
                self.assertIsNone(expected, f'{relation}: lattice search found a plan')
                continue
            self.assertTrue(verify_plan(problem, solution), relation)
            if expected is not None:
                self.assertEqual(solution.total_cost, expected, relation)


if __name__ == '__main__':
    unittest.main()
