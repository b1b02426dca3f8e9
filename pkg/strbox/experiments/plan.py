# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Planning
--------
Abduction of object motions that reach a topological goal without breaking hard constraints.

Every movable object either stays or moves at each step of the horizon, and each move costs a fixed amount.
A move starts a new motion segment, whose translation vector is unknown.
Assignments of moves are tried in order of increasing cost, and the first one whose segments all have
a feasible translation is the plan.
Objects that move together are placed by a backtracking search over candidate vectors of their solution sets.
"""
import heapq
import itertools
import logging
import shapely
from dataclasses import dataclass, field
from typing import Optional
from ..geometry import CONVERSE, DEFAULT_EPS, Polygon, TranslationVector, expand_relation, rcc8
from ..spacetime import TOPOLOGY_UNIVERSAL, Interval, RelationAtom, Scene, Slice, STObject, UnboundEntity
from ..translation import *

__all__ = [
    'NoPlan',
    'PlanProblem',
    'PlanSolution',
    'plan',
    'verify_plan',
    'desk_scene',
    'desk_problem',
]
log = logging.getLogger(__name__)


class NoPlan(LookupError):
    """ Raised when no assignment of moves satisfies the constraints within the horizon. """


@dataclass
class PlanProblem:
    """ Planning problem.

    Args:
        scene (Scene): objects; movable objects need a slice at the start of the horizon
        move_costs (dict): movable object -> non-negative integer cost of one move
        hard_constraints (list): topology :class:`~strbox.spacetime.RelationAtom` objects that hold at every frame of their interval
        goal (RelationAtom): topology atom that should hold at the last frame of the horizon
        horizon (Interval): planned frames
        workspace (WorkspaceConfig, optional): translation space; Default **4 times the scene box**
        max_cost (int, optional): most expensive assignment to try; Default **no limit**
    """

    scene: Scene
    move_costs: dict
    hard_constraints: list
    goal: RelationAtom
    horizon: Interval
    workspace: Optional[WorkspaceConfig] = None
    max_cost: Optional[int] = None

    def __post_init__(self):
        for id, cost in self.move_costs.items():
            if id not in self.scene:
                raise UnboundEntity(f'Unknown movable object {id}')
            if int(cost) != cost or cost < 0:
                raise ValueError(f'Move cost of {id} should be a non-negative integer [{cost}]')
        for atom in list(self.hard_constraints) + [self.goal]:
            if atom.aspect != 'topology':
                raise UnsupportedConstraintShape(f'{atom} is not a topology constraint')
            for arg in atom.args:
                if arg not in self.scene:
                    raise UnboundEntity(f'Unknown object {arg} in {atom}')
        for atom in self.hard_constraints:
            if atom.name not in TOPOLOGY_UNIVERSAL:
                raise UnsupportedConstraintShape(f'Hard constraint {atom} should hold at every frame')
        if self.workspace is None:
            self.workspace = WorkspaceConfig.from_scene(self.scene)

    @property
    def movable(self):
        return sorted(self.move_costs)

    @property
    def frames(self):
        return list(range(self.horizon.start, self.horizon.end + 1))

    def requirements(self, t):
        """ ``(a, b, relations)`` that should hold at frame ``t``. """
        reqs = []
        for atom in self.hard_constraints:
            if t in atom.interval:
                reqs.append((*atom.args, expand_relation(atom.name)))
        if t == self.horizon.end:
            relations = frozenset.intersection(
                *(rel for _, rel in slice_requirements(self.goal.name, [t]))
            )
            reqs.append((*self.goal.args, relations))
        return reqs

    def shape(self, id, t):
        """ Shape of an object that does not move, clamped to its slice range. """
        obj = self.scene[id]
        first, last = obj.span
        return obj.shape_at(min(max(t, first), last))


@dataclass
class PlanSolution:
    """ Cheapest feasible plan.

    Args:
        assignment (dict): movable object -> tuple with one boolean per step, **True** when the object moves
        trajectories (dict): movable object -> list with one :class:`~strbox.translation.Witness` per frame
        total_cost (int): sum of the costs of all moves
    """

    assignment: dict
    trajectories: dict
    total_cost: int
    models_tried: int = field(default=0, compare=False)

    def shape_at(self, id, t):
        for witness in self.trajectories[id]:
            if witness.time == t:
                return witness.slices[0].shape
        raise KeyError(f'No frame {t} in the trajectory of {id}')


def _moves(steps, count):
    for positions in itertools.combinations(range(steps), count):
        yield tuple(i in positions for i in range(steps))


def _count_levels(costs, steps):
    """ Number of moves per object, grouped by total cost, cheapest first. """
    start = (0,) * len(costs)
    heap = [(0, start)]
    seen = {start}
    while heap:
        cost = heap[0][0]
        level = []
        while heap and heap[0][0] == cost:
            _, counts = heapq.heappop(heap)
            level.append(counts)
            for i, k in enumerate(counts):
                if k == steps:
                    continue
                more = counts[:i] + (k + 1,) + counts[i + 1:]
                if more not in seen:
                    seen.add(more)
                    heapq.heappush(heap, (cost + costs[i], more))
        yield cost, level


def _assignments(problem):
    """ Move assignments in increasing cost, ties in lexicographic order.

    Assignments are generated one cost level at a time, so a search that stops early never builds the expensive ones.
    """
    movable = problem.movable
    steps = len(problem.frames) - 1
    costs = [problem.move_costs[id] for id in movable]
    for cost, level in _count_levels(costs, steps):
        options = []
        for counts in level:
            for moves in itertools.product(*(list(_moves(steps, k)) for k in counts)):
                options.append((sum(moves, ()), moves))
        for _, moves in sorted(options):
            yield cost, dict(zip(movable, moves))


def _segments(problem, assignment):
    """ ``(id, frames)`` motion segments after a move, ordered by start frame and object. """
    frames = problem.frames
    segments = []
    for id, moves in assignment.items():
        current = None
        for step, moved in enumerate(moves):
            t = frames[step + 1]
            if moved:
                current = [t]
                segments.append((id, current))
            elif current is not None:
                current.append(t)
    return sorted(segments, key=lambda s: (s[1][0], s[0]))


class _Solver:
    max_candidates = 12
    max_nodes = 500

    def __init__(self, problem, eps):
        self.problem = problem
        self.eps = eps
        self.base = {id: problem.scene[id].shape_at(problem.horizon.start) for id in problem.movable}

    def feasible(self, assignment):
        vectors = {(id, t): TranslationVector(0, 0) for id in self.problem.movable for t in self.problem.frames}
        resolved = {(id, t) for id in self.problem.movable for t in self.problem.frames}
        segments = _segments(self.problem, assignment)
        for id, frames in segments:
            resolved -= {(id, t) for t in frames}

        self.nodes = 0
        # Fixed frames first: nothing can repair a violation there
        for t in self.problem.frames:
            if not self._holds(t, vectors, resolved):
                return None

        return self._search(segments, vectors, resolved)

    def _shape(self, id, t, vectors):
        if id in self.base:
            return self.base[id].translate(vectors[(id, t)])
        return self.problem.shape(id, t)

    def _known(self, id, t, resolved):
        return id not in self.base or (id, t) in resolved

    def _holds(self, t, vectors, resolved):
        for a, b, rel in self.problem.requirements(t):
            if self._known(a, t, resolved) and self._known(b, t, resolved):
                if rcc8(self._shape(a, t, vectors), self._shape(b, t, vectors), self.eps) not in rel:
                    return False
        return True

    def _search(self, pending, vectors, resolved):
        if len(pending) == 0:
            return dict(vectors)

        index = self._next(pending, resolved)
        id, frames = pending[index]
        rest = pending[:index] + pending[index + 1:]
        keys = {(id, t) for t in frames}
        for vector in self._candidates(id, frames, vectors, resolved):
            self.nodes += 1
            if self.nodes > self.max_nodes:
                log.debug(f'Gave up on {self.max_nodes} candidate vectors')
                return None
            for key in keys:
                vectors[key] = vector
            resolved |= keys
            if all(self._holds(t, vectors, resolved) for t in frames):
                result = self._search(rest, vectors, resolved)
                if result is not None:
                    return result
            resolved -= keys
        return None

    def _next(self, pending, resolved):
        """ Segment with the most requirements on known objects, among those whose object has no earlier open segment. """
        best, best_key = None, None
        for i, (id, frames) in enumerate(pending):
            if any(other == id and f[0] < frames[0] for other, f in pending):
                continue
            constrained = len(self._requirements(id, frames, resolved))
            key = (-constrained, frames[0], id)
            if best_key is None or key < best_key:
                best, best_key = i, key
        return best

    def _requirements(self, id, frames, resolved):
        """ ``(t, other, relations)`` seen from ``id``, for partners whose shape is known. """
        reqs = []
        for t in frames:
            for a, b, rel in self.problem.requirements(t):
                if id not in (a, b) or a == b:
                    continue
                other = b if a == id else a
                if not self._known(other, t, resolved):
                    continue
                if a != id:
                    rel = frozenset(CONVERSE[r] for r in rel)
                reqs.append((t, other, rel))
        return reqs

    def _candidates(self, id, frames, vectors, resolved):
        """ Feasible vectors for a segment, the ones closest to the previous vector of the object first. """
        origin = vectors[(id, frames[0] - 1)]
        reqs = self._requirements(id, frames, resolved)
        if len(reqs) == 0:
            yield origin
            return

        sets = [
            solution_set(self.base[id], self._shape(other, t, vectors), rel, self.problem.workspace, self.eps)
            for t, other, rel in reqs
        ]
        solutions = intersect_solution_sets(sets)
        if solutions.is_empty:
            return

        seen = set()
        for vector in self._samples(solutions, origin):
            key = (round(vector.tx, 9), round(vector.ty, 9))
            if key in seen:
                continue
            seen.add(key)
            yield vector
            if len(seen) >= self.max_candidates:
                break

    def _samples(self, solutions, origin):
        yield minimal_witness(solutions, tuple(origin), True).vector
        yield minimal_witness(solutions, tuple(origin), False).vector
        if solutions.exact is not None:
            for part in shapely.get_parts(solutions.exact):
                point = part.representative_point()
                yield TranslationVector(point.x, point.y)
        for poly in solutions.region.polygons:
            point = poly.representative_point()
            yield TranslationVector(point.x, point.y)
            for x, y in poly.exterior.coords[:-1]:
                yield TranslationVector(x, y)


def _trajectories(problem, vectors, solver):
    trajectories = {}
    for id in problem.movable:
        trajectories[id] = [
            Witness(vectors[(id, t)], (Slice(t, solver.base[id].translate(vectors[(id, t)])),), t)
            for t in problem.frames
        ]
    return trajectories


def verify_plan(problem, solution, eps=None):
    """ Whether every hard constraint and the goal hold on the frames of a plan, checked with rcc8. """
    eps = eps or DEFAULT_EPS

    def shape(id, t):
        if id in solution.trajectories:
            return solution.shape_at(id, t)
        return problem.shape(id, t)

    for t in problem.frames:
        for a, b, rel in problem.requirements(t):
            if rcc8(shape(a, t), shape(b, t), eps) not in rel:
                log.debug(f'Plan breaks {rel} between {a} and {b} at {t}')
                return False
    return True


def plan(problem, eps=None):
    """ Cheapest assignment of moves that reaches the goal.

    Args:
        problem (PlanProblem): objects, costs, constraints, goal and horizon
        eps (Epsilon, optional): Tolerances; Default **Epsilon()**

    Returns:
        PlanSolution: assignment, per-frame witnesses of every movable object and total cost

    Raises:
        NoPlan: no assignment up to ``max_cost`` is feasible

    Note:
        Segments are solved one at a time, the one with the most requirements on already placed objects first.
        Each segment tries the feasible vectors closest to the vector of the previous segment of the same object first,
        then points spread over its solution set, and backtracks when a later segment has no feasible vector.
        An assignment is given up after a bounded number of candidate vectors.
    """
    eps = eps or DEFAULT_EPS
    solver = _Solver(problem, eps)
    tried = 0
    for cost, assignment in _assignments(problem):
        if problem.max_cost is not None and cost > problem.max_cost:
            break
        tried += 1
        vectors = solver.feasible(assignment)
        if vectors is None:
            continue

        solution = PlanSolution(assignment, _trajectories(problem, vectors, solver), cost, tried)
        if not verify_plan(problem, solution, eps):
            log.debug(f'Assignment {assignment} does not verify, trying the next one')
            continue
        log.info(f'Found plan with cost {cost} after {tried} assignment(s)')
        return solution

    raise NoPlan(f'No feasible plan within {problem.horizon} after {tried} assignment(s)')


def _box(x, y, w, h):
    return Polygon([(x, y), (x + w, y), (x + w, y + h), (x, y + h)])


def desk_scene():
    """ Hand in front of a laptop, with a cup of coffee behind the laptop, seen from above.

    Returns:
        Scene: ``hand``, ``laptop`` and ``cup`` with one slice at frame 0
    """
    return Scene(
        [
            STObject('hand', {0: _box(2.5, 0, 1, 1)}),
            STObject('laptop', {0: _box(0, 2, 6, 2)}),
            STObject('cup', {0: _box(2.5, 5, 1, 1)}),
        ]
    )


def desk_problem(horizon=2):
    """ Get the cup without touching the laptop: hand, cup and laptop all movable, the hand being cheapest to move. """
    interval = Interval(0, horizon)
    return PlanProblem(
        desk_scene(),
        {'hand': 1, 'cup': 5, 'laptop': 10},
        [
            RelationAtom('topology', 'dc', ('hand', 'laptop'), interval),
            RelationAtom('topology', 'dc', ('cup', 'laptop'), interval),
        ],
        RelationAtom('topology', 'ec', ('hand', 'cup'), Interval(horizon, horizon)),
        interval,
    )
