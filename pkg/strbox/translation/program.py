# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Translated programs
-------------------
Consistency of relation atoms that involve unground translations of ground objects.

Interval atoms are split in slice requirements.
Universal requirements constrain every frame, while existential requirements are realized at one frame of choice.
Every combination of choices whose per-slot intersections are non-empty is a model.
"""
import itertools
import logging
from dataclasses import dataclass, field, replace
from ..geometry import CONVERSE, DC, RELATION_GROUPS, expand_relation, rcc8
from ..spacetime import *
from .solutionset import *
from .workspace import *

__all__ = [
    'UnsupportedConstraintShape',
    'UngroundTranslation',
    'Requirement',
    'TranslationModel',
    'TranslationResult',
    'slice_requirements',
    'check_translated_program',
    'enumerate_translation_models',
]
log = logging.getLogger(__name__)


class UnsupportedConstraintShape(ValueError):
    """ Raised for atoms that cannot be solved with the solution sets of a single unground object. """


@dataclass(frozen=True)
class UngroundTranslation:
    """ Object whose slices are the slices of a ground source, moved by unknown vectors.

    Args:
        source (str): ground object
        target (str): translated object
        shared_vector (bool, optional): one vector for every slice instead of one per slice; Default **True**
    """

    source: str
    target: str
    shared_vector: bool = True

    def __post_init__(self):
        if self.source == self.target:
            raise ValueError(f'Object {self.source} cannot be a translation of itself')


@dataclass(frozen=True)
class Requirement:
    """ Slice relations between a translated object and a ground object at one of the given frames. """

    target: str
    other: str
    times: tuple
    relations: frozenset
    atom: RelationAtom

    @property
    def existential(self):
        return len(self.times) > 1


@dataclass
class TranslationModel:
    """ One way to satisfy every requirement.

    Args:
        choices (dict): requirement index -> frame that realizes it
        solution_sets (dict): slot -> intersected :class:`SolutionSet`
        witnesses (dict): target -> tuple of :class:`Witness`
    """

    choices: dict
    solution_sets: dict
    witnesses: dict


@dataclass
class TranslationResult:
    """ Outcome of :func:`check_translated_program`.

    Note:
        Solution sets are keyed by slot: ``(target,)`` for shared vectors, ``(target, time)`` for per-slice vectors.
    """

    consistent: bool
    per_slice_sets: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    models: list = field(default_factory=list)
    reason: str = ''
    violated: tuple = ()

    def __bool__(self):
        return self.consistent


def slice_requirements(name, frames):
    """ Split an interval topology relation in ``(times, relations)`` slice requirements.

    A requirement holds when the slice relation is one of ``relations`` at one of ``times``.
    """
    frames = tuple(frames)
    if name in TOPOLOGY_UNIVERSAL:
        rel = expand_relation(name)
        return [((t,), rel) for t in frames]
    if name in TOPOLOGY_EXISTENTIAL:
        return [(frames, expand_relation(name))]
    if name in TOPOLOGY_MIXED:
        always, sometimes = TOPOLOGY_MIXED[name]
        return slice_requirements(always, frames) + [(frames, expand_relation(sometimes))]
    if name == 'split':
        return [((frames[0],), RELATION_GROUPS['p']), ((frames[-1],), frozenset((DC,)))]
    if name == 'merge':
        return [((frames[0],), frozenset((DC,))), ((frames[-1],), RELATION_GROUPS['p'])]
    raise ValueError(f'Unknown topology relation {name}')


class _Problem:
    def __init__(self, scene, translations, atoms, workspace, cfg):
        self.scene = scene
        self.cfg = cfg
        self.eps = cfg.eps
        self.workspace = workspace
        self.translations = {}
        for tr in translations:
            if tr.target in self.translations:
                raise ValueError(f'Object {tr.target} is declared as a translation twice')
            if not scene[tr.source].is_ground:
                raise MissingSlices(f'Translation source {tr.source} has no slices')
            self.translations[tr.target] = tr

        self.ground = []
        self.requirements = []
        for atom in atoms:
            self._add(atom)

        self.slots = {}
        for target, tr in sorted(self.translations.items()):
            if tr.shared_vector:
                self.slots[(target,)] = None
            else:
                times = set(scene[tr.source].times)
                times.update(t for r in self.requirements if r.target == target for t in r.times)
                for t in sorted(times):
                    self.slots[(target, t)] = t

        self._regions = {}
        self._intersections = {}
        self._witnesses = {}

    def _add(self, atom):
        targets = [a for a in atom.args if a in self.translations]
        if len(targets) == 0:
            self.ground.append((atom, atom))
            return
        if len(targets) > 1:
            raise UnsupportedConstraintShape(f'{atom} relates two unground objects')

        target = targets[0]
        tr = self.translations[target]
        if atom.aspect == 'size' or (
            atom.aspect == 'movement' and len(atom.args) == 1 and tr.shared_vector
        ):
            args = tuple(tr.source if a == target else a for a in atom.args)
            self.ground.append((atom, replace(atom, args=args)))
            return
        if atom.aspect != 'topology':
            raise UnsupportedConstraintShape(f'{atom} depends on the unknown translation of {target}')

        other = atom.args[1] if atom.args[0] == target else atom.args[0]
        swap = atom.args[1] == target
        frames = common_frames((self.scene[tr.source], self.scene[other]), atom.interval)
        for times, rel in slice_requirements(atom.name, frames):
            if swap:
                rel = frozenset(CONVERSE[r] for r in rel)
            self.requirements.append(Requirement(target, other, tuple(times), rel, atom))

    def violated(self):
        return tuple(
            original
            for original, atom in self.ground
            if not atom_holds(self.scene, atom, self.cfg)
        )

    def slot(self, target, t):
        return (target,) if self.translations[target].shared_vector else (target, t)

    def region(self, idx, t):
        key = (idx, t)
        if key not in self._regions:
            req = self.requirements[idx]
            source = self.scene[self.translations[req.target].source]
            self._regions[key] = solution_set(
                source.shape_at(t),
                self.scene[req.other].shape_at(t),
                req.relations,
                self.workspace,
                self.eps,
            )
        return self._regions[key]

    def intersection(self, keys):
        if keys not in self._intersections:
            sets = [self.region(idx, t) for idx, t in sorted(keys)]
            if len(sets) == 0:
                self._intersections[keys] = SolutionSet.full(self.workspace)
            else:
                self._intersections[keys] = intersect_solution_sets(sets)
        return self._intersections[keys]

    def _verified(self, vector, keys):
        for idx, t in keys:
            req = self.requirements[idx]
            source = self.scene[self.translations[req.target].source]
            rel = rcc8(source.shape_at(t).translate(vector), self.scene[req.other].shape_at(t), self.eps)
            if rel not in req.relations:
                return False
        return True

    def witness(self, slot, keys):
        key = (slot, keys)
        if key not in self._witnesses:
            solutions = self.intersection(keys)
            witness = minimal_witness(solutions)
            if not self._verified(witness.vector, keys):
                witness = minimal_witness(solutions, prefer_exact=False)
                if not self._verified(witness.vector, keys):
                    log.warning(f'Witness {tuple(witness.vector)} for {slot} does not re-verify with rcc8')

            tr = self.translations[slot[0]]
            source = self.scene[tr.source]
            if tr.shared_vector:
                witness = witness.ground(source)
            else:
                t = slot[1]
                witness = Witness(
                    witness.vector, (Slice(t, source.shape_at(t).translate(witness.vector)),), t
                )
            self._witnesses[key] = witness
        return self._witnesses[key]

    def model(self, state, choices):
        sets = {slot: self.intersection(keys) for slot, keys in state.items()}
        witnesses = {}
        for slot, keys in state.items():
            witnesses.setdefault(slot[0], []).append(self.witness(slot, keys))
        witnesses = {k: tuple(v) for k, v in witnesses.items()}
        return TranslationModel(dict(choices), sets, witnesses)

    def models(self):
        state = {slot: frozenset() for slot in self.slots}
        existential = []
        for idx, req in enumerate(self.requirements):
            if req.existential:
                existential.append(idx)
            else:
                slot = self.slot(req.target, req.times[0])
                state[slot] = state[slot] | {(idx, req.times[0])}

        for slot, keys in state.items():
            if self.intersection(keys).is_empty:
                log.debug(f'Universal requirements of {slot} have no common translation')
                return

        yield from self._search(existential, 0, state, {})

    def _search(self, existential, k, state, choices):
        if k == len(existential):
            yield self.model(state, choices)
            return

        idx = existential[k]
        req = self.requirements[idx]
        for t in req.times:
            slot = self.slot(req.target, t)
            keys = state[slot] | {(idx, t)}
            if self.intersection(keys).is_empty:
                continue
            yield from self._search(existential, k + 1, {**state, slot: keys}, {**choices, idx: t})


def _problem(scene, translations, atoms, workspace, cfg):
    cfg = cfg or DeriveConfig()
    if workspace is None:
        workspace = WorkspaceConfig.from_scene(scene)
    return _Problem(scene, list(translations), list(atoms), workspace, cfg)


def enumerate_translation_models(scene, translations, atoms, workspace=None, cfg=None):
    """ Lazily enumerate the models of a translated program.

    Args:
        scene (Scene): ground objects, including the translation sources
        translations (list): :class:`UngroundTranslation` objects
        atoms (list): asserted :class:`~strbox.spacetime.RelationAtom` objects
        workspace (WorkspaceConfig, optional): translation space; Default **4 times the scene box**
        cfg (DeriveConfig, optional): derivation parameters; Default **DeriveConfig()**

    Yields:
        TranslationModel: models, ordered by the frames chosen for the existential requirements
    """
    problem = _problem(scene, translations, atoms, workspace, cfg)
    if problem.violated():
        return
    yield from problem.models()


def check_translated_program(scene, translations, atoms, workspace=None, cfg=None, limit=1):
    """ Decide whether the unground translations can satisfy every atom.

    Args:
        scene (Scene): ground objects, including the translation sources
        translations (list): :class:`UngroundTranslation` objects
        atoms (list): asserted :class:`~strbox.spacetime.RelationAtom` objects
        workspace (WorkspaceConfig, optional): translation space; Default **4 times the scene box**
        cfg (DeriveConfig, optional): derivation parameters; Default **DeriveConfig()**
        limit (int, optional): number of models to collect; Default **1**

    Returns:
        TranslationResult: consistency, solution sets and minimal witnesses of the first model

    Raises:
        UnsupportedConstraintShape: an atom relates two unground objects, or depends on unknown per-slice motion
    """
    problem = _problem(scene, translations, atoms, workspace, cfg)
    violated = problem.violated()
    if violated:
        reasons = ', '.join(str(a) for a in violated)
        return TranslationResult(False, reason=f'Ground atoms do not hold: {reasons}', violated=violated)

    models = list(itertools.islice(problem.models(), limit))
    if len(models) == 0:
        return TranslationResult(False, reason='No translation satisfies every requirement')

    first = models[0]
    log.debug(f'Translated program is consistent, {len(models)} model(s) collected')
    return TranslationResult(True, first.solution_sets, first.witnesses, models)
