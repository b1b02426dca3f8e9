# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Evaluation
----------
Turns a parsed fact program into a result set.

``spacetime`` directives derive relations from the slices of ground objects.
Asserted atoms on ground objects are verified on their geometry,
atoms that involve an unground translation are solved with solution sets
and atoms on objects without slices go through the qualitative closure.
"""
import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from ..algebra import QualitativeNetwork, RuleTable, enumerate_scenarios, path_consistency
from ..geometry import TranslationVector
from ..spacetime import *
from ..translation import UngroundTranslation, Witness, check_translated_program
from .filters import filter_discard, program_filters
from .parser import STATUSES

__all__ = ['MixedModeUnsupported', 'ResultSet', 'evaluate', 'build_scene']
log = logging.getLogger(__name__)


class MixedModeUnsupported(ValueError):
    """ Raised when a program both asserts and derives the same relations, or derives relations of an unground object. """


@dataclass
class ResultSet:
    """ Outcome of evaluating a fact program.

    Args:
        status (str): consistent, inconsistent or derived
        atoms (list): derived :class:`~strbox.spacetime.RelationAtom` objects, kept sorted
        witnesses (dict): unground entity -> tuple of :class:`~strbox.translation.Witness`
        violated (list): asserted atoms that do not hold, kept sorted
        reason (str): explanation of an inconsistent status
        solution_sets (dict): per-slot solution sets of translated objects; not serialized
    """

    status: str = 'consistent'
    atoms: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    violated: list = field(default_factory=list)
    reason: str = field(default='', compare=False)
    solution_sets: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f'Unknown status {self.status}, expected one of {STATUSES}')
        self.atoms = sorted(set(self.atoms))
        self.violated = sorted(set(self.violated))
        self.witnesses = {k: tuple(self.witnesses[k]) for k in sorted(self.witnesses)}

    @property
    def consistent(self):
        return self.status != 'inconsistent'

    @property
    def is_empty(self):
        return not (self.atoms or self.witnesses or self.violated)

    @classmethod
    def from_program(cls, prog):
        """ Rebuild a result set from the result facts of a parsed program.

        Asserted atoms become the result atoms, ``spatial`` and ``translation_vector`` facts become witnesses.
        """
        vectors = defaultdict(list)
        for entity, time, tx, ty in prog.vectors:
            vectors[entity].append((time, TranslationVector(tx, ty)))

        slices = defaultdict(list)
        for entity, ref in prog.witnesses:
            if isinstance(ref, tuple):
                items = ref
            else:
                items = [(s.time, s.polygon) for s in prog.slices if s.entity == ref]
            slices[entity].extend(Slice(t, prog.polygon(pid)) for t, pid in sorted(items))

        witnesses = {}
        for entity in sorted(set(vectors) | set(slices)):
            entries = vectors.get(entity, [(None, TranslationVector(0, 0))])
            witnesses[entity] = tuple(
                Witness(
                    vector,
                    tuple(s for s in slices[entity] if time is None or s.time == time),
                    time,
                )
                for time, vector in sorted(entries, key=lambda e: (e[0] is not None, e[0] or 0))
            )

        return cls(
            prog.status or 'consistent',
            list(prog.assertions),
            witnesses,
            list(prog.violated),
        )


def build_scene(prog, eps=None):
    """ Scene and unground translations of a fact program.

    Args:
        prog (FactProgram): parsed program
        eps (Epsilon, optional): Tolerances for polygon validation

    Returns:
        tuple: :class:`~strbox.spacetime.Scene` and list of :class:`~strbox.translation.UngroundTranslation`

    Note:
        ``translation(Pg1, Pg2)`` declares an unground object ``Pg2``.
        Its source is the entity ``Pg1``, or else the single entity whose slices use polygon ``Pg1``.
        A polygon that no entity uses becomes a static object with that name on every frame of the scene.
    """
    shapes = defaultdict(dict)
    for decl in prog.slices:
        shapes[decl.entity][decl.time] = prog.polygon(decl.polygon, eps)

    objects = {e: STObject(e, shapes.get(e)) for e in prog.objects}
    times = sorted({decl.time for decl in prog.slices}) or [0]

    translations = []
    for pg1, pg2 in prog.translations:
        if pg1 in objects:
            source = pg1
        else:
            users = sorted({d.entity for d in prog.slices if d.polygon == pg1})
            if len(users) > 1:
                raise ValueError(f'Polygon {pg1} is a slice of several entities {users}, translate one of them')
            if users:
                source = users[0]
            else:
                source = pg1
                polygon = prog.polygon(pg1, eps)
                objects[pg1] = STObject(pg1, {t: polygon for t in times})
        if pg2 in objects:
            raise ValueError(f'Translation {pg2} clashes with a declared entity')
        translations.append(UngroundTranslation(source, pg2))

    return Scene(objects.values()), translations


def _is_variable(arg):
    return arg[0].isupper() or arg[0] == '_'


def _expand(directive, ground):
    """ Object tuples a directive applies to. """
    args = directive.args
    if len(args) == 1:
        return [(a,) for a in ground] if _is_variable(args[0]) else [args]

    a, b = args
    if _is_variable(a) and _is_variable(b):
        if a == b:
            log.warning(f'Directive {directive} relates {a} to itself, nothing to derive')
            return []
        return list(itertools.combinations(ground, 2))
    if _is_variable(a):
        return [(x, b) for x in ground if x != b]
    if _is_variable(b):
        return [(a, x) for x in ground if x != a]
    return [args]


def _derive(scene, prog, cfg, targets):
    ground = [i for i in scene if scene[i].is_ground]
    tasks = []
    for directive in prog.directives:
        for args in _expand(directive, ground):
            for arg in args:
                if arg in targets:
                    raise MixedModeUnsupported(f'Cannot derive relations of unground object {arg}')
                if arg not in scene:
                    raise UnboundEntity(f'Unknown object {arg}')
            tasks.append((args, directive))

    atoms = set()
    keys = set()
    for args, directive in tasks:
        if len(args) == 1:
            for aspect in directive.aspects:
                keys.add((aspect, frozenset(args), directive.interval))
                if aspect == 'size':
                    atoms |= derive_size(scene[args[0]], None, directive.interval, cfg)
                elif aspect == 'movement':
                    atoms |= derive_movement(scene[args[0]], None, directive.interval, cfg)
        else:
            for aspect in directive.aspects:
                keys.add((aspect, frozenset(args), directive.interval))
                keys.update((aspect, frozenset((a,)), directive.interval) for a in args)
            sub = Scene(scene[a] for a in args)
            atoms.update(derive_scene(sub, [args], directive.interval, directive.aspects, cfg))

    log.debug(f'Derived {len(atoms)} atoms for {len(tasks)} directive tasks')
    return atoms, keys


def _qualitative(scene, atoms, table, cfg, search):
    """ Closure of the atoms on objects without slices, one network per interval. """
    by_interval = defaultdict(list)
    for atom in atoms:
        by_interval[atom.interval].append(atom)

    for interval, group in sorted(by_interval.items()):
        nodes = sorted({a for atom in group for a in atom.args})
        net = QualitativeNetwork.from_atoms(group, nodes)

        ground = [n for n in nodes if scene[n].is_ground]
        for a, b in itertools.combinations(ground, 2):
            try:
                base = history_relation(scene[a], scene[b], interval, cfg.eps)
            except MissingSlices:
                continue
            net.add_constraint(a, b, base)

        closed = path_consistency(net, table)
        if not closed:
            return f'Qualitative constraints on {interval} are inconsistent: {closed.reason}'
        if search and not enumerate_scenarios(closed, table):
            return f'Qualitative constraints on {interval} have no atomic scenario'
    return ''


def evaluate(prog, cfg=None, workspace=None, table=None, limit=1, search=False):
    """ Evaluate a fact program.

    Args:
        prog (FactProgram): parsed program
        cfg (DeriveConfig, optional): derivation parameters; Default **DeriveConfig()**
        workspace (WorkspaceConfig, optional): translation space; Default **4 times the scene box**
        table (RuleTable, optional): property rules of the qualitative closure; Default **embedded table**
        limit (int, optional): number of translation models to look for; Default **1**
        search (bool, optional): also look for an atomic scenario after the qualitative closure; Default **False**

    Returns:
        ResultSet: derived atoms, witnesses, violated atoms and status

    Raises:
        UnboundEntity: an atom or directive refers to an unknown entity
        MixedModeUnsupported: an asserted atom is derived as well, or an unground object is derived
    """
    cfg = cfg or DeriveConfig()
    table = table or RuleTable.embedded()
    scene, translations = build_scene(prog, cfg.eps)
    targets = {tr.target for tr in translations}

    derived, keys = _derive(scene, prog, cfg, targets)

    ground, translated, symbolic = [], [], []
    for atom in prog.assertions:
        if (atom.aspect, frozenset(atom.args), atom.interval) in keys:
            raise MixedModeUnsupported(f'{atom} is both asserted and derived')
        if any(a in targets for a in atom.args):
            translated.append(atom)
        elif all(scene[a].is_ground for a in atom.args):
            ground.append(atom)
        else:
            symbolic.append(atom)

    reasons = []
    violated = [atom for atom in ground if not atom_holds(scene, atom, cfg)]
    if violated:
        reasons.append(f'Ground atoms do not hold: {", ".join(str(a) for a in violated)}')

    if symbolic:
        reason = _qualitative(scene, symbolic, table, cfg, search)
        if reason:
            reasons.append(reason)

    witnesses, solution_sets = {}, {}
    if translated:
        result = check_translated_program(scene, translations, translated, workspace, cfg, limit)
        if result:
            witnesses = result.witnesses
            solution_sets = result.per_slice_sets
        else:
            reasons.append(result.reason)
            violated.extend(result.violated)

    atoms = filter_discard(sorted(derived), program_filters(prog.filters, scene, cfg))

    if reasons:
        status = 'inconsistent'
    elif prog.directives and not prog.assertions:
        status = 'derived'
    else:
        status = 'consistent'
    log.info(f'Program is {status}, {len(atoms)} derived atoms')
    return ResultSet(status, atoms, witnesses, violated, '; '.join(reasons), solution_sets)
