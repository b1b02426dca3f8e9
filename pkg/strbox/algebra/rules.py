# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Property rules
--------------
Relation-algebraic properties of the vocabulary, collected in an immutable :class:`RuleTable`.

The embedded table combines rules generated from the composition and expansion tables with the
shipped size and movement rules in ``data/facts.rules``.
:func:`derive_rule_table` re-checks a table against randomly sampled ground scenes.
"""
import enum
import functools
import itertools
import logging
import re
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
import numpy as np
from ..geometry import BASE_RELATIONS, CONVERSE, EQ, Polygon, random_polygon
from ..spacetime import VOCABULARY, STObject, TOPOLOGY_CONVERSE
from ..spacetime import binary_relations, unary_relations
from .tables import *

__all__ = ['RuleKind', 'PropertyRule', 'RuleTable', 'derive_rule_table', 'sample_scene', 'RULES_VERSION']
log = logging.getLogger(__name__)

RULES_VERSION = 1
_HEADER = re.compile(r'^#\s*(version|provenance)\s*:\s*(\S+)\s*$')


class RuleKind(str, enum.Enum):
    """ Kinds of property rule, with their textual names. """

    REFLEXIVE = 'reflexive'
    IRREFLEXIVE = 'irreflexive'
    SYMMETRIC = 'symmetric'
    ASYMMETRIC = 'asymmetric'
    CONVERSE = 'converse'
    IMPLIES = 'implies'
    MUTUALLY_INCONSISTENT = 'mutuallyInconsistent'
    TRANSITIVELY_INCONSISTENT = 'transitivelyInconsistent'

    @property
    def arity(self):
        return _ARITY[self]

    def __str__(self):
        return self.value


_ARITY = {
    RuleKind.REFLEXIVE: 1,
    RuleKind.IRREFLEXIVE: 1,
    RuleKind.SYMMETRIC: 1,
    RuleKind.ASYMMETRIC: 1,
    RuleKind.CONVERSE: 2,
    RuleKind.IMPLIES: 2,
    RuleKind.MUTUALLY_INCONSISTENT: 2,
    RuleKind.TRANSITIVELY_INCONSISTENT: 3,
}

#: Relation name -> number of objects it takes
RELATION_ARITY = {name: n for names in VOCABULARY.values() for name, n in names.items()}
BINARY_FACTS = tuple(
    n for aspect in ('size', 'movement') for n, a in VOCABULARY[aspect].items() if a == 2
)
UNARY_FACTS = tuple(
    n for aspect in ('size', 'movement') for n, a in VOCABULARY[aspect].items() if a == 1
)
TOPOLOGY_NAMES = tuple(VOCABULARY['topology'])


@dataclass(frozen=True, order=True)
class PropertyRule:
    """ One property of the relation vocabulary.

    Args:
        kind (RuleKind or str): rule kind
        relations (tuple): relation names, as many as the kind takes
    """

    kind: RuleKind
    relations: tuple

    def __post_init__(self):
        try:
            object.__setattr__(self, 'kind', RuleKind(self.kind))
        except ValueError as err:
            raise ValueError(
                f'Unknown rule kind {self.kind}, expected one of {[k.value for k in RuleKind]}'
            ) from err

        relations = tuple(self.relations)
        object.__setattr__(self, 'relations', relations)
        if len(relations) != self.kind.arity:
            raise ValueError(f'{self.kind} takes {self.kind.arity} relation(s), got {len(relations)}')
        for name in relations:
            if name not in RELATION_ARITY:
                raise ValueError(f'Unknown relation {name} in rule {self}')

        arities = {RELATION_ARITY[n] for n in relations}
        if len(arities) != 1 or (self.kind != RuleKind.MUTUALLY_INCONSISTENT and arities != {2}):
            raise ValueError(f'Rule {self} mixes or misuses unary relations')

    def __str__(self):
        return ' '.join((str(self.kind), *self.relations))


class RuleTable:
    """ Immutable set of property rules.

    Args:
        rules (iterable): :class:`PropertyRule` objects or ``(kind, relations)`` tuples
        provenance (str, optional): where the rules come from; Default **embedded**
        version (int, optional): format version; Default **current version**

    Raises:
        ValueError: two rules contradict each other
    """

    def __init__(self, rules, provenance='embedded', version=RULES_VERSION):
        clean = set()
        for rule in rules:
            if not isinstance(rule, PropertyRule):
                rule = PropertyRule(*rule)
            clean.add(rule)
        self._rules = frozenset(clean)
        self.provenance = provenance
        self.version = version

        self._index = {kind: set() for kind in RuleKind}
        for rule in self._rules:
            self._index[rule.kind].add(rule.relations)
        self._check()

    def _check(self):
        for kind, opposite in (
            (RuleKind.REFLEXIVE, RuleKind.IRREFLEXIVE),
            (RuleKind.SYMMETRIC, RuleKind.ASYMMETRIC),
        ):
            clash = self._index[kind] & self._index[opposite]
            if clash:
                names = sorted(r[0] for r in clash)
                raise ValueError(f'Relations {names} are both {kind} and {opposite}')

    @classmethod
    def embedded(cls):
        """ Rule table shipped with strbox. """
        return _embedded_table()

    @classmethod
    def parse(cls, text, provenance=None):
        """ Read a rule table from its line format.

        Args:
            text (str): rule lines ``kind rel1 [rel2 [rel3]]`` with ``#`` comments
            provenance (str, optional): overrides the provenance header

        Returns:
            RuleTable: parsed table
        """
        header = {}
        rules = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line:
                continue
            if line.startswith('#'):
                match = _HEADER.match(line)
                if match:
                    header[match.group(1)] = match.group(2)
                continue

            kind, *relations = line.split()
            try:
                rules.append(PropertyRule(kind, tuple(relations)))
            except ValueError as err:
                raise ValueError(f'Invalid rule on line {lineno}: {err}') from err

        if 'version' not in header:
            log.deprecated('Rule table without a version header, assuming the current version')
            version = RULES_VERSION
        else:
            version = int(header['version'])
            if version > RULES_VERSION:
                raise ValueError(f'Rule table version {version} is newer than supported [{RULES_VERSION}]')

        provenance = provenance or header.get('provenance', 'embedded')
        return cls(rules, provenance, version)

    @classmethod
    def load(cls, path):
        return cls.parse(Path(path).read_text())

    def serialize(self):
        """ Text form of the table, sorted so that equal tables give equal text. """
        lines = [f'# version: {self.version}', f'# provenance: {self.provenance}']
        lines.extend(sorted(str(rule) for rule in self._rules))
        return '\n'.join(lines) + '\n'

    def save(self, path):
        Path(path).write_text(self.serialize())

    def has(self, kind, *relations):
        return tuple(relations) in self._index[RuleKind(kind)]

    def of_kind(self, kind):
        """ Sorted relation tuples of every rule of a kind. """
        return sorted(self._index[RuleKind(kind)])

    def composition(self, r1, r2):
        """ Base relations not ruled out by transitive inconsistency after ``r1(a, b)`` and ``r2(b, c)``. """
        ti = self._index[RuleKind.TRANSITIVELY_INCONSISTENT]
        return frozenset(r3 for r3 in BASE_RELATIONS if (r1, r2, r3) not in ti)

    @functools.cached_property
    def composition_masks(self):
        """ ``(256, 256)`` array with the composition of every pair of base relation bitmasks. """
        base = np.zeros((8, 8), dtype=np.int64)
        for i, r1 in enumerate(BASE_RELATIONS):
            for j, r2 in enumerate(BASE_RELATIONS):
                base[i, j] = to_mask(self.composition(r1, r2))

        bits = ((np.arange(256)[:, None] >> np.arange(8)) & 1).astype(bool)
        single = np.bitwise_or.reduce(np.where(bits[None, :, :], base[:, None, :], 0), axis=2)
        return np.bitwise_or.reduce(np.where(bits[:, :, None], single[None, :, :], 0), axis=1)

    @functools.cached_property
    def converse_masks(self):
        """ ``(256,)`` array with the converse of every base relation bitmask. """
        masks = np.zeros(256, dtype=np.int64)
        for m in range(256):
            masks[m] = to_mask(CONVERSE[b] for b in from_mask(m))
        return masks

    @property
    def rules(self):
        return tuple(sorted(self._rules))

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self._rules)

    def __contains__(self, rule):
        return rule in self._rules

    def __eq__(self, other):
        if not isinstance(other, RuleTable):
            return NotImplemented
        return self._rules == other._rules

    def __hash__(self):
        return hash(self._rules)

    def __repr__(self):
        return f'RuleTable({len(self)} rules, provenance={self.provenance})'


def to_mask(bases):
    mask = 0
    for b in bases:
        mask |= 1 << BASE_RELATIONS.index(b)
    return mask


def from_mask(mask):
    return frozenset(b for i, b in enumerate(BASE_RELATIONS) if mask >> i & 1)


def topology_rules():
    """ Property rules of the topology vocabulary, generated from the composition and expansion tables. """
    names = TOPOLOGY_NAMES
    rules = []
    for n in names:
        e = TOPOLOGY_EXPANSION[n]
        if EQ not in e:
            rules.append((RuleKind.IRREFLEXIVE, (n,)))
        if n in IMPLIED[EQ]:
            rules.append((RuleKind.REFLEXIVE, (n,)))
        if not e & frozenset(CONVERSE[b] for b in e):
            rules.append((RuleKind.ASYMMETRIC, (n,)))
        m = TOPOLOGY_CONVERSE.get(n)
        if m == n:
            rules.append((RuleKind.SYMMETRIC, (n,)))
        elif m is not None:
            rules.append((RuleKind.CONVERSE, (n, m)))

    for n, m in itertools.permutations(names, 2):
        en, em = TOPOLOGY_EXPANSION[n], TOPOLOGY_EXPANSION[m]
        if m in implied_by(en):
            rules.append((RuleKind.IMPLIES, (n, m)))
        if not en & em:
            rules.append((RuleKind.MUTUALLY_INCONSISTENT, (n, m)))

    for n1, n2 in itertools.product(names, repeat=2):
        comp = compose(TOPOLOGY_EXPANSION[n1], TOPOLOGY_EXPANSION[n2])
        for n3 in names:
            if not comp & TOPOLOGY_EXPANSION[n3]:
                rules.append((RuleKind.TRANSITIVELY_INCONSISTENT, (n1, n2, n3)))
    return rules


@functools.lru_cache(maxsize=1)
def _embedded_table():
    text = resources.files(__package__).joinpath('data').joinpath('facts.rules').read_text()
    facts = RuleTable.parse(text)
    return RuleTable(itertools.chain(topology_rules(), facts.rules), 'embedded', RULES_VERSION)


def sample_scene(rng, objects=3, frames=3):
    """ Random ground scene for rule checking.

    Shapes are lattice rectangles, so that boundary contact happens often, or random star polygons.
    Objects move in integer steps, sometimes grow or shrink, and sometimes copy another object.

    Args:
        rng (numpy.random.Generator): random number generator
        objects (int, optional): number of objects; Default **3**
        frames (int, optional): number of frames; Default **3**

    Returns:
        list: :class:`STObject` instances ``o0, o1, ...``
    """
    result = []
    for i in range(objects):
        if result and rng.random() < 0.15:
            source = result[int(rng.integers(len(result)))]
            shift = rng.integers(-1, 2, 2) if rng.random() < 0.5 else np.zeros(2)
            result.append(STObject(f'o{i}', {t: s.translate(shift) for t, s in source.slices.items()}))
            continue

        if rng.random() < 0.3:
            base = random_polygon(rng, rng.uniform(0, 5, 2), rng.uniform(0.5, 2))
        else:
            x, y = rng.integers(0, 5, 2)
            w, h = rng.integers(1, 4, 2)
            base = Polygon([(x, y), (x + w, y), (x + w, y + h), (x, y + h)])

        coords = base.coords
        anchor = coords[0]
        scales = np.ones(frames)
        if rng.random() < 0.2:
            scales = np.sort(rng.choice([1.0, 2.0], frames))
            if rng.random() < 0.5:
                scales = scales[::-1]
        steps = rng.integers(-1, 2, (frames, 2)) * (rng.random() < 0.8)
        steps[0] = 0
        offsets = np.cumsum(steps, axis=0)

        slices = {
            t: Polygon(anchor + offsets[t] + (coords - anchor) * scales[t]) for t in range(frames)
        }
        result.append(STObject(f'o{i}', slices))
    return result


_KINDS = tuple(RuleKind)


def _observe(objects, frames, names):
    """ Boolean ``(relations, objects, objects)`` tensor of the relations holding in a scene. """
    index = {n: i for i, n in enumerate(names)}
    n = len(objects)
    h = np.zeros((len(names), n, n), dtype=bool)
    for x, a in enumerate(objects):
        for name in unary_relations(a, frames):
            h[index[name], x, x] = True
        for y, b in enumerate(objects):
            for name in binary_relations(a, b, frames):
                h[index[name], x, y] = True
    return h


def _counterexamples(h, names):
    """ Counterexample counts of every candidate rule shape for a batch of observations ``(scenes, relations, n, n)``. """
    hi = h.astype(np.int64)
    ht = hi.transpose(0, 1, 3, 2)
    diag = np.diagonal(hi, axis1=2, axis2=3)
    binary = np.array([RELATION_ARITY[n] == 2 for n in names])

    pair = np.einsum('saxy,sbxy->ab', hi, hi)
    return {
        RuleKind.IRREFLEXIVE: diag.sum(axis=(0, 2)),
        RuleKind.REFLEXIVE: np.where(binary, (1 - diag).sum(axis=(0, 2)), 0),
        RuleKind.SYMMETRIC: (hi * (1 - ht)).sum(axis=(0, 2, 3)),
        RuleKind.ASYMMETRIC: (hi * ht).sum(axis=(0, 2, 3)),
        RuleKind.CONVERSE: np.einsum('saxy,sbxy->ab', hi, 1 - ht),
        RuleKind.IMPLIES: np.einsum('saxy,sbxy->ab', hi, 1 - hi),
        RuleKind.MUTUALLY_INCONSISTENT: pair,
        RuleKind.TRANSITIVELY_INCONSISTENT: np.einsum('saxy,sbyz,scxz->abc', hi, hi, hi, optimize=True),
    }


def _candidates(names):
    """ Candidate rules that involve the size or movement vocabulary. """
    facts = set(BINARY_FACTS) | set(UNARY_FACTS)
    binary = [n for n in names if RELATION_ARITY[n] == 2]
    unary = [n for n in names if RELATION_ARITY[n] == 1]
    for n in BINARY_FACTS:
        for kind in (RuleKind.REFLEXIVE, RuleKind.IRREFLEXIVE, RuleKind.SYMMETRIC, RuleKind.ASYMMETRIC):
            yield PropertyRule(kind, (n,))
    for group in (binary, unary):
        for n, m in itertools.permutations(group, 2):
            if n not in facts and m not in facts:
                continue
            yield PropertyRule(RuleKind.MUTUALLY_INCONSISTENT, (n, m))
            if group is binary:
                yield PropertyRule(RuleKind.CONVERSE, (n, m))
                yield PropertyRule(RuleKind.IMPLIES, (n, m))
    for triple in itertools.product(binary, repeat=3):
        if facts.intersection(triple):
            yield PropertyRule(RuleKind.TRANSITIVELY_INCONSISTENT, triple)


def derive_rule_table(budget=10**4, seed=None, min_support=10, table=None, batch=50):
    """ Check a rule table against random ground scenes and extend it with size and movement rules.

    Every rule of the starting table is evaluated on ``budget`` sampled scenes of three objects over three frames.
    Rules with a counterexample are dropped.
    Candidate rules that name size or movement relations are added when no scene contradicts them
    and every relation they name was observed at least ``min_support`` times.

    Args:
        budget (int, optional): number of sampled scenes; Default **10000**
        seed (int, optional): random seed; Default **random**
        min_support (int, optional): observations a relation needs before new rules mention it; Default **10**
        table (RuleTable, optional): starting table; Default **embedded table**
        batch (int, optional): scenes evaluated per vectorized step; Default **50**

    Returns:
        RuleTable: table with ``derived`` provenance
    """
    if budget < 10**4:
        log.warning(f'Sampling budget {budget} is below 10000, rule soundness is poorly supported')
    if seed is None:
        seed = int(np.random.SeedSequence().entropy % 2**32)
    log.info(f'Deriving rule table from {budget} scenes [seed={seed}]')
    table = table or RuleTable.embedded()
    rng = np.random.default_rng(seed)
    names = sorted(RELATION_ARITY)
    index = {n: i for i, n in enumerate(names)}
    frames = [0, 1, 2]

    counts = None
    support = np.zeros(len(names), dtype=np.int64)
    start = time.perf_counter()
    done = 0
    while done < budget:
        size = min(batch, budget - done)
        h = np.stack([_observe(sample_scene(rng), frames, names) for _ in range(size)])
        support += h.sum(axis=(0, 2, 3))
        found = _counterexamples(h, names)
        counts = found if counts is None else {k: counts[k] + found[k] for k in counts}
        done += size
        log.debug(f'Sampled {done}/{budget} scenes')
    log.info(f'Sampling took {time.perf_counter() - start:.1f}s')

    def violated(rule):
        return counts[rule.kind][tuple(index[n] for n in rule.relations)] > 0

    kept = []
    for rule in table:
        if violated(rule):
            log.warning(f'Dropping rule "{rule}": counterexample found while sampling')
        else:
            kept.append(rule)

    added = 0
    existing = set(kept)
    for rule in _candidates(names):
        if rule in existing or violated(rule):
            continue
        if any(support[index[n]] < min_support for n in rule.relations):
            continue
        kept.append(rule)
        added += 1

    log.info(f'Rule table: kept {len(kept) - added}/{len(table)} rules, added {added}')
    return RuleTable(kept, 'derived', RULES_VERSION)
