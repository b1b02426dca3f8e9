# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Qualitative networks
--------------------
Constraint networks over space-time objects without geometry.

Topology constraints are disjunctions of the eight history base relations.
Size and movement relations are kept as conjunctive facts, which the property rules act on.
A network that survives :func:`path_consistency` is 3-path consistent, which does not guarantee it can be realized.
"""
import collections
import functools
import itertools
import logging
from ..geometry import BASE_RELATIONS, CONVERSE, EQ
from .rules import RELATION_ARITY, RuleKind, from_mask, to_mask
from .tables import *

__all__ = [
    'Inconsistent',
    'QualitativeNetwork',
    'apply_property_rules',
    'path_consistency',
    'enumerate_scenarios',
    'count_scenarios',
]
log = logging.getLogger(__name__)

_UNIVERSAL = frozenset(BASE_RELATIONS)


class Inconsistent:
    """ Falsy result of a consistency check, with the reason why the network failed.

    Args:
        reason (str): human readable explanation
    """

    __slots__ = ('reason',)

    def __init__(self, reason):
        self.reason = reason

    def __bool__(self):
        return False

    def __eq__(self, other):
        return isinstance(other, Inconsistent)

    def __hash__(self):
        return hash(Inconsistent)

    def __str__(self):
        return self.reason

    def __repr__(self):
        return f'Inconsistent({self.reason!r})'


class QualitativeNetwork:
    """ Qualitative constraint network.

    Args:
        nodes (iterable, optional): object identifiers; Default **empty network**

    Note:
        Constraints are stored once per unordered pair, as seen from the smallest identifier.
        Pairs without a stored constraint are unconstrained.
    """

    def __init__(self, nodes=()):
        self._nodes = set()
        self._constraints = {}
        self._facts = set()
        for node in nodes:
            self.add_node(node)

    @classmethod
    def from_atoms(cls, atoms, nodes=()):
        """ Network with one constraint or fact per :class:`~strbox.spacetime.RelationAtom`, ignoring their intervals. """
        net = cls(nodes)
        for atom in atoms:
            if len(atom.args) == 2:
                net.add_constraint(*atom.args, atom.name)
            else:
                net.assert_fact(atom.name, *atom.args)
        return net

    def add_node(self, node):
        self._nodes.add(str(node))

    @property
    def nodes(self):
        return tuple(sorted(self._nodes))

    @property
    def facts(self):
        """ Frozenset of ``(name, args)`` size and movement facts. """
        return frozenset(self._facts)

    @property
    def constraints(self):
        """ Sorted ``((a, b), bases)`` items of every stored constraint. """
        return sorted(self._constraints.items())

    def get_constraint(self, a, b):
        """ Base relations still possible between ``a`` and ``b``. """
        if a <= b:
            return self._constraints.get((a, b), _UNIVERSAL)
        return frozenset(CONVERSE[r] for r in self._constraints.get((b, a), _UNIVERSAL))

    def set_constraint(self, a, b, bases):
        """ Replace the constraint of a pair.

        Returns:
            bool: whether the constraint changed
        """
        self.add_node(a)
        self.add_node(b)
        bases = frozenset(bases)
        if a > b:
            a, b = b, a
            bases = frozenset(CONVERSE[r] for r in bases)
        if self._constraints.get((a, b)) == bases:
            return False
        self._constraints[a, b] = bases
        return True

    def add_constraint(self, a, b, names):
        """ Constrain a pair with a relation name, or a disjunction of topology names.

        Args:
            a (str): first object
            b (str): second object
            names (str or iterable): relation name(s)

        Returns:
            frozenset: remaining base relations for topology names, **None** for facts
        """
        if isinstance(names, str):
            names = (names,)
        names = tuple(names)
        if not all(is_topology(n) for n in names):
            if len(names) != 1:
                raise ValueError(f'Disjunctions are only supported over topology relations {names}')
            self.assert_fact(names[0], a, b)
            return None

        bases = self.get_constraint(a, b) & expand(names)
        self.set_constraint(a, b, bases)
        return bases

    def assert_fact(self, name, *args):
        """ Add a size or movement relation that holds. """
        if is_topology(name):
            raise ValueError(f'{name} is a topology relation, use add_constraint')
        expected = RELATION_ARITY.get(name)
        if expected is None:
            raise ValueError(f'Unknown relation {name}')
        if len(args) != expected:
            raise ValueError(f'{name} takes {expected} object(s), got {len(args)}')
        args = tuple(str(a) for a in args)
        for node in args:
            self.add_node(node)
        fact = (name, args)
        if fact in self._facts:
            return False
        self._facts.add(fact)
        return True

    def has_fact(self, name, *args):
        return (name, tuple(args)) in self._facts

    def copy(self):
        net = QualitativeNetwork()
        net._nodes = set(self._nodes)
        net._constraints = dict(self._constraints)
        net._facts = set(self._facts)
        return net

    def __eq__(self, other):
        if not isinstance(other, QualitativeNetwork):
            return NotImplemented
        return (
            self._nodes == other._nodes
            and self._facts == other._facts
            and self._normalized() == other._normalized()
        )

    def _normalized(self):
        return {k: v for k, v in self._constraints.items() if v != _UNIVERSAL}

    def __repr__(self):
        return f'QualitativeNetwork({len(self._nodes)} nodes, {len(self._constraints)} constraints, {len(self._facts)} facts)'


class _RuleIndex:
    """ Property rules of a table, indexed by the relation they start from. """

    def __init__(self, table):
        self.irreflexive = {r[0] for r in table.of_kind(RuleKind.IRREFLEXIVE)}
        self.reflexive = {r[0] for r in table.of_kind(RuleKind.REFLEXIVE)}
        self.symmetric = {r[0] for r in table.of_kind(RuleKind.SYMMETRIC)}
        self.asymmetric = {r[0] for r in table.of_kind(RuleKind.ASYMMETRIC)}

        self.converse = collections.defaultdict(set)
        for n, m in table.of_kind(RuleKind.CONVERSE):
            self.converse[n].add(m)
        self.implies = collections.defaultdict(set)
        for n, m in table.of_kind(RuleKind.IMPLIES):
            self.implies[n].add(m)
        self.exclusive = collections.defaultdict(set)
        for n, m in table.of_kind(RuleKind.MUTUALLY_INCONSISTENT):
            self.exclusive[n].add(m)
            self.exclusive[m].add(n)

        # topology triples are handled by path consistency
        self.transitive = [
            r for r in table.of_kind(RuleKind.TRANSITIVELY_INCONSISTENT) if not all(map(is_topology, r))
        ]
        self.transitive_names = {n for r in self.transitive for n in r}

        # bases whose implied names are irreflexive cannot relate an object to itself
        self.diagonal = frozenset(
            b for b in BASE_RELATIONS if not IMPLIED[b] & self.irreflexive
        )
        for name in self.reflexive:
            if is_topology(name):
                self.diagonal &= TOPOLOGY_EXPANSION[name]


@functools.lru_cache(maxsize=8)
def _index(table):
    return _RuleIndex(table)


class _Closure:
    """ One fixpoint run of the property rules over a private network copy. """

    def __init__(self, net, table):
        self.net = net
        self.rules = _index(table)
        self.changed = False

    def holds(self, name, args):
        """ Whether a relation certainly holds on ``args``. """
        if is_topology(name):
            return name in implied_by(self.net.get_constraint(*args))
        return (name, args) in self.net._facts

    def enforce(self, name, args):
        if is_topology(name):
            bases = self.net.get_constraint(*args)
            if self.net.set_constraint(*args, bases & TOPOLOGY_EXPANSION[name]):
                self.changed = True
        elif self.net.assert_fact(name, *args):
            self.changed = True

    def forbid(self, name, args):
        """ Remove every possibility in which ``name`` certainly holds on ``args``. """
        if is_topology(name):
            bases = self.net.get_constraint(*args)
            keep = frozenset(b for b in bases if name not in IMPLIED[b])
            if keep != bases:
                self.net.set_constraint(*args, keep)
                self.changed = True
            return None
        if (name, args) in self.net._facts:
            return Inconsistent(f'{name}{args} holds but is ruled out by the property rules')
        return None

    def run(self):
        while True:
            self.changed = False
            for step in (self.check_empty, self.diagonal, self.facts, self.topology, self.transitive):
                result = step()
                if result is not None:
                    return result
            if not self.changed:
                return None

    def check_empty(self):
        for (a, b), bases in self.net._constraints.items():
            if not bases:
                return Inconsistent(f'No relation left between {a} and {b}')
        return None

    def diagonal(self):
        for (a, b), bases in list(self.net._constraints.items()):
            if a != b:
                continue
            keep = bases & self.rules.diagonal
            if not keep:
                return Inconsistent(f'{a} cannot stand in {sorted(bases)} to itself')
            if keep != bases:
                self.net.set_constraint(a, a, keep)
                self.changed = True
        return None

    def facts(self):
        rules = self.rules
        for name, args in sorted(self.net._facts):
            if len(args) == 2:
                a, b = args
                if a == b and name in rules.irreflexive:
                    return Inconsistent(f'{name}({a}, {a}) violates irreflexivity')
                if name in rules.asymmetric and (name, (b, a)) in self.net._facts:
                    return Inconsistent(f'{name} is asymmetric but holds on ({a}, {b}) and ({b}, {a})')
                if name in rules.symmetric:
                    self.enforce(name, (b, a))
                for other in rules.converse.get(name, ()):
                    self.enforce(other, (b, a))

            for other in rules.implies.get(name, ()):
                self.enforce(other, args)
            for other in rules.exclusive.get(name, ()):
                result = self.forbid(other, args)
                if result is not None:
                    return Inconsistent(f'{name}{args} and {other}{args} are mutually inconsistent')
        return None

    def topology(self):
        """ Consequences of topology names that certainly hold for size and movement facts. """
        rules = self.rules
        for (a, b), bases in list(self.net._constraints.items()):
            for name in implied_by(bases):
                for other in rules.converse.get(name, ()):
                    if not is_topology(other):
                        self.enforce(other, (b, a))
                for other in rules.implies.get(name, ()):
                    if not is_topology(other):
                        self.enforce(other, (a, b))
                for other in rules.exclusive.get(name, ()):
                    if not is_topology(other) and self.forbid(other, (a, b)) is not None:
                        return Inconsistent(f'{name}({a}, {b}) and {other}({a}, {b}) are mutually inconsistent')
        return None

    def transitive(self):
        rules = self.rules
        if not rules.transitive or not self.net._facts:
            return None

        nodes = self.net.nodes
        certain = collections.defaultdict(set)
        for name in rules.transitive_names:
            for pair in itertools.product(nodes, repeat=2):
                if self.holds(name, pair):
                    certain[name].add(pair)

        for n1, n2, n3 in rules.transitive:
            # any two certain relations forbid the third one
            for (x, y), (y2, z) in itertools.product(certain[n1], certain[n2]):
                if y == y2 and self.forbid(n3, (x, z)) is not None:
                    return Inconsistent(f'{n1}({x}, {y}), {n2}({y}, {z}) and {n3}({x}, {z}) are transitively inconsistent')
            for (x, y), (x2, z) in itertools.product(certain[n1], certain[n3]):
                if x == x2 and self.forbid(n2, (y, z)) is not None:
                    return Inconsistent(f'{n1}({x}, {y}), {n2}({y}, {z}) and {n3}({x}, {z}) are transitively inconsistent')
            for (y, z), (x, z2) in itertools.product(certain[n2], certain[n3]):
                if z == z2 and self.forbid(n1, (x, y)) is not None:
                    return Inconsistent(f'{n1}({x}, {y}), {n2}({y}, {z}) and {n3}({x}, {z}) are transitively inconsistent')
        return None


def apply_property_rules(net, table):
    """ Close a network under the property rules of a table.

    Args:
        net (QualitativeNetwork): network, left untouched
        table (RuleTable): property rules

    Returns:
        QualitativeNetwork or Inconsistent: closed copy of the network
    """
    closure = _Closure(net.copy(), table)
    result = closure.run()
    if result is not None:
        log.debug(f'Property rules: {result.reason}')
        return result
    return closure.net


def _masks(net):
    nodes = net.nodes
    eq = to_mask((EQ,))
    m = [[eq] * len(nodes) for _ in nodes]
    for i, j in itertools.combinations(range(len(nodes)), 2):
        m[i][j] = to_mask(net.get_constraint(nodes[i], nodes[j]))
        m[j][i] = to_mask(net.get_constraint(nodes[j], nodes[i]))
    return m


def _propagate(m, comp, conv, queue):
    """ Path consistency on a bitmask matrix, starting from the changed pairs in ``queue``.

    Returns:
        tuple: pair that became empty, or **None** when the fixpoint is reached
    """
    n = len(m)
    queue = collections.deque(queue)
    pending = set(queue)
    while queue:
        i, j = queue.popleft()
        pending.discard((i, j))
        mij = m[i][j]
        for k in range(n):
            if k == i or k == j:
                continue

            old = m[i][k]
            new = old & comp[mij][m[j][k]]
            if new != old:
                if not new:
                    return i, k
                m[i][k] = new
                m[k][i] = conv[new]
                if (i, k) not in pending:
                    pending.add((i, k))
                    queue.append((i, k))

            old = m[k][j]
            new = old & comp[m[k][i]][mij]
            if new != old:
                if not new:
                    return k, j
                m[k][j] = new
                m[j][k] = conv[new]
                if (k, j) not in pending:
                    pending.add((k, j))
                    queue.append((k, j))
    return None


def path_consistency(net, table):
    """ Algebraic closure of a network, interleaved with the property rules.

    Args:
        net (QualitativeNetwork): network, left untouched
        table (RuleTable): property rules and composition

    Returns:
        QualitativeNetwork or Inconsistent: 3-path consistent copy of the network

    Note:
        The closure is sound but not complete: a network that passes can still be unrealizable.
    """
    comp = table.composition_masks.tolist()
    conv = table.converse_masks.tolist()

    while True:
        net = apply_property_rules(net, table)
        if not net:
            return net

        nodes = net.nodes
        m = _masks(net)
        queue = list(itertools.permutations(range(len(nodes)), 2))
        empty = _propagate(m, comp, conv, queue)
        if empty is not None:
            a, b = nodes[empty[0]], nodes[empty[1]]
            log.debug(f'Path consistency emptied ({a}, {b})')
            return Inconsistent(f'No relation left between {a} and {b} after path consistency')

        changed = False
        for i, j in itertools.combinations(range(len(nodes)), 2):
            bases = from_mask(m[i][j])
            if bases != net.get_constraint(nodes[i], nodes[j]):
                net.set_constraint(nodes[i], nodes[j], bases)
                changed = True
        if not changed or not net._facts:
            return net


def _scenarios(net, table):
    """ Generator of atomic refinements, as bitmask matrices, in deterministic order. """
    closed = path_consistency(net, table)
    if not closed:
        return

    comp = table.composition_masks.tolist()
    conv = table.converse_masks.tolist()
    nodes = closed.nodes
    pairs = list(itertools.combinations(range(len(nodes)), 2))

    def next_pair(m, start):
        for idx in range(start, len(pairs)):
            i, j = pairs[idx]
            if m[i][j] & (m[i][j] - 1):
                return idx
        return None

    root = _masks(closed)
    stack = [(root, None, None)]
    while stack:
        parent, idx, bit = stack.pop()
        if idx is None:
            m = parent
            idx = 0
        else:
            i, j = pairs[idx]
            m = [row[:] for row in parent]
            m[i][j] = 1 << bit
            m[j][i] = conv[1 << bit]
            if _propagate(m, comp, conv, [(i, j)]) is not None:
                continue

        nxt = next_pair(m, idx)
        if nxt is None:
            if closed._facts and not _verify(closed, nodes, m, table):
                continue
            yield nodes, pairs, m
            continue

        i, j = pairs[nxt]
        bits = [b for b in range(len(BASE_RELATIONS)) if m[i][j] >> b & 1]
        for b in reversed(bits):
            stack.append((m, nxt, b))


def _verify(closed, nodes, m, table):
    atomic = closed.copy()
    for i, j in itertools.combinations(range(len(nodes)), 2):
        atomic.set_constraint(nodes[i], nodes[j], from_mask(m[i][j]))
    return bool(path_consistency(atomic, table))


def enumerate_scenarios(net, table, limit=1):
    """ Atomic refinements of a network that survive path consistency.

    Pairs are refined in lexicographic order of their identifiers, trying base relations in vocabulary order.

    Args:
        net (QualitativeNetwork): network
        table (RuleTable): property rules and composition
        limit (int, optional): maximal number of scenarios; Default **1**

    Returns:
        list: ``{(a, b): base}`` dictionaries, one per scenario, covering every pair ``a < b``
    """
    if limit < 1:
        raise ValueError(f'limit should be at least 1 [{limit}]')

    result = []
    for nodes, pairs, m in itertools.islice(_scenarios(net, table), limit):
        result.append({(nodes[i], nodes[j]): next(iter(from_mask(m[i][j]))) for i, j in pairs})
    log.debug(f'Found {len(result)} scenario(s)')
    return result


def count_scenarios(net, table, limit=None):
    """ Number of atomic refinements that survive path consistency, optionally capped at ``limit``. """
    return sum(1 for _ in itertools.islice(_scenarios(net, table), limit))
