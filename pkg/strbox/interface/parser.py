# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Fact files
----------
Reader for the fact language of strbox.
A fact file is a sequence of ``name(arg, ...).`` facts over a closed set of predicates.
Arguments are symbols, double quoted strings, numbers, nested terms such as ``time(T1,T2)``
and parenthesized tuples. ``%`` starts a comment that runs until the end of the line.

Symbols starting with an uppercase letter or an underscore are variables.
They are only accepted as entities of ``spacetime`` directives, where they range over every ground object.
"""
import logging
import re
from dataclasses import dataclass, field
from typing import Optional
from ..geometry import InvalidPolygon, Polygon
from ..spacetime import ASPECTS, Interval, RelationAtom

__all__ = [
    'ParseError',
    'DanglingReference',
    'DuplicatePolygonId',
    'Term',
    'Directive',
    'SliceDeclaration',
    'FactProgram',
    'parse',
    'check_references',
    'tokenize',
    'PREDICATES',
    'STATUSES',
]
log = logging.getLogger(__name__)

STATUSES = ('consistent', 'inconsistent', 'derived')
FILTERS = ('min_duration', 'near', 'window', 'relation')


class ParseError(ValueError):
    """ Raised for text that is not a valid fact file.

    Args:
        message (str): what went wrong
        line (int): 1-based line of the offending token
        column (int): 1-based column of the offending token
    """

    def __init__(self, message, line=0, column=0):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f'{message} (line {line}, column {column})')


class DanglingReference(ParseError):
    """ Raised when a fact refers to a polygon or entity that is never declared. """


class DuplicatePolygonId(ParseError):
    """ Raised when a polygon identifier is declared twice. """


_TOKENS = re.compile(
    r"""
    (?P<space>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<number>[-+]?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[(),.])
    """,
    re.VERBOSE,
)
_ESCAPE = re.compile(r'\\(.)')


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text):
    """ Split fact text in tokens, dropping whitespace and comments.

    Returns:
        list: ``(kind, text, line, column)`` tuples; kinds are ``number``, ``string``, ``name`` and ``punct``

    Raises:
        ParseError: a character that starts no token
    """
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        match = _TOKENS.match(text, pos)
        if match is None:
            raise ParseError(f'Unexpected character {text[pos]!r}', line, pos - line_start + 1)

        kind = match.lastgroup
        value = match.group()
        if kind not in ('space', 'comment'):
            tokens.append(_Token(kind, value, line, pos - line_start + 1))

        newlines = value.count('\n')
        if newlines:
            line += newlines
            line_start = pos + value.rindex('\n') + 1
        pos = match.end()

    return tokens


@dataclass(frozen=True)
class Term:
    """ Parsed argument of a fact.

    Args:
        kind (str): ``symbol``, ``variable``, ``number``, ``compound`` or ``tuple``
        value (str, int or float): symbol text, number or compound name; **None** for tuples
        args (tuple): arguments of compounds and items of tuples
        line (int): line of the first token
        column (int): column of the first token
    """

    kind: str
    value: object = None
    args: tuple = ()
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def error(self, message, cls=ParseError):
        return cls(message, self.line, self.column)

    def __str__(self):
        if self.kind == 'compound':
            return f'{self.value}({", ".join(str(a) for a in self.args)})'
        if self.kind == 'tuple':
            return f'({", ".join(str(a) for a in self.args)})'
        return str(self.value)


class _Reader:
    """ Recursive descent over the token list. """

    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0
        lines = text.split('\n')
        self.end = (len(lines), len(lines[-1]) + 1)

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def next(self, expected):
        token = self.peek()
        if token is None:
            raise ParseError(f'Unexpected end of input, expected {expected}', *self.end)
        self.pos += 1
        return token

    def expect(self, text):
        token = self.next(repr(text))
        if token.text != text:
            raise ParseError(f'Expected {text!r}, got {token.text!r}', token.line, token.column)
        return token

    def facts(self):
        while self.peek() is not None:
            name = self.next('a predicate')
            if name.kind != 'name':
                raise ParseError(f'Expected a predicate name, got {name.text!r}', name.line, name.column)
            self.expect('(')
            args = self.arguments(')')
            self.expect('.')
            yield Term('compound', name.text, args, name.line, name.column)

    def arguments(self, close):
        args = [self.term()]
        while True:
            token = self.next(f"',' or {close!r}")
            if token.text == close:
                return tuple(args)
            if token.text != ',':
                raise ParseError(
                    f"Expected ',' or {close!r}, got {token.text!r}", token.line, token.column
                )
            args.append(self.term())

    def term(self):
        token = self.next('a term')
        if token.kind == 'number':
            text = token.text
            value = float(text) if any(c in text for c in '.eE') else int(text)
            return Term('number', value, (), token.line, token.column)
        if token.kind == 'string':
            return Term('symbol', _ESCAPE.sub(r'\1', token.text[1:-1]), (), token.line, token.column)
        if token.kind == 'name':
            nxt = self.peek()
            if nxt is not None and nxt.text == '(':
                self.pos += 1
                return Term('compound', token.text, self.arguments(')'), token.line, token.column)
            kind = 'variable' if token.text[0].isupper() or token.text[0] == '_' else 'symbol'
            return Term(kind, token.text, (), token.line, token.column)
        if token.text == '(':
            return Term('tuple', None, self.arguments(')'), token.line, token.column)
        raise ParseError(f'Expected a term, got {token.text!r}', token.line, token.column)


@dataclass(frozen=True)
class Directive:
    """ Request to derive the relations of one aspect (``spacetime`` facts).

    Args:
        aspect (str): topology, size, movement or ``all``
        args (tuple): one or two entities, variables are strings starting with an uppercase letter or ``_``
        interval (Interval): time interval
    """

    aspect: str
    args: tuple
    interval: Interval

    @property
    def aspects(self):
        return ASPECTS if self.aspect == 'all' else (self.aspect,)


@dataclass(frozen=True, order=True)
class SliceDeclaration:
    """ Polygon ``polygon`` is the slice of ``entity`` at ``time``. """

    entity: str
    time: int
    polygon: str


_LISTS = (
    'slices',
    'translations',
    'directives',
    'assertions',
    'filters',
    'witnesses',
    'vectors',
    'violated',
    'goals',
)


@dataclass
class FactProgram:
    """ Parsed contents of a fact file.

    Args:
        polygons (dict): polygon id -> tuple of ``(x, y)`` vertices
        entities (list): entities declared with ``st_object/1``
        slices (list): :class:`SliceDeclaration` objects
        translations (list): ``(pg1, pg2)`` pairs, ``pg2`` being an unground translation of ``pg1``
        directives (list): :class:`Directive` objects
        assertions (list): asserted :class:`~strbox.spacetime.RelationAtom` objects
        filters (list): ``(kind, value)`` query filters
        witnesses (list): ``(entity, ref)`` witness facts, ``ref`` is an entity or a tuple of ``(time, polygon)``
        vectors (list): ``(entity, time, tx, ty)`` translation vectors, ``time`` is **None** for shared vectors
        status (str): result status
        violated (list): violated :class:`~strbox.spacetime.RelationAtom` objects
        movable (dict): entity -> cost of moving it
        goals (list): ``(relation, entity, entity)`` planning goals
        horizon (Interval): planning horizon
    """

    polygons: dict = field(default_factory=dict)
    entities: list = field(default_factory=list)
    slices: list = field(default_factory=list)
    translations: list = field(default_factory=list)
    directives: list = field(default_factory=list)
    assertions: list = field(default_factory=list)
    filters: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    vectors: list = field(default_factory=list)
    status: Optional[str] = None
    violated: list = field(default_factory=list)
    movable: dict = field(default_factory=dict)
    goals: list = field(default_factory=list)
    horizon: Optional[Interval] = None
    positions: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def is_empty(self):
        return not any(
            (
                self.polygons,
                self.entities,
                self.slices,
                self.translations,
                self.directives,
                self.assertions,
                self.filters,
                self.witnesses,
                self.vectors,
                self.status,
                self.violated,
                self.movable,
                self.goals,
                self.horizon,
            )
        )

    @property
    def objects(self):
        """ Sorted identifiers of every declared entity, with or without slices. """
        return sorted(set(self.entities) | {s.entity for s in self.slices})

    def polygon(self, id, eps=None):
        """ Validated :class:`~strbox.geometry.Polygon` of a polygon id. """
        return Polygon(self.polygons[id], eps)

    def update(self, other):
        """ Add the facts of another program to this one.

        Raises:
            DuplicatePolygonId: both programs declare the same polygon
        """
        for id, vertices in other.polygons.items():
            if id in self.polygons:
                line, column = other.positions.get(id, (0, 0))
                raise DuplicatePolygonId(f'Polygon {id} is declared twice', line, column)
            self.polygons[id] = vertices
            self.positions[id] = other.positions.get(id, (0, 0))
        for entity in other.entities:
            if entity not in self.entities:
                self.entities.append(entity)
        offset = len(self.witnesses)
        for key, position in other.positions.items():
            if isinstance(key, tuple) and key[0] == 'spatial':
                self.positions[('spatial', key[1] + offset)] = position
            elif key not in other.polygons:
                self.positions[key] = position
        for name in _LISTS:
            getattr(self, name).extend(getattr(other, name))
        self.movable.update(other.movable)
        self.status = other.status or self.status
        self.horizon = other.horizon or self.horizon
        return self


# Argument readers


def _symbol(term, what='a symbol'):
    if term.kind != 'symbol':
        raise term.error(f'Expected {what}, got {term}')
    return term.value


def _entity(term, variables=False):
    if term.kind == 'variable' and variables:
        return term.value
    return _symbol(term, 'an entity')


def _number(term):
    if term.kind != 'number':
        raise term.error(f'Expected a number, got {term}')
    return term.value


def _time(term):
    value = _number(term)
    if not isinstance(value, int) or value < 0:
        raise term.error(f'Time stamps should be non-negative integers [{term}]')
    return value


def _compound(term, name, arity):
    if term.kind != 'compound' or term.value != name or len(term.args) != arity:
        placeholder = ', '.join('_' * arity)
        raise term.error(f'Expected {name}({placeholder}), got {term}')
    return term.args


def _interval(term):
    start, end = (_time(t) for t in _compound(term, 'time', 2))
    try:
        return Interval(start, end)
    except ValueError as err:
        raise term.error(str(err)) from err


def _at(term):
    return _time(_compound(term, 'at', 1)[0])


def _atom(aspect, name, args, interval, term):
    try:
        return RelationAtom(aspect, name, tuple(args), interval)
    except ValueError as err:
        raise term.error(str(err)) from err


# Predicates


def _polygon(prog, fact):
    pid_term, coords = fact.args
    pid = _symbol(pid_term, 'a polygon id')
    if coords.kind != 'tuple':
        raise coords.error(f'Expected a coordinate tuple, got {coords}')
    values = [_number(t) for t in coords.args]
    if len(values) % 2 != 0:
        raise coords.error(f'Polygon {pid} has an odd number of coordinates [{len(values)}]')
    if len(values) < 6:
        raise coords.error(f'Polygon {pid} needs at least 3 vertices, got {len(values) // 2}')
    vertices = tuple(zip(values[0::2], values[1::2]))
    try:
        Polygon(vertices)
    except InvalidPolygon as err:
        raise coords.error(f'Polygon {pid} is invalid: {err}') from err

    if pid in prog.polygons:
        raise pid_term.error(f'Polygon {pid} is declared twice', DuplicatePolygonId)
    prog.polygons[pid] = vertices
    prog.positions[pid] = (pid_term.line, pid_term.column)


def _translation(prog, fact):
    pg1, pg2 = (_symbol(t, 'a polygon id') for t in fact.args)
    if pg1 == pg2:
        raise fact.args[1].error(f'Polygon {pg1} cannot be a translation of itself')
    prog.translations.append((pg1, pg2))
    prog.positions[('translation', pg1, pg2)] = (fact.args[0].line, fact.args[0].column)


def _st_object1(prog, fact):
    entity = _entity(fact.args[0])
    if entity not in prog.entities:
        prog.entities.append(entity)


def _st_object3(prog, fact):
    entity = _entity(fact.args[0])
    time = _at(fact.args[1])
    pid = _symbol(_compound(fact.args[2], 'id', 1)[0], 'a polygon id')
    decl = SliceDeclaration(entity, time, pid)
    for other in prog.slices:
        if other.entity == entity and other.time == time:
            raise fact.error(f'Entity {entity} has two slices at time {time}')
    prog.slices.append(decl)
    prog.positions[decl] = (fact.args[2].line, fact.args[2].column)


def _spacetime(prog, fact):
    aspect = _symbol(fact.args[0], 'an aspect')
    if aspect not in ASPECTS + ('all',):
        raise fact.args[0].error(f'Unknown aspect {aspect}, expected one of {ASPECTS + ("all",)}')
    args = tuple(_entity(t, variables=True) for t in fact.args[1:-1])
    prog.directives.append(Directive(aspect, args, _interval(fact.args[-1])))


def _relation(aspect):
    def read(prog, fact):
        name = _symbol(fact.args[0], f'a {aspect} relation')
        args = [_entity(t) for t in fact.args[1:-1]]
        prog.assertions.append(_atom(aspect, name, args, _interval(fact.args[-1]), fact))

    return read


def _spatial(prog, fact):
    kind, entity_term, ref = fact.args
    if _symbol(kind, 'witness') != 'witness':
        raise kind.error(f'Expected witness, got {kind}')
    entity = _entity(entity_term)
    if ref.kind == 'tuple':
        items = []
        for item in ref.args:
            time, pid = _compound(item, 'slice', 2)
            items.append((_time(time), _symbol(pid, 'a polygon id')))
        prog.witnesses.append((entity, tuple(items)))
    else:
        prog.witnesses.append((entity, _entity(ref)))
    prog.positions[('spatial', len(prog.witnesses) - 1)] = (ref.line, ref.column)


def _vector(prog, fact):
    entity = _entity(fact.args[0])
    time = _at(fact.args[1]) if len(fact.args) == 4 else None
    tx, ty = (float(_number(t)) for t in fact.args[-2:])
    prog.vectors.append((entity, time, tx, ty))


def _status(prog, fact):
    status = _symbol(fact.args[0], 'a status')
    if status not in STATUSES:
        raise fact.args[0].error(f'Unknown status {status}, expected one of {STATUSES}')
    prog.status = status


def _violated(prog, fact):
    term = fact.args[0]
    if term.kind != 'compound' or term.value not in ASPECTS or len(term.args) not in (3, 4):
        raise term.error(f'Expected a relation atom, got {term}')
    name = _symbol(term.args[0], f'a {term.value} relation')
    args = [_entity(t) for t in term.args[1:-1]]
    prog.violated.append(_atom(term.value, name, args, _interval(term.args[-1]), term))


def _filter(prog, fact):
    kind_term, value = fact.args
    kind = _symbol(kind_term, 'a filter')
    if kind == 'min_duration':
        prog.filters.append((kind, _time(value)))
    elif kind == 'near':
        prog.filters.append((kind, _at(value)))
    elif kind == 'window':
        prog.filters.append((kind, _interval(value)))
    elif kind == 'relation':
        prog.filters.append((kind, _symbol(value, 'a relation')))
    else:
        raise kind_term.error(f'Unknown filter {kind}, expected one of {FILTERS}')


def _movable(prog, fact):
    entity = _entity(fact.args[0])
    cost = _number(fact.args[1])
    if not isinstance(cost, int) or cost < 0:
        raise fact.args[1].error(f'Move costs should be non-negative integers [{fact.args[1]}]')
    prog.movable[entity] = cost


def _goal(prog, fact):
    name = _symbol(fact.args[0], 'a topology relation')
    args = tuple(_entity(t) for t in fact.args[1:])
    _atom('topology', name, args, Interval(0, 0), fact)
    prog.goals.append((name, *args))


def _horizon(prog, fact):
    prog.horizon = _interval(fact.args[0])


#: Accepted ``(predicate, arity)`` pairs
PREDICATES = {
    ('polygon', 2): _polygon,
    ('translation', 2): _translation,
    ('st_object', 1): _st_object1,
    ('st_object', 3): _st_object3,
    ('spacetime', 3): _spacetime,
    ('spacetime', 4): _spacetime,
    ('topology', 4): _relation('topology'),
    ('size', 3): _relation('size'),
    ('size', 4): _relation('size'),
    ('movement', 3): _relation('movement'),
    ('movement', 4): _relation('movement'),
    ('spatial', 3): _spatial,
    ('translation_vector', 3): _vector,
    ('translation_vector', 4): _vector,
    ('status', 1): _status,
    ('violated', 1): _violated,
    ('filter', 2): _filter,
    ('movable', 2): _movable,
    ('goal', 3): _goal,
    ('horizon', 1): _horizon,
}


def check_references(prog):
    """ Raise :class:`DanglingReference` for slices, translations and witnesses of undeclared polygons. """
    entities = set(prog.objects)
    for decl in prog.slices:
        if decl.polygon not in prog.polygons:
            raise DanglingReference(
                f'Slice of {decl.entity} at time {decl.time} refers to unknown polygon {decl.polygon}',
                *prog.positions[decl],
            )
    for pg1, pg2 in prog.translations:
        if pg1 not in prog.polygons and pg1 not in entities:
            raise DanglingReference(
                f'Translation {pg2} refers to unknown polygon {pg1}',
                *prog.positions[('translation', pg1, pg2)],
            )
    for idx, (entity, ref) in enumerate(prog.witnesses):
        if isinstance(ref, tuple):
            for _, pid in ref:
                if pid not in prog.polygons:
                    raise DanglingReference(
                        f'Witness of {entity} refers to unknown polygon {pid}',
                        *prog.positions[('spatial', idx)],
                    )


def parse(text, check=True):
    """ Parse a fact file.

    Args:
        text (str or file): fact text, or an open text stream
        check (bool, optional): check that slices, translations and witnesses refer to declared polygons; Default **True**

    Returns:
        FactProgram: declared polygons, objects, directives, assertions and result facts

    Raises:
        ParseError: malformed text, unknown predicates or invalid arguments
        DuplicatePolygonId: a polygon id is declared twice
        DanglingReference: a slice, translation or witness refers to an undeclared polygon

    Example:
        >>> prog = parse('polygon(p1, (0,0, 1,0, 1,1, 0,1)). st_object(o1, at(0), id(p1)).')
        >>> len(prog.polygons), len(prog.slices)
        (1, 1)
    """
    if hasattr(text, 'read'):
        text = text.read()

    prog = FactProgram()
    for fact in _Reader(text).facts():
        handler = PREDICATES.get((fact.value, len(fact.args)))
        if handler is None:
            accepted = ', '.join(f'{n}/{a}' for n, a in sorted(PREDICATES))
            raise fact.error(f'Unknown predicate {fact.value}/{len(fact.args)}, expected one of {accepted}')
        handler(prog, fact)

    if check:
        check_references(prog)
    log.debug(f'Parsed {len(prog.polygons)} polygons and {len(prog.slices)} slices')
    return prog
