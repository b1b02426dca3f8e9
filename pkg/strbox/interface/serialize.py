# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Serialization
-------------
Writes result sets and programs back in the fact syntax, one fact per line in a stable order.
Reals are written with 9 significant digits and integral values without a decimal point,
so serialized text reads back to the same facts.
"""
import re

__all__ = ['serialize', 'format_number', 'format_symbol', 'format_atom', 'polygon_fact']

_BARE = re.compile(r'[a-z][A-Za-z0-9_]*')


def format_number(value):
    text = f'{float(value):.9g}'
    if text == '-0':
        return '0'
    return text


def format_symbol(value):
    """ Symbol as it should be written, quoted when it would not read back as a symbol. """
    value = str(value)
    if _BARE.fullmatch(value):
        return value
    escaped = value.replace('\\', '\\\\').replace('"', '\\"')
    if '\n' in escaped:
        raise ValueError(f'Symbols cannot contain newlines [{value!r}]')
    return f'"{escaped}"'


def _interval(interval):
    return f'time({interval.start},{interval.end})'


def format_atom(atom):
    """ Relation atom as a term, without the closing period. """
    args = ', '.join(format_symbol(a) for a in atom.args)
    return f'{atom.aspect}({atom.name}, {args}, {_interval(atom.interval)})'


def polygon_fact(id, polygon):
    coords = ', '.join(f'{format_number(x)},{format_number(y)}' for x, y in polygon.coords)
    return f'polygon({format_symbol(id)}, ({coords})).'


def _witness_facts(entity, witnesses):
    lines = []
    slices = []
    name = format_symbol(entity)
    for witness in witnesses:
        tx, ty = (format_number(v) for v in witness.vector)
        if witness.time is None:
            lines.append(f'translation_vector({name}, {tx}, {ty}).')
        else:
            lines.append(f'translation_vector({name}, at({witness.time}), {tx}, {ty}).')
        slices.extend(witness.slices)

    if slices:
        slices = sorted(slices, key=lambda s: s.time)
        ids = [f'{entity}_w{s.time}' for s in slices]
        refs = ', '.join(f'slice({s.time}, {format_symbol(i)})' for s, i in zip(slices, ids))
        lines.append(f'spatial(witness, {name}, ({refs})).')
        lines.extend(polygon_fact(i, s.shape) for s, i in zip(slices, ids))
    return lines


def serialize(results):
    """ Write a result set in the fact syntax.

    Args:
        results (ResultSet): result set to write

    Returns:
        str: ``status/1`` fact, ``violated/1`` facts, atom facts and witness facts, one per line

    Note:
        An empty consistent result set is written as an empty string.
    """
    if results.is_empty and results.status == 'consistent':
        return ''

    lines = [f'status({results.status}).']
    lines.extend(f'violated({format_atom(atom)}).' for atom in sorted(results.violated))
    lines.extend(f'{format_atom(atom)}.' for atom in sorted(results.atoms))
    for entity in sorted(results.witnesses):
        lines.extend(_witness_facts(entity, results.witnesses[entity]))
    return '\n'.join(lines) + '\n'
