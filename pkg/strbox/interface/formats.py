# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Formats
-------
Result set readers and writers, and the loading of fact files.
"""
import logging
import os
import yaml
from ..geometry import Polygon, TranslationVector
from ..spacetime import Interval, RelationAtom, Slice
from ..translation import Witness
from .evaluate import ResultSet
from .parser import FactProgram, check_references, parse
from .path import expand
from .serialize import serialize

__all__ = ['Parser', 'FactParser', 'YamlParser', 'formats', 'load', 'load_program', 'generate']
log = logging.getLogger(__name__)

YAML_VERSION = 1


class Parser:
    """ Generic result set parser.

    Args:
        kwargs (optional): Derived parsers should use keyword arguments to get any information they need upon initialisation.
    """

    extension = '.txt'  #: Extension of the files this parser parses or creates.
    read_mode = 'r'  #: Reading mode this parser uses when it parses a file.
    write_mode = 'w'  #: Writing mode this parser uses when it generates a file.

    def __init__(self, **kwargs):
        pass

    def serialize(self, results):
        """ Serialize a :class:`ResultSet` into one string. """
        raise NotImplementedError('Serialization is not implemented for this parser')

    def deserialize(self, string):
        """ Parse a string into a :class:`ResultSet`. """
        raise NotImplementedError('Deserialization is not implemented for this parser')


class FactParser(Parser):
    """ Result sets in the fact syntax.

    Example:
        >>> results.lp
            status(consistent).
            movement(follows, fly10, fly24, time(0,1)).
            translation_vector(tr8, -93, -186).
            spatial(witness, tr8, (slice(0, tr8_w0))).
            polygon(tr8_w0, (...)).
    """

    extension = '.lp'

    def serialize(self, results):
        return serialize(results)

    def deserialize(self, string):
        return ResultSet.from_program(parse(string))


class YamlParser(Parser):
    """ Result sets as a YAML mapping.

    Example:
        >>> results.yaml
            version: 1
            status: consistent
            atoms:
            - [movement, follows, [fly10, fly24], [0, 1]]
            violated: []
            witnesses:
              tr8:
              - vector: [-93.0, -186.0]
                time: null
                slices:
                - time: 0
                  polygon: [[x1, y1], [x2, y2], ...]
    """

    extension = '.yaml'

    def serialize(self, results):
        def atom(a):
            return [a.aspect, a.name, list(a.args), [a.interval.start, a.interval.end]]

        obj = {
            'version': YAML_VERSION,
            'status': results.status,
            'atoms': [atom(a) for a in results.atoms],
            'violated': [atom(a) for a in results.violated],
            'witnesses': {
                entity: [
                    {
                        'vector': [w.vector.tx, w.vector.ty],
                        'time': w.time,
                        'slices': [
                            {'time': s.time, 'polygon': s.shape.coords.tolist()} for s in w.slices
                        ],
                    }
                    for w in witnesses
                ]
                for entity, witnesses in results.witnesses.items()
            },
        }
        return yaml.safe_dump(obj, default_flow_style=None, sort_keys=False)

    def deserialize(self, string):
        obj = yaml.safe_load(string) or {}
        if 'version' not in obj:
            log.deprecated('YAML result file without a version key, assuming version 1')
        elif obj['version'] > YAML_VERSION:
            raise ValueError(f'YAML result version {obj["version"]} is newer than supported {YAML_VERSION}')

        def atom(a):
            aspect, name, args, (start, end) = a
            return RelationAtom(aspect, name, tuple(args), Interval(start, end))

        witnesses = {
            str(entity): tuple(
                Witness(
                    TranslationVector(*w['vector']),
                    tuple(Slice(s['time'], Polygon(s['polygon'])) for s in w.get('slices', [])),
                    w.get('time'),
                )
                for w in items
            )
            for entity, items in (obj.get('witnesses') or {}).items()
        }
        return ResultSet(
            obj.get('status', 'consistent'),
            [atom(a) for a in obj.get('atoms') or []],
            witnesses,
            [atom(a) for a in obj.get('violated') or []],
        )


formats = {
    'facts': FactParser,
    'yaml': YamlParser,
}


def _parser(fmt, **kwargs):
    if type(fmt) is str:
        try:
            return formats[fmt](**kwargs)
        except KeyError as err:
            raise TypeError(f'Invalid parser {fmt}, expected one of {sorted(formats)}') from err
    elif isinstance(fmt, type) and issubclass(fmt, Parser):
        return fmt(**kwargs)
    raise TypeError(f'Invalid parser {fmt}')


def load_program(expr):
    """ Parse one or more fact files into one program.

    Args:
        expr (str or Path): file, directory (``.lp`` files), glob or ``%d`` expression

    Returns:
        FactProgram: facts of every file, in sorted file order
    """
    prog = FactProgram()
    for filename in expand(expr, FactParser.extension):
        log.debug(f'Reading {filename}')
        with open(filename, FactParser.read_mode, encoding='utf-8') as f:
            prog.update(parse(f, check=False))
    check_references(prog)
    return prog


def load(fmt, expr, **kwargs):
    """ Parse result set file(s) in any format.

    Args:
        fmt (str or class): Format from the :data:`formats` dictionary
        expr (str or Path): file, directory, glob or ``%d`` expression
        **kwargs: Keyword arguments that are passed to the parser

    Returns:
        ResultSet: union of the atoms and witnesses of every file; inconsistent when any file is
    """
    parser = _parser(fmt, **kwargs)
    merged = None
    for filename in expand(expr, parser.extension):
        with open(filename, parser.read_mode, encoding='utf-8') as f:
            results = parser.deserialize(f.read())
        if merged is None:
            merged = results
            continue
        status = merged.status
        if 'inconsistent' in (status, results.status):
            status = 'inconsistent'
        merged = ResultSet(
            status,
            merged.atoms + results.atoms,
            {**merged.witnesses, **results.witnesses},
            merged.violated + results.violated,
        )
    return merged if merged is not None else ResultSet()


def generate(fmt, results, path, **kwargs):
    """ Generate a result set file in any format.

    Args:
        fmt (str or class): Format from the :data:`formats` dictionary
        results (ResultSet): results to write
        path (str or Path): Path to the file; a directory gets a ``results`` file with the parser extension
        **kwargs (dict): Keyword arguments that are passed to the parser
    """
    parser = _parser(fmt, **kwargs)
    path = str(path)
    if os.path.isdir(path):
        path = os.path.join(path, 'results' + parser.extension)
    elif len(os.path.splitext(path)[1]) == 0:
        path += parser.extension

    with open(path, parser.write_mode, encoding='utf-8') as f:
        f.write(parser.serialize(results))
    log.debug(f'Wrote {path}')
