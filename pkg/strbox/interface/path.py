# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
import glob
import os
from pathlib import Path

__all__ = ['expand']


def files(folder, extension=None):
    """ List all files in a directory omitting directories. """
    for filepath in Path(folder).glob('**/*'):
        if filepath.is_file() and (extension is None or filepath.suffix == extension):
            yield str(filepath)


def modulo_expand(expr):
    """ Expands a path with a **%d** to files with consecutive numbers, starting at 0. """
    number = 0
    while True:
        filename = expr % number
        if not os.path.isfile(filename):
            break
        yield filename
        number += 1


def expand(expr, extension=None):
    """ Expand a file selection expression into multiple filenames.

    Args:
        expr (str or Path): File sequence expression
        extension (str, optional): Only keep files with this suffix when expanding a directory; Default **all files**

    Returns:
        list: sorted filenames

    Note:
        The ``expr`` parameter can be one of the following expressions:

        - a file itself -> return filename
        - a directory -> return files from directory and subdirectories (recursive)
        - path with **'*'** wildcard -> return globbed files (recursive if **'\\*\\*'** is used)
        - path with **'%d'** wildcard -> return incremental files
    """
    expr = str(expr)
    if os.path.isdir(expr):
        return sorted(files(expr, extension))
    elif os.path.isfile(expr):
        return [expr]
    elif '*' in expr:
        return sorted(f for f in glob.glob(expr, recursive=True) if os.path.isfile(f))
    elif '%' in expr:
        return list(modulo_expand(expr))
    else:
        raise FileNotFoundError(f'No files found for {expr}')
