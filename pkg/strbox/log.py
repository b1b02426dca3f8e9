# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Logging
-------
All strbox modules log to children of the ``strbox`` logger.
One console handler is installed on it, whose level comes from the ``STR_LOGLVL`` environment variable.
"""
import logging
import os


__all__ = ['DEPRECATED', 'set_log_level', 'logger']

DEPRECATED = 35
LEVELS = ('DEBUG', 'INFO', 'WARNING', 'DEPRECATED', 'ERROR', 'CRITICAL')


def deprecated(self, message, *args, **kws):
    """ Log a message on the DEPRECATED level, only the first time it is seen by this logger. """
    if not hasattr(self, 'deprecated_msgs'):
        self.deprecated_msgs = set()

    if self.isEnabledFor(DEPRECATED) and message not in self.deprecated_msgs:
        self.deprecated_msgs.add(message)
        self._log(DEPRECATED, message, args, **kws)


logging.addLevelName(DEPRECATED, 'DEPRECATED')
logging.Logger.deprecated = deprecated


def _level(level):
    if isinstance(level, int):
        return level
    name = str(level).strip().upper()
    if name.isdigit():
        return int(name)
    if name not in LEVELS:
        raise ValueError(f'Unknown log level {level}, expected a number or one of {LEVELS}')
    return logging.getLevelName(name)


def set_log_level(level):
    """ Set the level of the strbox console handler.

    Args:
        level (int or str): level number or case insensitive level name
    """
    ch.setLevel(_level(level))


# Console Handler
ch = logging.StreamHandler()
ch.setFormatter(logging.Formatter('{levelname:10} [{name}] {message}', style='{'))

# Logger
logger = logging.getLogger('strbox')
logger.setLevel(logging.DEBUG)
logger.addHandler(ch)

try:
    set_log_level(os.environ.get('STR_LOGLVL', logging.INFO))
except ValueError as err:
    set_log_level(logging.INFO)
    logger.warning(f'Ignoring STR_LOGLVL: {err}')
