# -*- coding: utf-8 -*-
#
# STRBOX: Space-Time Reasoning toolbox
# Copyright EAVISE
#

try:
    from strbox._version import __version__
except ImportError:
    __version__ = '0.0.0'

from .log import *

from . import geometry
from . import spacetime
from . import algebra
from . import translation
from . import interface
from . import experiments
from . import config

__all__ = ['geometry', 'spacetime', 'algebra', 'translation', 'interface', 'experiments', 'config']
