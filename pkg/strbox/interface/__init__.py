# -*- coding: utf-8 -*-
"""
Strbox interface module |br|
This package contains the fact file language of strbox:
parsing, evaluation of fact programs, query filters, result formats and the ``str`` command line.
"""

from ..spacetime import UnboundEntity  # noqa: F401
from .parser import *
from .filters import *
from .evaluate import *
from .serialize import *
from .formats import *
from .path import *
