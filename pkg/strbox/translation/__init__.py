# -*- coding: utf-8 -*-
"""
Strbox translation module |br|
This package contains the mixed qualitative and quantitative reasoning of strbox:
solution sets of unground translations, their intersections, minimal witnesses and translated program checking.
"""

from .workspace import *
from .solutionset import *
from .program import *
from .export import *
