# -*- coding: utf-8 -*-
"""
Strbox experiments module |br|
This package contains synthetic scene generators, benchmark harnesses, the motion planner
and slow independent oracles to cross-check the reasoning of strbox.
"""

from .generate import *
from .oracle import *
from .bench import *
from .plan import *
