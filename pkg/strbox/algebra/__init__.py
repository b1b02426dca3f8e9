# -*- coding: utf-8 -*-
"""
Strbox algebra module |br|
This package contains the purely qualitative reasoning of strbox:
the RCC-8 composition table, property rule tables, qualitative networks, path consistency and scenario search.
"""

from .tables import *
from .rules import *
from .network import *
