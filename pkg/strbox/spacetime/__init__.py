# -*- coding: utf-8 -*-
"""
Strbox spacetime module |br|
This package contains space-time objects, histories of polygon slices,
and the derivation of topology, size and movement relations between them.
"""

from .atoms import *
from .stobject import *
from .derive import *
