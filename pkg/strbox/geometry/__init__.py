# -*- coding: utf-8 -*-
"""
Strbox geometry module |br|
This package contains the planar geometry strbox reasons with:
validated polygons, polygon sets with boolean operations, Minkowski sums and the RCC-8 classifier.
"""

from .polygon import *
from .polygonset import *
from .minkowski import *
from .relations import *
