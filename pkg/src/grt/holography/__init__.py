"""Holographic tensor networks: tilings, transfer nodes and correlators."""
from .correlators import *
from .frame import *
from .nodes import *
from .tiling import *
from .violin import *
