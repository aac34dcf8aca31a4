"""
Configuration module for SignQuery.
"""

from .constants import *
from .settings import *
