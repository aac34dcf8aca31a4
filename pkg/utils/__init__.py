"""
Utility modules for SignQuery.
"""

from .logger import logger, set_level
