"""
UI modules for SignQuery.
"""

from .app import SignQueryApp
