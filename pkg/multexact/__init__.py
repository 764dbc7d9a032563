"""
multexact: optimal exact rejection regions for multiple Fisher's exact tests.
"""

__version__ = "0.1.0"
