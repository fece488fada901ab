"""
Unit tests
"""


