"""
Integration tests
"""


