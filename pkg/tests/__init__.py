"""
Tests package for the truncated invariants engine
"""
