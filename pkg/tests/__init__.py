"""
Test package for domcol.
"""
