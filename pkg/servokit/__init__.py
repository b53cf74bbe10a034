"""
Feature-based visual servoing of a robot flange onto a cylindrical hole.
"""
__version__ = '0.1.0'
