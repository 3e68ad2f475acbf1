"""Ability assessment and assistive-technology recommendation engine."""

__version__ = "0.1.0"
