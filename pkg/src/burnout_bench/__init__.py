"""Fairness analysis of round-robin sports schedules."""

__version__ = "0.1.0"
