"""Symptom-based disease prediction with a weighted-vote classifier ensemble."""

__version__ = "0.1.0"
