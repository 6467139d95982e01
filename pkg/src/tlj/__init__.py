"""Exact Temperley-Lieb-Jones calculus and coherence checks for the dilute operator algebra."""

from tlj.scalars import Cyclotomic, Level

__all__ = ["Cyclotomic", "Level"]
