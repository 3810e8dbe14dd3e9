"""Exact counting of dormant PGL2 oper data of level N in characteristic p."""

__version__ = "0.1.0"

from .arith import PrimeLevel, RadiusClass  # noqa: E402,F401
