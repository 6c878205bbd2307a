"""Exact rank statistics of unimodal sequences and their asymptotics."""

from .series import BivariateSeries, ZetaLaurent
from .tables import Family, RankTable, build_table

__all__ = ["BivariateSeries", "ZetaLaurent", "Family", "RankTable", "build_table"]
__version__ = "0.1.0"
