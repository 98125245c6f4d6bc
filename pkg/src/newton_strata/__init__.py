"""Top-level package for newton_strata."""

__all__ = [
    "build_classical",
    "datum_from_name",
    "enumerate_bgmu",
    "make_leaf_datum",
    "newton_slopes",
    "root_sets",
    "strata_report",
]

__author__ = """newton-strata maintainers"""
__version__ = "0.1.0"

from newton_strata.central_leaf import make_leaf_datum, root_sets
from newton_strata.kottwitz import enumerate_bgmu
from newton_strata.root_datum import build_classical, datum_from_name
from newton_strata.strata import strata_report
from newton_strata.witt import newton_slopes
