"""Cached per-process analysis pipelines shared across test modules."""

from functools import cache

from bimodconn.curvature import InducedCalculus, OmegaHat, OmegaM, j_ideal
from bimodconn.fixtures import conn_d, grass, twist

FIXTURES = ("flat", "flatq", "twist", "grass")

_BUILDERS = {"flat": lambda: conn_d("universal"),
             "flatq": lambda: conn_d("quotient"),
             "twist": twist,
             "grass": grass}


@cache
def pipeline(which: str):
    """(connection, OmegaHat, JIdeal, OmegaM) for one fixture."""
    conn = _BUILDERS[which]()
    oh = OmegaHat(conn)
    j = j_ideal(conn, oh)
    om = OmegaM(conn, j)
    return conn, oh, j, om


@cache
def induced(which: str) -> InducedCalculus:
    conn, _, _, om = pipeline(which)
    return InducedCalculus(conn, om)
