"""Superspecial abelian surfaces with CM: splitting, Lie types, CM types, RRC and lifting verdicts."""

from .catalog import FAMILIES, WeilNumberInstance, enumerate_catalog, parse_lmfdb_label
from .classify import classify, classify_all
from .rrc import rrc_verdict
from .surface import surface_for

__all__ = ["FAMILIES", "WeilNumberInstance", "enumerate_catalog", "parse_lmfdb_label",
           "classify", "classify_all", "rrc_verdict", "surface_for"]
