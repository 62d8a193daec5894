"""Exact invariants of finitely determined map germs (C^2, 0) -> (C^3, 0)."""

from __future__ import annotations

from .catalog import catalog, catalog_germ
from .cyclotomic import CyclotomicNumber
from .errors import (
    ExtensionUnsupported,
    GermInvError,
    InternalInconsistency,
    InvalidOverride,
    NeedsOverride,
    NotApplicable,
    NotFinitelyDetermined,
    ParseError,
    ResourceExceeded,
    TruncationExceeded,
)
from .expr import parse_poly
from .fileformat import ReportDocument, parse_germ_file
from .germ import Germ, InvariantReport, analyze
from .local import jet_codimension_oracle, local_codimension, standard_basis
from .poly import LocalPolynomial
from .puiseux import intersection_number, puiseux_branches

__all__ = [
    "CyclotomicNumber",
    "ExtensionUnsupported",
    "Germ",
    "GermInvError",
    "InternalInconsistency",
    "InvalidOverride",
    "InvariantReport",
    "LocalPolynomial",
    "NeedsOverride",
    "NotApplicable",
    "NotFinitelyDetermined",
    "ParseError",
    "ReportDocument",
    "ResourceExceeded",
    "TruncationExceeded",
    "analyze",
    "catalog",
    "catalog_germ",
    "intersection_number",
    "jet_codimension_oracle",
    "local_codimension",
    "parse_germ_file",
    "parse_poly",
    "puiseux_branches",
    "standard_basis",
]
