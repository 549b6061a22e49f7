"""Toolkit for classical and virtual link diagrams given as signed Gauss
codes: Turaev surfaces and genus, orientability, primeness certificates,
diagram rewriting, and notation export."""

from .codes import (
    ArcRef,
    GaussCode,
    Passage,
    SubcodeInterval,
    ValidationReport,
    canonicalize,
    connectivity,
    is_connected,
    is_reduced,
    parse,
    render,
    subcodes,
    validate,
)
from .surface import (
    RibbonGraph,
    StateCount,
    SurfaceReport,
    build_turaev_ribbon,
    carrier_genus,
    parity_orientable,
    state_circles,
    surface_report,
    trace_boundaries,
    turaev_code,
    turaev_genus,
)
from .moves import (
    MoveDescriptor,
    MoveLog,
    MoveRecord,
    apply_logged,
    apply_move,
    code_hash,
    compose,
    compose_descriptor,
    d_sequence,
    r2_sites,
    r3_sites,
    replay,
    virtualize,
)
from .notation import dt_code, parse_pd, pd_code
from .prime import (
    ExceptionalCase,
    HyperbolicityVerdict,
    PrimenessCertificate,
    exceptional_case,
    hyperbolicity_certificate,
    is_two_braid,
    make_turaev_prime,
    primeness_certificate,
)
from .pipeline import (
    ExportBundle,
    TuraevReport,
    analyze_code,
    analyze_pipeline,
    export_diagram,
    run_batch,
)

__all__ = [
    "ArcRef",
    "GaussCode",
    "Passage",
    "SubcodeInterval",
    "ValidationReport",
    "canonicalize",
    "connectivity",
    "is_connected",
    "is_reduced",
    "parse",
    "render",
    "subcodes",
    "validate",
    "RibbonGraph",
    "StateCount",
    "SurfaceReport",
    "build_turaev_ribbon",
    "carrier_genus",
    "parity_orientable",
    "state_circles",
    "surface_report",
    "trace_boundaries",
    "turaev_code",
    "turaev_genus",
    "MoveDescriptor",
    "MoveLog",
    "MoveRecord",
    "apply_logged",
    "apply_move",
    "code_hash",
    "compose",
    "compose_descriptor",
    "d_sequence",
    "r2_sites",
    "r3_sites",
    "replay",
    "virtualize",
    "dt_code",
    "parse_pd",
    "pd_code",
    "ExceptionalCase",
    "HyperbolicityVerdict",
    "PrimenessCertificate",
    "exceptional_case",
    "hyperbolicity_certificate",
    "is_two_braid",
    "make_turaev_prime",
    "primeness_certificate",
    "ExportBundle",
    "TuraevReport",
    "analyze_code",
    "analyze_pipeline",
    "export_diagram",
    "run_batch",
]
