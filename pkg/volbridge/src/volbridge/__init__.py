"""Adapter feeding exported classical diagrams to an external hyperbolic
geometry engine, with volume lower-bound checks."""

from .bridge import (
    BoundCheck,
    Diagram,
    VolumeRecord,
    compute_volume,
    load_diagram,
    verify_bounds,
    volumes_table,
)
from .constants import V_OCT
from .engine import (
    EngineRejectedInput,
    EngineResult,
    EngineUnavailable,
    SnapPyEngine,
    SubprocessEngine,
    resolve_engine,
)

__all__ = [
    "BoundCheck",
    "Diagram",
    "VolumeRecord",
    "compute_volume",
    "load_diagram",
    "verify_bounds",
    "volumes_table",
    "V_OCT",
    "EngineRejectedInput",
    "EngineResult",
    "EngineUnavailable",
    "SnapPyEngine",
    "SubprocessEngine",
    "resolve_engine",
]
