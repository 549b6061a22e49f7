"""External hyperbolic-geometry engine adapters.

The bridge never computes hyperbolic structures itself: it either imports
SnapPy or shells out to an executable named by the HYP_ENGINE environment
variable.  The subprocess protocol is one JSON object on stdin::

    {"format": "DTCode" | "PDCode", "payload": "..."}

answered by one JSON object on stdout::

    {"status": "hyperbolic" | "not_hyperbolic" | "error",
     "volume": <float, when hyperbolic>, "message": <str, when error>}
"""

from __future__ import annotations

import json
import os
import subprocess
from dataclasses import dataclass


class EngineUnavailable(Exception):
    """No usable hyperbolic-geometry engine could be found."""


class EngineRejectedInput(Exception):
    """The engine ran but could not process the given diagram."""


@dataclass(frozen=True)
class EngineResult:
    status: str  # "hyperbolic" or "not_hyperbolic"
    volume: float | None


class SnapPyEngine:
    """In-process adapter around the snappy package."""

    name = "snappy"

    def __init__(self):
        try:
            import snappy  # type: ignore
        except ImportError as e:
            raise EngineUnavailable(
                "snappy is not importable; set HYP_ENGINE to an engine executable"
            ) from e
        self._snappy = snappy

    def volume(self, fmt: str, payload: str) -> EngineResult:
        snappy = self._snappy
        try:
            if fmt == "DTCode":
                values = [int(v) for v in payload.split()]
                link = snappy.Link(f"DT: [{tuple(values)}]")
            elif fmt == "PDCode":
                import re

                quads = [
                    [int(g) for g in m.groups()]
                    for m in re.finditer(
                        r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)", payload
                    )
                ]
                link = snappy.Link(quads)
            else:
                raise EngineRejectedInput(f"unsupported format {fmt!r}")
            manifold = link.exterior()
        except EngineRejectedInput:
            raise
        except Exception as e:
            raise EngineRejectedInput(str(e)) from e
        solution = manifold.solution_type()
        if "positively oriented" in solution:
            return EngineResult("hyperbolic", float(manifold.volume()))
        return EngineResult("not_hyperbolic", None)

    def manifold_volume(self, name: str) -> float:
        """Volume of a census manifold; used for calibration cross-checks."""
        return float(self._snappy.Manifold(name).volume())


class SubprocessEngine:
    """Adapter talking the JSON line protocol to an external executable."""

    def __init__(self, path: str):
        if not (os.path.isfile(path) and os.access(path, os.X_OK)):
            raise EngineUnavailable(f"HYP_ENGINE={path!r} is not an executable file")
        self.path = path
        self.name = os.path.basename(path)

    def volume(self, fmt: str, payload: str) -> EngineResult:
        request = json.dumps({"format": fmt, "payload": payload})
        try:
            proc = subprocess.run(
                [self.path],
                input=request,
                capture_output=True,
                text=True,
                timeout=600,
            )
        except (OSError, subprocess.TimeoutExpired) as e:
            raise EngineUnavailable(f"engine failed to run: {e}") from e
        try:
            reply = json.loads(proc.stdout.strip().splitlines()[-1])
        except (IndexError, json.JSONDecodeError) as e:
            raise EngineRejectedInput(
                f"engine produced no JSON reply (exit {proc.returncode})"
            ) from e
        status = reply.get("status")
        if status == "hyperbolic":
            return EngineResult("hyperbolic", float(reply["volume"]))
        if status == "not_hyperbolic":
            return EngineResult("not_hyperbolic", None)
        raise EngineRejectedInput(str(reply.get("message", "engine error")))


def resolve_engine(env: dict | None = None):
    """Engine named by HYP_ENGINE: 'snappy' (default) imports the package,
    anything else is treated as a path to an executable."""
    env = os.environ if env is None else env
    choice = env.get("HYP_ENGINE", "snappy")
    if choice == "snappy":
        return SnapPyEngine()
    return SubprocessEngine(choice)
