"""volbridge command line: volumes of exported diagrams and bound checks."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bridge import compute_volume, verify_bounds, volumes_table
from .constants import V_OCT
from .engine import EngineRejectedInput, EngineUnavailable


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="volbridge", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", help="volume of one exported diagram file")
    p.add_argument("file")

    p = sub.add_parser("table", help="CSV volume table over a directory")
    p.add_argument("directory")
    p.add_argument("--out", help="write CSV here instead of stdout")

    sub.add_parser("voct", help="print the ideal octahedron volume constant")

    args = ap.parse_args(argv)
    try:
        if args.command == "volume":
            rec = compute_volume(args.file)
            checks = verify_bounds([rec])
            print(
                json.dumps(
                    {
                        "name": rec.name,
                        "genus_hint": None if rec.genus_hint is None else str(rec.genus_hint),
                        "volume": rec.volume,
                        "engine_status": rec.engine_status,
                        "bound_ok": checks[0].ok,
                    }
                )
            )
            return 0
        if args.command == "table":
            text = volumes_table(args.directory)
            if args.out:
                Path(args.out).write_text(text)
            else:
                print(text, end="")
            return 0
        if args.command == "voct":
            print(f"{V_OCT:.12f}")
            return 0
    except EngineUnavailable as e:
        print(json.dumps({"error": {"kind": "EngineUnavailable", "message": str(e)}}))
        return 3
    except EngineRejectedInput as e:
        print(json.dumps({"error": {"kind": "EngineRejectedInput", "message": str(e)}}))
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
