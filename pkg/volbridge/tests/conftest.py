import stat
import textwrap

import pytest


FAKE_ENGINE = textwrap.dedent(
    """\
    #!/usr/bin/env python3
    import json, sys

    CANNED = {
        ("DTCode", "4 6 2"): {"status": "not_hyperbolic"},
        ("DTCode", "4 6 8 2"): {"status": "hyperbolic", "volume": 2.029883212819},
        ("DTCode", "4 8 10 2 6"): {"status": "hyperbolic", "volume": 2.828122088331},
        ("DTCode", "4 8 12 10 2 6"): {"status": "hyperbolic", "volume": 3.163963228883},
        ("PDCode", "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]"): {"status": "not_hyperbolic"},
    }

    req = json.loads(sys.stdin.read())
    key = (req.get("format"), req.get("payload", "").strip())
    reply = CANNED.get(key, {"status": "error", "message": "unknown diagram"})
    print(json.dumps(reply))
    """
)


@pytest.fixture
def fake_engine(tmp_path):
    path = tmp_path / "fake_engine.py"
    path.write_text(FAKE_ENGINE)
    path.chmod(path.stat().st_mode | stat.S_IXUSR)
    from volbridge.engine import SubprocessEngine

    return SubprocessEngine(str(path))


@pytest.fixture
def real_engine():
    """A genuine hyperbolic engine, or a documented skip.

    The sandbox mirror carries no snappy build, so without HYP_ENGINE this
    skips: that is the documented failure mode for the live volume checks.
    """
    from volbridge.engine import EngineUnavailable, resolve_engine

    try:
        return resolve_engine()
    except EngineUnavailable as e:
        pytest.skip(f"no hyperbolic engine available: {e}")
