"""Smoke test for the annulus_py extension.

Build and stage the module first:

    cargo build -p annulus-py --release --features extension-module
    cp target/release/libannulus_py.so python/annulus_py.so
    python3 python/smoke_test.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from annulus_py import Config  # noqa: E402


def main() -> int:
    cfg = Config(3, 2, 1)
    assert (cfg.n, cfg.N) == (4, 10), repr(cfg)

    beta = cfg.arc("[0o,0i]")
    assert beta.classify() == "Preprojective"
    assert len(beta.elementary_moves()) == 2
    assert beta.tau_inv().tau() == beta
    assert cfg.arc("[0o,2o]").classify() == "PeripheralOuter"
    assert all(beta.is_long_move(t) for _, t in beta.long_moves(3))

    try:
        cfg.arc("[0o,1o]")
    except ValueError:
        pass
    else:
        raise AssertionError("boundary segment accepted")
    try:
        Config(1, 2)
    except ValueError:
        pass
    else:
        raise AssertionError("g < h accepted")

    ar = cfg.build("ar")
    assert ar.vertex_count() == 214
    assert ar.component_sizes() == {"I": 35, "P": 35, "Tg": 99, "Th": 45}
    assert ar.arrow_count("elementary") + ar.arrow_count("long") == ar.arrow_count()
    doc = json.loads(ar.to_json())
    assert doc["config"]["N"] == 10 and len(doc["vertices"]) == 214

    cluster = cfg.build("cluster")
    assert cluster.vertex_count() == 219
    assert cluster.connected_components() == 3
    assert cfg.build("brustle").arrow_count("connecting") == 14

    ok, checks = Config(2, 1).verify("all")
    assert ok, [c for c in checks if not c[1]]
    ok, checks = cfg.verify_f(1)
    assert ok and checks[0][0] == "f[j=1]"

    print(f"annulus_py smoke test passed ({len(checks)} f-check, {ar.vertex_count()} vertices)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
