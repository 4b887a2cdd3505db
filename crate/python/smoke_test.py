"""Smoke test for the rootcause_py extension module.

Build and install first, e.g.

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/rootcause_py-*.whl
"""

import pathlib
import sys

import rootcause_py as rc

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURE = ROOT / "crates" / "core" / "fixtures" / "hypertension.net"


def close(a, b, tol=1e-4):
    return abs(a - b) <= tol


def main():
    net = rc.Network.parse(FIXTURE.read_text())
    assert net.p == 5 and net.outcome == "Y", net
    assert net.validate() == []
    assert rc.Network.parse(net.serialize()).fingerprint() == net.fingerprint()

    full = "X1=1 X2=1 X3=1 X4=1 X5=1 Y=1"
    assert close(rc.prc(net, "{X1,X2}", full), 0.5370)
    assert close(rc.prc(net, "X4", "Y=1"), 0.3046)
    assert close(rc.prc(net, "X4", "Y=1", engine="oracle"), 0.3046)
    assert close(rc.prc(net, "none", "Y=1"), 0.3749)

    rows = rc.rank(net, "Y=1", engine="both")
    assert rows[0]["prc"] >= rows[-1]["prc"]
    none = next(r for r in rows if r["candidate"] == "none")
    assert close(none["prc"], 0.3749) and none["posttce"] is None
    x4 = next(r for r in rows if r["candidate"] == "{X4}")
    assert close(x4["posttce"], 0.5970) and close(x4["posterior"], 0.8004)
    assert max(r["delta"] for r in rows) < 1e-10

    summary = rc.oracle_check(p=3, seeds=20)
    assert summary["passed"] and summary["models"] == 20, summary

    for bad in ["", "[variables]\nA\n"]:
        try:
            rc.Network.parse(bad)
        except ValueError:
            pass
        else:
            raise AssertionError(f"parsed {bad!r}")
    try:
        rc.prc(net, "{Y}", "")
    except ValueError:
        pass
    else:
        raise AssertionError("outcome accepted as candidate")

    print("smoke test ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
