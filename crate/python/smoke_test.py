"""Smoke test for the pairspec extension module.

Build it first with `cargo build --release -p pairspec-py`. The script imports
`pairspec` if it is already installed, and otherwise loads the shared library
straight from target/.
"""

import importlib.machinery
import importlib.util
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    try:
        import pairspec

        return pairspec
    except ImportError:
        pass
    for profile in ("release", "debug"):
        for suffix in ("so", "dylib"):
            lib = ROOT / "target" / profile / f"libpairspec_py.{suffix}"
            if lib.exists():
                loader = importlib.machinery.ExtensionFileLoader("pairspec", str(lib))
                spec = importlib.util.spec_from_loader("pairspec", loader)
                module = importlib.util.module_from_spec(spec)
                loader.exec_module(module)
                return module
    sys.exit("pairspec extension not found; run cargo build --release -p pairspec-py")


def main():
    ps = load_module()
    files = dict(ps.catalog_files())
    print(f"{len(files)} catalog pairs")

    sb = files["super_boolean"]
    assert ps.validate(sb) == ("super_boolean", 3)
    flags = ps.classify(sb)
    assert flags["kind"] == "first" and flags["proper"]

    blocks = ps.congruences(sb)
    assert blocks[0] == [["0"], ["1"], ["e"]]
    assert blocks[-1] == [["0", "1", "e"]]

    spec = ps.spectrum(files["supertropical(order 2, id)"])
    print("supertropical hSpec size:", len(spec["hspec"]))

    signs_text = (ROOT / "crates" / "core" / "catalog" / "hyper_signs.json").read_text()
    report = ps.verify(signs_text)
    s = report["summary"]
    print(f"signs: {s['passed']} passed, {s['failed']} failed, {s['skipped']} skipped")
    failed = [r["check_id"] for r in report["reports"] if r["passed"] is False]
    print("failing checks:", failed)

    try:
        ps.congruences(files["power_set(0,1,-1)"], max=2)
    except ps.CapExceeded as e:
        print("cap enforced:", e)
    else:
        raise AssertionError("cap not enforced")

    try:
        ps.validate('{"name": 1}')
    except ValueError as e:
        print("parse error:", e)

    print("ok")


if __name__ == "__main__":
    main()
