"""Smoke test for the `quandle` extension module.

Build it first:

    cargo build -p quandle-py --release --features extension-module

The script imports `quandle` from sys.path if available, otherwise loads
target/release/libquandle.so directly.
"""

import importlib.machinery
import importlib.util
import json
import pathlib
import sys


def load():
    try:
        import quandle
        return quandle
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    for profile in ("release", "debug"):
        lib = root / "target" / profile / "libquandle.so"
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("quandle", str(lib))
            spec = importlib.util.spec_from_file_location("quandle", lib, loader=loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            sys.modules["quandle"] = module
            return module
    sys.exit("quandle extension not found; build crates/python first")


def main():
    q = load()

    p = q.Poly("1 + t - t^2")
    assert str(p * q.Poly("t^-1")) == "t^-1 + 1 - t"
    assert p.eval_at_one() == 1
    assert str(q.reduce(q.Poly("t^3"), "mod 1 + t + t^2 + t^3")) == "-1 - t - t^2"

    nf = q.normalize("x*(x*y)")
    assert str(nf) == "((-1 - t)·e_y, y)", str(nf)
    assert nf.gen == "y" and nf.coeffs == {"y": "-1 - t"}
    valid, lhs, rhs = q.decide("x*(x*y)", "y", "sym:2")
    assert valid and lhs == rhs
    assert not q.decide("x*y", "y*x")[0]

    f = q.FreeQuandle(["0", "1", "2"])
    a = f.unembed({"1": "1 - t", "2": "1 + t - t^2"})
    assert a.gen == "2" and a.coeffs == {"1": "1", "2": "t"}
    assert f.embed(a) == {"1": "1 - t", "2": "1 + t - t^2"}
    assert f.decompose(a) == [("1", "1"), ("2", "t")]
    assert f.from_json(a.to_json()) == a
    try:
        f.unembed({"1": "1 - t", "2": "1 + t"})
    except q.QuandleError as e:
        assert "basis vector" in str(e)
    else:
        raise AssertionError("expected QuandleError")

    inv = q.FreeQuandle(["x", "y", "z"], "sym:2")
    b = inv.star(inv.generator("y"), inv.generator("z"))
    assert inv.joyce(b) == [2, -1]

    factors, residues = q.crt(6, q.Poly("1 + 2t"))
    assert factors == ["1 + t", "1 + t + t^2", "1 - t + t^2"]
    assert residues == ["-1", "1 + 2t", "1 + 2t"]

    t = q.Table.affine([3], 2)
    assert t.rows() == [[0, 2, 1], [2, 1, 0], [1, 0, 2]]
    assert all(t.check_axioms().values())
    assert t.dis_order() == 3 and t.dis_abelian() and t.lmlt_order() == 6
    assert t.orbits() == [[0, 1, 2]]
    assert t.check_symmetry(2) and not t.check_reductivity(2)
    assert t.check_i_quandle(q.Poly("1 + t"))
    assert q.Table.parse(t.to_text()) == t

    r = q.Table.red2sym(3, 2)
    assert r.size == 6 and r.check_reductivity(2) and r.check_symmetry(3)
    assert len(r.orbits()) == 2

    passed, detail = q.verify_example()
    assert passed, detail

    print(json.dumps({"module": q.__name__, "status": "ok"}))


if __name__ == "__main__":
    main()
