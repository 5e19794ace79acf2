"""Smoke test of the Python bindings."""

import json

import pyminorbit


def main():
    assert "sl2R" in pyminorbit.catalog_ids()
    assert "su21" in pyminorbit.model_ids()

    inv = pyminorbit.invariants("sl2R")
    assert (inv["d"], inv["dim_Z"], inv["dim_X"], inv["omin_split"]) == (1, 2, 0, True)

    table = json.loads(pyminorbit.run("table"))
    assert [row["dim_X"] for row in table["data"]] == [4, 14, 20, 32, 56]

    report = json.loads(pyminorbit.run("verify", form="sl2R", checks=["beta"], samples=100, seed=42))
    assert report["pass"], report
    assert report["checks"][0]["max_abs_deviation"] <= 1e-10

    again = pyminorbit.run("verify", form="sl2R", checks=["beta"], samples=100, seed=42)
    assert json.loads(again) == report

    try:
        pyminorbit.invariants("nosuch")
    except ValueError as e:
        assert "nosuch" in str(e)
    else:
        raise AssertionError("unknown form accepted")

    print("pyminorbit", pyminorbit.__version__, "smoke ok")


if __name__ == "__main__":
    main()
