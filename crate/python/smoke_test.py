"""Smoke test for the Python bindings.

Build the module first, either with `maturin develop -m crates/py/Cargo.toml`
or with `cargo build --release -p teich-coords-py --features extension-module`
and then point TEICH_COORDS_LIB at the directory holding `teich_coords.so`.
"""

import json
import math
import os
import random
import sys

if os.environ.get("TEICH_COORDS_LIB"):
    sys.path.insert(0, os.environ["TEICH_COORDS_LIB"])

import teich_coords as tc


def close(a, b, tol):
    return all(abs(x - y) <= tol for x, y in zip(a, b))


def main():
    assert close(tc.sphere_shears(0.75, 0.4, 0.15), (0.5, 0.25, -0.1), 1e-15)

    s = tc.Surface.bundled("three-punctured-sphere")
    assert s.validate() == []
    c = tc.Coordinates(s)
    shear, deco = [0.3, -0.2, 0.1], [0.5, 0.0, -1.0]
    lam, l = c.psi_forward(shear, deco)
    back_x, back_d = tc.closed_form_inverse("three-punctured-sphere", lam, l)
    assert close(back_x, shear, 1e-12) and close(back_d, deco, 1e-10)

    special = tc.Surface.special(1, 1, [1])
    cs = tc.Coordinates(special)
    rng = random.Random(3)
    for _ in range(20):
        x = [rng.uniform(-2, 2) if e in special.interior_edge_ids else 0.0 for e in special.edge_ids]
        d = [rng.uniform(-2, 2) for _ in special.vertex_ids]
        x2, d2 = cs.psi_inverse(*cs.psi_forward(x, d))
        assert close(x2, x, 1e-9) and close(d2, d, 1e-9)

    again = tc.Surface.from_json(special.to_json())
    assert again.edge_ids == special.edge_ids

    try:
        c.psi_inverse(lam, l)
    except tc.TeichError as e:
        assert "valence" in str(e)
    else:
        raise AssertionError("inverse on a non-special triangulation should fail")

    a = tc.Lamination.around_vertices(s, [0.7, -0.3, 1.5])
    assert a.flavor == "A" and [k for k, _ in a.curves()] == ["a"] * 3
    err, length = a.compatibility(c)
    assert err <= 1e-9 and length <= 1e-12
    parsed = tc.Lamination.from_json(s, a.to_json())
    assert close(parsed.edge_weights_a(), a.edge_weights_a(), 0.0)

    passed, report = tc.run_verify(["closed-forms", "limit"], samples=10)
    report = json.loads(report)
    assert passed and report["schema"].startswith("teich-coords/verify-report/")
    assert not math.isnan(report["suites"][0]["checks"][0]["max_error"])
    print("python smoke test passed")


if __name__ == "__main__":
    main()
