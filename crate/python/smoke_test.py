"""Smoke test for the geopursuit Python extension.

Build and install first:  pip install ./crates/py   (or: maturin develop -m crates/py/Cargo.toml)
"""

import math

import geopursuit as gp


def main():
    plane = gp.Space("euclidean")
    assert abs(plane.distance((0, 0), (3, 4)) - 5.0) < 1e-12
    assert plane.geodesic_point((0, 0), (2, 0), 0.5) == (1.0, 0.0)
    assert plane.is_between((0, 0), (1, 0), (2, 0))

    disk = gp.Space("poincare")
    assert abs(disk.distance((0, 0), (0.5, 0)) - math.log(3.0)) < 1e-12

    river = gp.Space("river")
    assert abs(river.distance((0, 1), (2, 0)) - 3.0) < 1e-12

    assert abs(gp.comparison_point_distance(3, 4, 5, 3, 0) - 3.0) < 1e-12

    t = gp.play(plane, 1.0, (0, 0), (1.5, 0), strategy="spiral", horizon=100)
    assert len(t) == 100 and len(t.gaps) == 101
    assert t.outcome()["variant"] == "LionLimit"
    assert t.invariant_violations() == []
    report = t.spiral_report()
    assert max(report["recurrence_residuals"]) < 1e-9
    assert t.to_csv().startswith("i,Lc1,Lc2,Mc1,Mc2,D_i,post_gap\n")

    t = gp.play(gp.Space("star:3"), 1.0, (0, 0), (1, 2), strategy="ray:1", horizon=50)
    assert t.outcome()["variant"] == "ManEscapeCertified"

    suite = gp.verify(plane, "ball c=0,0 r=3", seed=1, samples=200)
    assert all(c["passed"] for c in suite["checks"])

    try:
        gp.play(plane, -1.0, (0, 0), (1, 0))
    except ValueError:
        pass
    else:
        raise AssertionError("negative jump accepted")

    print("geopursuit python smoke test: ok")


if __name__ == "__main__":
    main()
