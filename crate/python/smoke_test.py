"""Smoke test for the covertime_py extension.

Build and install with

    pip install --no-build-isolation ./crates/python

then run `python python/smoke_test.py`.
"""

import math

import covertime_py as ct


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(1.0, abs(b))


def main():
    c8 = ct.Graph.cycle(8)
    assert c8.vertex_count == 8 and c8.edge_count == 8

    s = ct.cover_time(c8, trials=20000, seed=1, start=0)
    assert abs(s["mean"] - 28.0) < 3 * s["std_err"], s
    edge = ct.cover_time(c8, trials=2000, seed=1, start=0, mode="edge")
    assert edge["mean"] > s["mean"]

    assert close(ct.effective_resistance(c8, 0, 4), 2.0)
    assert close(ct.commute_time(c8, 0, 4), 32.0)

    phi, cut = ct.conductance(ct.Graph.cycle(4))
    assert close(phi, 0.5) and len(cut) == 2

    gap, lam2, _ = ct.spectral_gap(c8)
    assert close(lam2, math.cos(2 * math.pi / 8)) and close(gap, 1 - lam2)
    assert ct.mixing_time(c8, lazy=False) is None  # bipartite
    assert ct.mixing_time(c8, lazy=True) > 0

    bound, _ = ct.matthews_bound(ct.Graph.complete(5))
    assert 0 < bound <= 4 * (1 + 1 / 2 + 1 / 3 + 1 / 4)

    law = ct.star_exit_law([1, 2, 3])
    assert all(close(a, b) for a, b in zip(law, [6 / 11, 3 / 11, 2 / 11]))

    p = ct.predict_cover_time(1000, 0, 3)
    assert p["regime"] == "A" and close(p["value"], 4 / 3 * 1000 * math.log(1000))
    assert ct.predict_cover_time(1000, 10**5, 3)["regime"] == "C"
    assert close(ct.phi(0.5, 3), 1.0)
    giant, core = ct.predict_gnp(2.0, 1e5)
    assert giant > core > 0

    seq = ct.DegreeSequence.regular(3, 20, nu2=30)
    assert seq.kernel_edges == 30 and seq.nu2 == 30 and close(seq.xi, 0.5)
    g = seq.sample(seed=7)
    assert g.vertex_count == 50 and sorted(set(g.degrees())) == [2, 3]
    assert repr(ct.DegreeSequence.regular(3, 20, nu2=30).sample(seed=7).render()) == repr(g.render())

    sg = ct.surrogate_graph(g, 2)
    assert sg.vertex_count >= 20

    u = ct.unvisit_probability(ct.Graph.petersen(), 0, [5, 10, 20], trials=5000, seed=3)
    assert u[0] >= u[1] >= u[2]

    for bad in (lambda: ct.Graph(2, [(0, 5)]), lambda: ct.DegreeSequence([3, 3, 3])):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")
    try:
        ct.conductance(ct.Graph.cycle(30))
    except OverflowError:
        pass
    else:
        raise AssertionError("expected size-limit error")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
