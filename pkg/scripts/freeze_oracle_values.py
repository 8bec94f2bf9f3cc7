"""Print oracle values that get frozen as expected constants in the tests.

Run from the repo root:  python3 scripts/freeze_oracle_values.py
"""

import math
import sys

sys.path.insert(0, "tests")

from oracles import (  # noqa: E402
    brute_bound,
    brute_curve,
    brute_entropy,
    brute_events,
    brute_graph_entropy,
    brute_paired_t,
    t_cdf_quad,
)


def main():
    n = 64
    double = [0] * n
    for s in (0, 1, 2, 3, 40, 41, 42, 43):
        double[s] = 1
    curve = brute_curve(double)
    theta = brute_entropy(double, 1) / n
    print("double-island:")
    print("  H(1) =", brute_entropy(double, 1))
    print("  theta =", theta)
    for dt in (4, 5, 6, 43, 44):
        print(f"  H({dt}) =", brute_entropy(double, dt))
    print("  increase 5->6 exists:", curve[5] > curve[4])
    for mode in ("drop", "increase", "plateau"):
        ev = brute_events(curve, theta, mode)
        print(f"  {mode}: bound =", brute_bound(curve, theta, mode),
              " n_events =", len(ev), " first =", ev[0] if ev else None)

    uniform = [1] * n
    ucurve = brute_curve(uniform)
    utheta = brute_entropy(uniform, 1) / n
    print("uniform:")
    print("  H(1) =", brute_entropy(uniform, 1), " theta =", utheta)
    nonincreasing = all(ucurve[i + 1] <= ucurve[i] + 1e-12
                        for i in range(len(ucurve) - 1))
    print("  strictly non-increasing:", nonincreasing)
    for mode in ("drop", "increase", "plateau"):
        print(f"  {mode}: bound =", brute_bound(ucurve, utheta, mode))

    single = [0] * n
    for s in range(20, 28):
        single[s] = 1
    scurve = brute_curve(single)
    stheta = brute_entropy(single, 1) / n
    print("single-island [20,27]:")
    print("  theta =", stheta)
    for mode in ("drop", "increase", "plateau"):
        print(f"  {mode}: bound =", brute_bound(scurve, stheta, mode))

    once = [0] * n
    once[10] = 1
    ocurve = brute_curve(once)
    print("single-occurrence: curve all zero:", all(v == 0 for v in ocurve),
          " theta =", brute_entropy(once, 1) / n)

    print("entropy (0.5,0.25,0.25):", brute_entropy([2, 1, 0, 0, 0, 1, 0, 0], 1))

    counts = [3, 1]
    tot = sum(counts)
    h = -sum(c / tot * math.log2(c / tot) for c in counts)
    print("entropy_b counts (3,1):", h)
    print("cos 2/sqrt(6):", 2 / math.sqrt(6))

    t, df = brute_paired_t([0, 0, 1, 0, 0], [1, 2, 2, 3, 2])
    print("t-test d=(-1,-2,-1,-3,-2): t =", t, " df =", df,
          " p =", t_cdf_quad(t, df))

    print("tfidf N=4 df=1 tf=3:", 3 * math.log2(4))

    hub = 0.66 / 0.2775
    print("textrank star: hub =", hub, " leaf =", 0.15 + 0.2125 * hub)

    sentences = [["a", "b", "x"], ["a", "b"], ["c", "d"], ["c", "d", "a"],
                 ["e", "f"], ["e"], ["g"], ["b", "c"]]
    kws = ["a", "b", "c", "d", "e", "f", "g"]
    clusters, assign, hb = brute_graph_entropy(sentences, kws, 0.2)
    print("toy graph pipeline: clusters =", clusters)
    print("  assignment =", assign, " h_b =", hb)


if __name__ == "__main__":
    main()
