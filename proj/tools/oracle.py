#!/usr/bin/env python3
"""Independent recomputation of the numeric constants frozen in the tests.

Run from anywhere; prints name = value pairs with 17 significant digits.
Formulas are implemented directly from their closed forms, not via the C++
library, so the two sides cross-check each other.
"""
import math


def eps_of_tau(tau: float, gamma: float) -> float:
    return tau * tau * (math.sqrt(gamma * gamma + tau * tau) - gamma) / (
        8.0 * (4.0 * gamma * gamma + tau * tau))


def hoeffding_horizon(eps: float, gamma: float, d: int) -> int:
    rate = eps * eps / (2.0 * gamma * gamma)
    bound = (gamma * gamma / (2.0 * eps * eps)) * math.log(
        2.0 * d / (eps * (1.0 - math.exp(-rate))))
    return max(1, math.ceil(bound))


def matrix_game_2x2(a, b, c, d):
    """Value of [[a,b],[c,d]] with the row player minimizing; saddle or mixed."""
    minmax = min(max(a, b), max(c, d))
    maxmin = max(min(a, c), min(b, d))
    if minmax == maxmin:
        return minmax
    return (a * d - b * c) / (a + d - b - c)


def seg_project(p, a, b):
    ab = [b[i] - a[i] for i in range(len(a))]
    ap = [p[i] - a[i] for i in range(len(a))]
    denom = sum(x * x for x in ab)
    t = 0.0 if denom == 0 else max(0.0, min(1.0, sum(x * y for x, y in zip(ab, ap)) / denom))
    q = [a[i] + t * ab[i] for i in range(len(a))]
    return q, math.dist(p, q)


def fibonacci_sphere(count):
    golden = math.pi * (3.0 - math.sqrt(5.0))
    pts = []
    for i in range(count):
        z = 1.0 - (2.0 * i + 1.0) / count
        r = math.sqrt(max(0.0, 1.0 - z * z))
        th = golden * i
        pts.append((r * math.cos(th), r * math.sin(th), z))
    return pts


def grid_cover_gap(pts, samples=4000):
    """Max over sampled unit directions of the min chord distance to the grid."""
    worst = 0.0
    state = 0x9E3779B97F4A7C15
    for _ in range(samples):
        v = []
        for _ in range(3):
            state = (state * 6364136223846793005 + 1442695040888963407) % (1 << 64)
            v.append((state >> 11) / float(1 << 53) * 2.0 - 1.0)
        n = math.sqrt(sum(x * x for x in v))
        if n < 1e-6:
            continue
        v = [x / n for x in v]
        best = min(math.dist(v, p) for p in pts)
        worst = max(worst, best)
    return worst


def main():
    gamma_a = 1.0 + 1e-6  # default payoff bound of the bilinear simplex game
    rows = [
        ("eps(1,1)", eps_of_tau(1.0, 1.0)),
        ("eps(2,1)", eps_of_tau(2.0, 1.0)),
        ("eps(0.5,1)", eps_of_tau(0.5, 1.0)),
        ("eps(1/3,1)", eps_of_tau(1.0 / 3.0, 1.0)),
        ("eps(1/5,1)", eps_of_tau(0.2, 1.0)),
        ("eps(1/6,1)", eps_of_tau(1.0 / 6.0, 1.0)),
        ("eps(1/15,1)", eps_of_tau(1.0 / 15.0, 1.0)),
        ("eps(1/16,1)", eps_of_tau(1.0 / 16.0, 1.0)),
        ("eps(1,10)", eps_of_tau(1.0, 10.0)),
        ("eps(5,10)", eps_of_tau(5.0, 10.0)),
        ("eps(10,10)", eps_of_tau(10.0, 10.0)),
        ("eps(1/5,gamma_a)", eps_of_tau(0.2, gamma_a)),
        ("delta(S1) = eps(1/5,gamma_a)", eps_of_tau(0.2, gamma_a)),
        ("T(S1) = ceil(8/delta)", math.ceil(8.0 / eps_of_tau(0.2, gamma_a))),
        ("hoeffding(0.1,1,2)", hoeffding_horizon(0.1, 1.0, 2)),
        ("hoeffding(0.1,1,4)", hoeffding_horizon(0.1, 1.0, 4)),
        ("hoeffding(0.1,2,2)", hoeffding_horizon(0.1, 2.0, 2)),
        ("value[[0,2],[3,1]]", matrix_game_2x2(0.0, 2.0, 3.0, 1.0)),
        ("value[[1,3],[2,4]]", matrix_game_2x2(1.0, 3.0, 2.0, 4.0)),
        ("pennies value", matrix_game_2x2(1.0, -1.0, -1.0, 1.0)),
        ("v((1,1)/sqrt2) simplex", matrix_game_2x2(1.0 / math.sqrt(2.0), 0.0, 0.0,
                                                   1.0 / math.sqrt(2.0))),
        ("antiforce pennies10 eps", eps_of_tau(5.0, 10.0)),
        ("antiforce pennies10 T", math.ceil(8.0 / eps_of_tau(5.0, 10.0))),
        ("antiforce pennies10 cap",
         math.ceil(math.ceil(8.0 / eps_of_tau(5.0, 10.0)) * 10.0 * eps_of_tau(5.0, 10.0) / 8.0)),
    ]
    q, dd = seg_project([1.0, 1.0], [0.0, 0.0], [0.5, 0.5])
    rows.append(("proj((1,1)->S0).psi", tuple(q)))
    rows.append(("proj((1,1)->S0).dist", dd))
    pts = fibonacci_sphere(2000)
    rows.append(("fib2000 cover gap (sampled)", grid_cover_gap(pts)))
    for name, value in rows:
        if isinstance(value, float):
            print(f"{name} = {value:.17g}")
        else:
            print(f"{name} = {value}")


if __name__ == "__main__":
    main()
