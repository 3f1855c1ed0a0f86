"""How tight are the elementary bounds on the Rice Ie-function?

Prints the exact value next to the erf-based upper bound and the Marcum-based
lower bound, first along x at k = 0.5 and then along k at x = 80.
"""

from ricebounds import rice_ie_lower, rice_ie_quad, rice_ie_upper


def gap_table(points):
    print(f"{'k':>5} {'x':>6} {'Ie':>22} {'upper rel gap':>14} {'lower rel gap':>14}")
    for k, x in points:
        exact = rice_ie_quad(k, x).value
        up = (rice_ie_upper(k, x).value - exact) / exact
        lo = (exact - rice_ie_lower(k, x).value) / exact
        print(f"{k:5.2f} {x:6.1f} {exact:22.16e} {up:14.3e} {lo:14.3e}")


if __name__ == "__main__":
    print("The upper bound wins at small x, the lower bound at large x:\n")
    gap_table([(0.5, x) for x in (0.5, 1, 2, 5, 10, 20, 40)])
    print("\nAt x = 80 the lower bound is within 1e-6 except as k approaches 1:\n")
    gap_table([(k, 80) for k in (0.1, 0.3, 0.5, 0.7, 0.8, 0.85, 0.9)])
