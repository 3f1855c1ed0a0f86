"""The incomplete Toronto function at half-integer order.

Compares the finite closed form with quadrature, then shows the half-integer
neighbours of an integer order.  They bracket it at small r, but the
ordering reverses once r is large.
"""

from ricebounds import toronto_closed, toronto_quad


def closed_vs_quad(m, n):
    print(f"m={m} n={n}")
    for r in (0.25, 1.0, 4.0):
        for B in (0.5, 2.0):
            closed = toronto_closed(m, n, r, B)
            exact = toronto_quad(m, n, r, B).value
            print(f"  r={r:<5} B={B:<4} closed={closed.value:.16e} "
                  f"rel diff={abs(closed.value - exact) / exact:.1e} est_error={closed.est_error:.1e}")


def neighbours(m, n, B):
    print(f"\nm={m}, B={B}: T at orders n-1/2, n, n+1/2")
    for r in (0.25, 0.5, 1.0, 2.0, 4.0):
        up = toronto_closed(m, n - 0.5, r, B).value
        mid = toronto_quad(m, n, r, B).value
        lo = toronto_closed(m, n + 0.5, r, B).value
        verdict = "bracketed" if lo < mid < up else "reversed"
        print(f"  r={r:<5} {up:.6e} {mid:.6e} {lo:.6e}  {verdict}")


if __name__ == "__main__":
    closed_vs_quad(1, 0.5)
    closed_vs_quad(3, 2.5)
    neighbours(3, 2, 1.0)
