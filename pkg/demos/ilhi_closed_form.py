"""Incomplete Lipschitz-Hankel integrals of I_n at half-integer order.

The closed form is a short sum of incomplete gamma functions.  At integer n
the neighbouring half-integer orders give a lower and upper bound.
"""

from ricebounds import ilhi_closed, ilhi_lower, ilhi_quad, ilhi_upper

if __name__ == "__main__":
    print("closed form against quadrature, m=2 n=1.5")
    for a in (0.5, 2.0, 5.0):
        for z in (0.5, 2.0, 10.0):
            closed = ilhi_closed(2, 1.5, a, z).value
            exact = ilhi_quad(2, 1.5, a, z).value
            print(f"  a={a:<4} z={z:<5} {closed:.16e}  rel diff={abs(closed - exact) / exact:.1e}")

    print("\nbounds at m=2 n=1, a=2")
    for z in (0.5, 1.0, 2.0, 5.0, 10.0):
        lo, exact, up = ilhi_lower(2, 1, 2.0, z).value, ilhi_quad(2, 1, 2.0, z).value, ilhi_upper(2, 1, 2.0, z).value
        print(f"  z={z:<5} {lo:.6e} < {exact:.6e} < {up:.6e}")
