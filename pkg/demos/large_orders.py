"""Where double precision runs out at very large orders.

Run:  python demos/large_orders.py

The coefficients are never formed; only ratios t_n / z**(2n) are, so the
series are fine even at nu = 1e18.  What limits accuracy is the size of the
phase: the correction beyond z - nu*pi/2 - pi/4 is about nu**2 / (2z) radians,
and a double carries it with an absolute error of eps times that.  The
reference here is the same expansion run with 256-bit arithmetic.
"""
import math

from besselphase import TruncationPolicy, eval_jy, estimate_error

reference = TruncationPolicy.auto(2.0**-128, 2000)

for nu in (1e6, 1e9, 1e12):
    for ratio in (1.1, 2.0, 10.0, 10 * math.pi):
        z = ratio * nu
        r = eval_jy(nu, z)
        ref = eval_jy(nu, z, reference, precision=256)
        err = abs(r.j_value - float(ref.j_value)) / abs(float(ref.j_value))
        flags = ",".join(sorted(w.value for w in r.warnings)) or "-"
        print(f"nu={nu:7.0e} z/nu={ratio:6.3f}  err J {err:8.1e}  estimate {estimate_error(r):8.1e}  {flags}")
