"""The table1 grid in miniature: the expansion against the power-series oracle.

Run:  python demos/table_one.py

For each order the argument sweeps from just past the turning point out to
100|nu|.  Near the turning point the series need many terms (the modulus and
phase counts differ, and neither is small); far out a handful suffice.  The
errors stay at the 1e-15..1e-14 level throughout because the phase is reduced
modulo 2*pi exactly before the cosine and sine are taken.
"""
import warnings

from besselphase import IntegerOrderWarning, eval_jy, oracle_j, oracle_y

warnings.simplefilter("ignore", IntegerOrderWarning)  # Y at integer order uses nu +- delta


def rel(a, b):
    b = complex(b)
    return abs(complex(a) - b) / abs(b)


print(f"{'nu':>10} {'z/|nu|':>7} {'terms':>9} {'err J':>9} {'err Y':>9}")
for nu in (50, 50 - 10j, 100 + 20j):
    for ratio in (1.1, 2, 10, 100):
        z = ratio * abs(nu)
        r = eval_jy(nu, z)
        ej = rel(r.j_value, oracle_j(nu, z))
        ey = rel(r.y_value, oracle_y(nu, z))
        terms = f"{r.modulus_terms_used}/{r.phase_terms_used}"
        print(f"{str(nu):>10} {ratio:>7} {terms:>9} {ej:9.1e} {ey:9.1e}")
