"""Exact reduction of double-precision angles modulo 2*pi.

Angles are accumulated in *turns* (units of 2*pi) as integers scaled by
``2**FRACTION_BITS``.  A double ``x`` is converted to turns with a 1280-bit
integer approximation of ``1/(2*pi)``, which is exact to far below one ulp of
the reduced result for every finite double (Payne-Hanek, done with Python
integers).  The phase constant ``-nu*pi/2 - pi/4`` is ``-(nu/4 + 1/8)`` turns,
an exact rational for double ``nu``, so it never touches pi at all.
"""

from __future__ import annotations

import math
from fractions import Fraction

from mpmath import MPContext

FRACTION_BITS = 200
_INV_BITS = 1280
_TWO_PI_BITS = 160


def _constants() -> tuple[int, int]:
    ctx = MPContext()
    ctx.prec = _INV_BITS + 64
    inv = int(ctx.floor(ctx.ldexp(1 / (2 * ctx.pi), _INV_BITS)))
    two_pi = int(ctx.nint(ctx.ldexp(2 * ctx.pi, _TWO_PI_BITS)))
    return inv, two_pi


_INV_TWO_PI, _TWO_PI = _constants()
_ONE_TURN = 1 << FRACTION_BITS


def turns(x: float) -> int:
    """``x / (2*pi)`` as an integer scaled by ``2**FRACTION_BITS`` (not reduced)."""
    if not math.isfinite(x):
        raise ValueError("cannot reduce a non-finite angle")
    num, den = float(x).as_integer_ratio()
    shift = _INV_BITS - FRACTION_BITS + den.bit_length() - 1
    prod = num * _INV_TWO_PI
    # floor toward -inf keeps the error one-sided and below 2**-FRACTION_BITS
    return prod >> shift if shift >= 0 else prod << -shift


def exact_turns(value: Fraction) -> int:
    """An exact rational number of turns, scaled by ``2**FRACTION_BITS``."""
    return math.floor(value * _ONE_TURN)


def order_constant_turns(nu_real: float) -> int:
    """Turns of ``-nu*pi/2 - pi/4`` for real ``nu``; exact up to the final floor."""
    return exact_turns(-(Fraction(nu_real) / 4 + Fraction(1, 8)))


def _split(num: int, shift: int) -> tuple[float, float]:
    hi = num / (1 << shift)
    n, d = hi.as_integer_ratio()
    rem = num * d - (n << shift)
    return hi, rem / (d << shift)


def angle_from_turns(t: int) -> tuple[float, float]:
    """Reduce ``t`` turns into ``[-pi, pi)`` and return it as a double-double."""
    t %= _ONE_TURN
    if t >= _ONE_TURN // 2:
        t -= _ONE_TURN
    return _split(t * _TWO_PI, FRACTION_BITS + _TWO_PI_BITS)


def reduce_angle(x: float) -> tuple[float, float]:
    """``x mod 2*pi`` in ``[-pi, pi)`` as ``(hi, lo)`` with ``|lo| <= ulp(hi)/2``."""
    return angle_from_turns(turns(x))


def cos_sin(hi: float, lo: float) -> tuple[float, float]:
    """cos and sin of the double-double angle ``hi + lo``."""
    c, s = math.cos(hi), math.sin(hi)
    return c - s * lo, s + c * lo
