"""Configurable-precision reference values, independent of the asymptotic path.

* ``oracle_j``: the ascending power series, with working precision raised to
  absorb the ``~e**|z|`` cancellation of the alternating sum.
* ``oracle_y``: the connection formula ``(J_nu cos(nu pi) - J_-nu) / sin(nu pi)``;
  at (near-)integer orders the average of ``nu +- delta`` is used.
* ``oracle_k0``: ``K_0(x) = int_0^inf exp(-x cosh u) du`` by tanh-sinh.
* ``nicholson_modulus_sq``: ``J^2 + Y^2 = 8/pi^2 int_0^inf K_0(2 z sinh t) cosh(2 nu t) dt``.

Each call builds its own mpmath context; nothing touches ``mpmath.mp``.  Results
are numbers of that private context and convert cleanly with ``float`` /
``complex``.
"""

from __future__ import annotations

import math
import warnings
from typing import Any

from mpmath import MPContext

from ._quad import tanh_sinh
from .errors import ConvergenceError, DomainError, IntegerOrderWarning, PrecisionExhaustedError
from .series import is_mp, normalize_scalar

__all__ = [
    "DEFAULT_PRECISION",
    "MAX_WORKING_PRECISION",
    "nicholson_modulus_sq",
    "oracle_j",
    "oracle_k0",
    "oracle_y",
]

DEFAULT_PRECISION = 256
MIN_PRECISION = 64
# |z| = 1e4 needs ~2e4 bits; the cap only guards against runaway requests
MAX_WORKING_PRECISION = 1 << 16
_LOG2E = 1 / math.log(2)


def _context(prec: int) -> MPContext:
    ctx = MPContext()
    ctx.prec = int(prec)
    return ctx


def _convert(ctx: MPContext, x: Any) -> Any:
    if isinstance(x, str):
        return ctx.mpmathify(x.replace("i", "j"))
    if not is_mp(x):
        x = normalize_scalar(x)
        if isinstance(x, complex):
            return ctx.mpc(x.real, x.imag)
    return ctx.convert(x)


def _check_precision(p: int) -> int:
    if p < MIN_PRECISION:
        raise ValueError(f"precision must be at least {MIN_PRECISION} bits")
    return int(p)


def _series_bits(z: complex) -> int:
    return math.ceil(1.4 * abs(z) * _LOG2E)


def _validated(compute, wp: int, rtol: float, max_prec: int, what: str):
    """Run ``compute(wp)`` and ``compute(wp + 64)`` until they agree to ``rtol``."""
    while True:
        if wp + 64 > max_prec:
            raise PrecisionExhaustedError(f"{what} needs more than {max_prec} bits of working precision")
        lo = compute(wp)
        hi = compute(wp + 64)
        scale = abs(hi)
        if abs(hi - lo) <= rtol * scale or (scale == 0 and lo == 0):
            return hi
        wp *= 2


def _j_series(ctx: MPContext, nu: Any, z: Any, tol: Any, prefactor_prec: int) -> Any:
    half = z / 2
    # (z/2)**nu / Gamma(nu+1) only scales the sum, so it needs relative
    # accuracy, not the cancellation headroom of the series itself
    with ctx.workprec(prefactor_prec):
        scale = ctx.power(half, nu) * ctx.rgamma(nu + 1)
    term = ctx.one
    w = -(half * half)
    total = term
    # past the peak of |term| and past any small denominators nu + n
    n_min = int(max(abs(half), abs(ctx.re(nu)))) + 2
    for n in range(1, n_min + 1):
        term = term * w / (n * (nu + n))
        total += term
    # mag() is a cheap upper bound on log2|x|; avoids a square root per term
    log_tol = int(ctx.floor(ctx.log(tol, 2)))
    n, small = n_min, 0
    while small < 3:
        n += 1
        term = term * w / (n * (nu + n))
        total += term
        if ctx.mag(term) <= ctx.mag(total) + log_tol:
            small += 1
        else:
            small = 0
    return scale * total


def oracle_j(
    nu: Any,
    z: Any,
    rtol: float = 1e-20,
    precision: int = DEFAULT_PRECISION,
    max_precision: int = MAX_WORKING_PRECISION,
) -> Any:
    """``J_nu(z)`` from the power series, validated by a rerun 64 bits higher."""
    p = _check_precision(precision)
    nu_c, z_c = complex(normalize_scalar(_float_probe(nu))), complex(normalize_scalar(_float_probe(z)))
    if nu_c.imag == 0 and nu_c.real < 0 and nu_c.real == round(nu_c.real):
        raise DomainError("oracle_j: negative integer order is not supported")

    def compute(wp: int) -> Any:
        ctx = _context(wp)
        return _j_series(ctx, _convert(ctx, nu), _convert(ctx, z), ctx.ldexp(rtol, -24), wp - sbits + 32)

    sbits = _series_bits(z_c)
    wp = p + sbits + 32
    return _validated(compute, wp, rtol, max_precision, "oracle_j")


def _float_probe(x: Any) -> Any:
    # a cheap double view of x, used only for planning precision
    if isinstance(x, str):
        return complex(x.replace("i", "j"))
    if is_mp(x):
        return complex(x)
    return x


def _int_distance(nu: complex) -> float:
    return abs(nu - round(nu.real))


def _y_direct(ctx: MPContext, nu: Any, z: Any, tol: Any, prefactor_prec: int) -> Any:
    jp = _j_series(ctx, nu, z, tol, prefactor_prec)
    jm = _j_series(ctx, -nu, z, tol, prefactor_prec)
    return (jp * ctx.cospi(nu) - jm) / ctx.sinpi(nu)


def oracle_y(
    nu: Any,
    z: Any,
    rtol: float = 1e-20,
    precision: int = DEFAULT_PRECISION,
    delta: float = 1e-8,
    max_precision: int = MAX_WORKING_PRECISION,
) -> Any:
    """``Y_nu(z)`` from the connection formula.

    Orders within ``delta`` of an integer are evaluated at ``nu +- 2**(-p/4)``
    and averaged (error ``O(2**(-p/2))``); an ``IntegerOrderWarning`` is issued.
    """
    p = _check_precision(precision)
    nu_c = complex(normalize_scalar(_float_probe(nu)))
    z_c = complex(normalize_scalar(_float_probe(z)))
    near_integer = _int_distance(nu_c) < delta
    if near_integer:
        warnings.warn(
            f"Y at near-integer order {nu_c} obtained by symmetric extrapolation",
            IntegerOrderWarning,
            stacklevel=2,
        )

    def compute(wp: int) -> Any:
        # the base precision grows with wp so the offset shrinks on every rerun
        base = wp - extra
        ctx = _context(wp)
        nu_x, z_x = _convert(ctx, nu), _convert(ctx, z)
        tol = ctx.ldexp(rtol, -24)
        # the connection formula cancels too, so only the series headroom is dropped
        pp = wp - sbits + 32
        if not near_integer:
            return _y_direct(ctx, nu_x, z_x, tol, pp)
        off = ctx.ldexp(1, -(base // 4))
        return (_y_direct(ctx, nu_x + off, z_x, tol, pp) + _y_direct(ctx, nu_x - off, z_x, tol, pp)) / 2

    dist = 2.0 ** (-p / 4) if near_integer else _int_distance(nu_c)
    sbits = _series_bits(z_c)
    extra = (
        sbits
        + math.ceil(-math.log2(dist)) + 16
        + math.ceil(math.pi * abs(nu_c.imag) * _LOG2E)
        + 32
    )
    return _validated(compute, p + extra, rtol, max_precision, "oracle_y")


def oracle_k0(x: Any, rtol: float = 1e-20, precision: int = DEFAULT_PRECISION) -> Any:
    """``K_0(x)`` for ``x > 0`` as ``exp(-x) int_0^umax exp(-2x sinh(u/2)**2) du``."""
    p = _check_precision(precision)
    ctx = _context(p)
    x = _convert(ctx, x)
    if not (ctx.im(x) == 0 and x > 0):
        raise DomainError("oracle_k0 needs real x > 0")
    return _k0(ctx, x, rtol)


def _k0(ctx: MPContext, x: Any, rtol: float) -> Any:
    p = ctx.prec
    umax = ctx.acosh(1 + (p * ctx.ln2 + 10) / x) + 1

    def g(u: Any) -> Any:
        s = ctx.sinh(u / 2)
        return ctx.exp(-2 * x * s * s)

    if x < 0.5:
        # integrand is ~1 up to cosh(u) ~ 1/x, then falls off; split at the knee
        knee = ctx.acosh(1 / x)
        body = tanh_sinh(ctx, g, 0, knee, rtol) + tanh_sinh(ctx, g, knee, umax, rtol)
    else:
        body = tanh_sinh(ctx, g, 0, umax, rtol)
    return ctx.exp(-x) * body


def _nicholson_tmax(nu: float, z: float, p: int) -> float:
    target = p * math.log(2) + math.log(max(z, 1.0)) + 10
    lo, hi = 0.0, 1.0
    while 2 * z * math.sinh(hi) - 2 * nu * hi < target:
        hi *= 2
    for _ in range(60):
        mid = (lo + hi) / 2
        if 2 * z * math.sinh(mid) - 2 * nu * mid < target:
            lo = mid
        else:
            hi = mid
    return hi


def nicholson_modulus_sq(nu: Any, z: Any, rtol: float = 1e-13, precision: int = DEFAULT_PRECISION) -> Any:
    """``J_nu(z)**2 + Y_nu(z)**2`` by Nicholson's integral, real ``z > |nu|``."""
    p = _check_precision(precision)
    ctx = _context(p)
    nu_x, z_x = _convert(ctx, nu), _convert(ctx, z)
    if ctx.im(nu_x) != 0 or ctx.im(z_x) != 0:
        raise DomainError("nicholson_modulus_sq is implemented for real nu and z only")
    nu_x = abs(nu_x)
    if not z_x > nu_x:
        raise ConvergenceError("Nicholson quadrature needs z > |nu|")
    tmax = _nicholson_tmax(float(nu_x), float(z_x), p)
    inner = rtol / 100

    def f(t: Any) -> Any:
        return _k0(ctx, 2 * z_x * ctx.sinh(t), inner) * ctx.cosh(2 * nu_x * t)

    return 8 / ctx.pi**2 * tanh_sinh(ctx, f, 0, tmax, rtol)
