"""J_nu(z) and Y_nu(z) assembled from the modulus/phase pair."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Any

from mpmath import MPContext

from . import _reduce
from .errors import BesselOverflowError
from .phase import (
    EPS,
    TruncationPolicy,
    _constant,
    _Expansion,
    _pi_for,
    _principal_sqrt,
)
from .series import Order, as_order, is_mp, normalize_scalar

__all__ = ["EvalResult", "EvalWarning", "besselj", "bessely", "estimate_error", "eval_jy"]

TURNING_POINT_RATIO = 1.05
# for nu=10, |z|=100 the error is ~1e-15 up to 0.94 pi, 6e-14 at 0.95 pi and
# 3e-11 at 0.96 pi, then loses about three digits per further 0.01 pi
BRANCH_CUT_ANGLE = 0.95 * math.pi
ROUNDOFF_WARN = 1e-12


class EvalWarning(str, enum.Enum):
    NEAR_TURNING_POINT = "near_turning_point"
    NEAR_BRANCH_CUT = "near_branch_cut"
    LARGE_ARGUMENT_ROUNDOFF = "large_argument_roundoff"


@dataclass(frozen=True)
class EvalResult:
    j_value: Any
    y_value: Any
    err_estimate: float
    modulus_terms_used: int
    phase_terms_used: int
    warnings: frozenset[EvalWarning]
    alpha: Any
    modulus_sq: Any


def _arg(z: Any) -> float:
    return float(abs(cmath.phase(complex(z))))


def _cos_sin_double(order: Order, z: Any, corr: Any) -> tuple[Any, Any]:
    """cos and sin of ``C + z + corr`` with the real part reduced exactly."""
    nu = order.nu
    t = (
        _reduce.order_constant_turns(nu.real)
        + _reduce.turns(z.real)
        + _reduce.turns(corr.real)
    )
    hi, lo = _reduce.angle_from_turns(t)
    c, s = _reduce.cos_sin(hi, lo)
    if isinstance(nu, float) and isinstance(z, float):
        return c, s
    im = -nu.imag * math.pi / 2 + z.imag + corr.imag
    try:
        ch, sh = math.cosh(im), math.sinh(im)
    except OverflowError:
        raise BesselOverflowError(f"phase has imaginary part {im:.6g}; J and Y overflow") from None
    return complex(c * ch, -s * sh), complex(s * ch, c * sh)


def _assemble(exp: _Expansion, extended: bool) -> tuple[Any, Any, Any, Any]:
    m2 = exp.modulus_sq()
    corr = exp.correction()
    pi = _pi_for(exp.z, exp.order.nu)
    alpha = _constant(exp.order.nu, pi) + exp.z + corr
    m = _principal_sqrt(m2)
    if extended:
        ctx = m.context
        c, s = ctx.cos(alpha), ctx.sin(alpha)
    else:
        c, s = _cos_sin_double(exp.order, exp.z, corr)
    j, y = m * c, m * s
    if not extended and not all(math.isfinite(abs(v)) for v in (j, y)):
        raise BesselOverflowError("J or Y is not representable in double precision")
    return j, y, alpha, m2


def _flags(order: Order, z: Any, m2: Any, alpha: Any, extended: bool) -> frozenset[EvalWarning]:
    flags = set()
    if abs(z) < TURNING_POINT_RATIO * abs(order.nu):
        flags.add(EvalWarning.NEAR_TURNING_POINT)
    if _arg(z) > BRANCH_CUT_ANGLE:
        flags.add(EvalWarning.NEAR_BRANCH_CUT)
    m2c = complex(m2)
    if m2c.real < 0 and abs(m2c.imag) <= 1e-3 * abs(m2c):
        # principal sqrt of M^2 is discontinuous here
        flags.add(EvalWarning.NEAR_BRANCH_CUT)
    if not extended and abs(alpha) * EPS > ROUNDOFF_WARN:
        flags.add(EvalWarning.LARGE_ARGUMENT_ROUNDOFF)
    return frozenset(flags)


def eval_jy(
    order: Order | Any,
    z: Any,
    policy: TruncationPolicy | None = None,
    *,
    precision: int | None = None,
) -> EvalResult:
    """Evaluate ``J_nu(z)`` and ``Y_nu(z)`` for ``|z| > |nu|``, ``|arg z| < pi``.

    Parameters
    ----------
    order : Order or scalar
        Real or complex order.
    z : scalar
        Argument; ``z = 0`` and the negative real axis raise ``DomainError``.
    policy : TruncationPolicy, optional
        Defaults to automatic truncation at machine epsilon.
    precision : int, optional
        Run the same procedure in ``precision``-bit mpmath arithmetic instead of
        doubles; the values are then mpmath numbers.

    Returns
    -------
    EvalResult
        Real values when ``nu`` and ``z`` are real.  The phase is reduced
        modulo 2*pi exactly before the trigonometric evaluation.
    """
    order = as_order(order)
    z = normalize_scalar(z)
    extended = precision is not None
    if extended:
        ctx = MPContext()
        ctx.prec = int(precision)
        order = Order(_to_ctx(ctx, order.nu))
        z = _to_ctx(ctx, z)
    exp = _Expansion(order, z, policy)
    j, y, alpha, m2 = _assemble(exp, extended)
    return EvalResult(
        j_value=j,
        y_value=y,
        err_estimate=max(exp.modulus.err, exp.phase.err),
        modulus_terms_used=exp.modulus.terms_used,
        phase_terms_used=exp.phase.terms_used,
        warnings=_flags(order, exp.z, m2, alpha, extended),
        alpha=alpha,
        modulus_sq=m2,
    )


def _to_ctx(ctx: MPContext, x: Any) -> Any:
    x = normalize_scalar(x)
    if isinstance(x, complex):
        return ctx.mpc(x.real, x.imag)
    return ctx.convert(x)


def estimate_error(result: EvalResult, z: Any = None) -> float:
    """Series error estimate, floored by the roundoff of a trig call at ``|alpha|``.

    ``z`` is accepted for call compatibility; ``alpha`` already carries the
    ``|z|`` scaling of the floor.
    """
    return max(float(result.err_estimate), EPS * max(1.0, float(abs(result.alpha))))


def besselj(nu: Any, z: Any, policy: TruncationPolicy | None = None) -> Any:
    return eval_jy(nu, z, policy).j_value


def bessely(nu: Any, z: Any, policy: TruncationPolicy | None = None) -> Any:
    return eval_jy(nu, z, policy).y_value


def _jy_and_derivatives(order: Order | Any, z: Any, policy: TruncationPolicy | None = None):
    """``(J, Y, J', Y')`` with ``M'`` from the termwise-differentiated modulus series.

    ``J' = M' cos(alpha) - M alpha' sin(alpha)`` and likewise for ``Y'``.
    """
    exp = _Expansion(order, z, policy)
    j, y, _, m2 = _assemble(exp, is_mp(exp.z))
    m = _principal_sqrt(m2)
    zz = exp.z
    # d/dz sum t_n z^-2n = -sum 2n ratio_n / z
    dt = 0 * exp.one
    for n, r in enumerate(exp.modulus.ratios, start=1):
        dt = dt - 2 * n * r
    dt = dt / zz
    pref = 2 / (_pi_for(zz, exp.order.nu) * zz)
    dm2 = pref * (dt - exp.modulus.total / zz)
    dm = dm2 / (2 * m)
    ap = exp.phase.total
    # cos(alpha) = J / M, sin(alpha) = Y / M
    jp = dm * j / m - ap * y
    yp = dm * y / m + ap * j
    return j, y, jp, yp
