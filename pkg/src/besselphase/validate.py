"""Structural checks of the phase-function identities on concrete data.

With ``r_n = s_n / z**(2n)`` the retained phase-derivative ratios, the
truncated series and its exact derivatives are

    alpha'   = 1 + sum r_n
    alpha''  = -sum 2n r_n / z
    alpha''' = sum 2n (2n+1) r_n / z**2

so the Kummer residual below measures truncation error only, with no
difference-scheme error mixed in.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Any

from mpmath import MPContext

from .errors import DomainError
from .eval import _cos_sin_double, _to_ctx
from .phase import TruncationPolicy, _Expansion
from .series import Order, as_order

__all__ = ["KummerReport", "kummer_report", "kummer_residual", "reconstruct_uv"]

# enough to push roundoff far below any truncation error a double run can see
KUMMER_PRECISION = 160


@dataclass(frozen=True)
class KummerReport:
    z_grid: list[float]
    residuals: list[float]
    max_residual: float
    terms_used: int
    estimates: list[float]  # first omitted phase term, relative


def _real_inputs(order: Order, z: Any) -> tuple[float, float]:
    if not order.is_real or isinstance(z, complex):
        raise DomainError("validation checks are defined for real nu and z")
    z = float(z)
    nu = float(order.nu)
    if not z > abs(nu):
        raise DomainError(f"need z > |nu|, got z={z!r}, nu={nu!r}")
    return nu, z


def _kummer(order: Order, z: float, policy: TruncationPolicy | None, precision: int | None):
    nu, z = _real_inputs(order, z)
    if precision is not None:
        ctx = MPContext()
        ctx.prec = int(precision)
        nu_x, z_x = _to_ctx(ctx, nu), _to_ctx(ctx, z)
    else:
        nu_x, z_x = nu, z
    exp = _Expansion(Order(nu_x), z_x, policy)
    ph = exp.phase
    d1 = ph.total
    d2 = 0 * exp.one
    d3 = 0 * exp.one
    for n, r in enumerate(ph.ratios, start=1):
        d2 = d2 - 2 * n * r
        d3 = d3 + 2 * n * (2 * n + 1) * r
    d2 = d2 / z_x
    d3 = d3 / (z_x * z_x)
    q = 1 - (exp.order.mu - 1) / (4 * z_x * z_x)
    res = d1 * d1 - q + d3 / (2 * d1) - 3 * (d2 / d1) ** 2 / 4
    return float(abs(res) / abs(q)), ph.terms_used, float(ph.err)


def kummer_residual(
    order: Order | Any,
    z: float,
    policy: TruncationPolicy | None = None,
    precision: int | None = KUMMER_PRECISION,
) -> float:
    """``|alpha'**2 - q + alpha'''/(2 alpha') - 3/4 (alpha''/alpha')**2| / |q|``.

    ``q = 1 - (nu**2 - 1/4)/z**2``.  The series is truncated by ``policy`` and
    then evaluated in ``precision``-bit arithmetic (``None`` for doubles); at
    the default the residual is a pure truncation measurement.
    """
    return _kummer(as_order(order), z, policy, precision)[0]


def kummer_report(
    order: Order | Any,
    z_grid: Iterable[float],
    policy: TruncationPolicy | None = None,
    precision: int | None = KUMMER_PRECISION,
) -> KummerReport:
    order = as_order(order)
    zs = [float(z) for z in z_grid]
    if not zs:
        raise ValueError("empty z grid")
    rows = [_kummer(order, z, policy, precision) for z in zs]
    residuals = [r[0] for r in rows]
    return KummerReport(
        z_grid=zs,
        residuals=residuals,
        max_residual=max(residuals),
        terms_used=max(r[1] for r in rows),
        estimates=[r[2] for r in rows],
    )


def reconstruct_uv(order: Order | Any, z: float, policy: TruncationPolicy | None = None) -> tuple[float, float]:
    """``u = cos(alpha)/sqrt(alpha')``, ``v = sin(alpha)/sqrt(alpha')``.

    With the Bessel normalisation of the phase these equal
    ``sqrt(pi z / 2) J_nu(z)`` and ``sqrt(pi z / 2) Y_nu(z)``, a pair with unit
    Wronskian.
    """
    order = as_order(order)
    nu, z = _real_inputs(order, z)
    exp = _Expansion(Order(nu), z, policy)
    c, s = _cos_sin_double(exp.order, exp.z, exp.correction())
    scale = 1 / math.sqrt(exp.phase.total)
    return c * scale, s * scale
