"""Non-oscillatory modulus and phase of Bessel's equation.

For ``|z| > |nu|`` the functions

    M^2(z)    ~ (2/(pi z)) (1 + sum t_n / z^(2n))
    alpha'(z) ~ 1 + sum s_n / z^(2n)
    alpha(z)  ~ -nu pi/2 - pi/4 + z - sum s_n / ((2n-1) z^(2n-1))

are smooth, and ``J = M cos(alpha)``, ``Y = M sin(alpha)``.  Both series are
asymptotic: their terms shrink to a minimum and then grow.  Truncation is
governed by :class:`TruncationPolicy`.
"""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass
from typing import Any, Literal

import numpy as np
from mpmath.ctx_mp_python import _mpc

from .errors import DomainError
from .series import (
    DEFAULT_MAX_TERMS,
    Order,
    as_order,
    is_mp,
    iter_reciprocal,
    normalize_scalar,
    _modulus_ratio_list,
)

__all__ = [
    "PhaseResult",
    "TruncationPolicy",
    "general_basis_phase_derivative",
    "modulus_squared",
    "phase_constant",
    "phase_derivative",
    "phase_value",
]

EPS = sys.float_info.epsilon
# terms this large are past any useful minimum; scanning further only risks overflow
_BLOWUP = 1e200


@dataclass(frozen=True)
class TruncationPolicy:
    """How many terms of each asymptotic series to keep.

    ``auto`` keeps terms until one falls below ``target_rtol`` times the
    running sum; if that never happens within ``max_terms`` it truncates just
    before the smallest term seen.  ``fixed`` keeps exactly ``count`` terms.

    Term counts always include the leading unit term, so ``count=1`` means no
    corrections at all.
    """

    mode: Literal["auto", "fixed"] = "auto"
    count: int | None = None
    max_terms: int = DEFAULT_MAX_TERMS
    target_rtol: float = EPS

    def __post_init__(self) -> None:
        if self.mode not in ("auto", "fixed"):
            raise ValueError(f"unknown truncation mode {self.mode!r}")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")
        if self.target_rtol < 0:
            raise ValueError("target_rtol must be nonnegative")
        if self.mode == "fixed":
            if self.count is None or self.count < 1:
                raise ValueError("fixed truncation needs count >= 1")
            if self.count > self.max_terms:
                object.__setattr__(self, "max_terms", self.count)

    @classmethod
    def fixed(cls, count: int) -> TruncationPolicy:
        return cls(mode="fixed", count=count, max_terms=max(count, 1))

    @classmethod
    def auto(cls, target_rtol: float = EPS, max_terms: int = DEFAULT_MAX_TERMS) -> TruncationPolicy:
        return cls(mode="auto", max_terms=max_terms, target_rtol=target_rtol)


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class PhaseResult:
    alpha: Any
    alpha_prime: Any
    modulus_sq: Any
    modulus_terms_used: int
    phase_terms_used: int
    err_estimate: float
    correction: Any  # alpha - (-nu pi/2 - pi/4) - z


@dataclass(frozen=True)
class _Truncated:
    ratios: list  # retained ratios, n = 1..k
    total: Any  # 1 + sum(ratios)
    err: float  # first omitted magnitude relative to |total|

    @property
    def terms_used(self) -> int:
        return len(self.ratios) + 1


def _magnitude(x: Any) -> float:
    m = float(abs(x))
    return m if math.isfinite(m) else math.inf


def _truncate(terms, policy: TruncationPolicy, one: Any) -> _Truncated:
    kept: list = []
    mags: list[float] = []
    total = one
    if policy.mode == "fixed":
        need = policy.count - 1
        for r in terms:
            if len(kept) == need:
                return _Truncated(kept, total, _magnitude(r) / _magnitude(total))
            kept.append(r)
            total = total + r
        return _Truncated(kept, total, 0.0)

    for n, r in enumerate(terms, start=1):
        m = _magnitude(r)
        if m < policy.target_rtol * _magnitude(total):
            return _Truncated(kept, total, m / _magnitude(total))
        if m > _BLOWUP:
            break
        kept.append(r)
        mags.append(m)
        total = total + r
        if n >= policy.max_terms:
            break
    if not mags:
        return _Truncated([], one, math.inf)
    # no term was small enough: stop just before the smallest one
    j = int(np.argmin(mags))
    kept = kept[:j]
    total = one
    for r in kept:
        total = total + r
    return _Truncated(kept, total, mags[j] / _magnitude(total))


def _check_argument(z: Any) -> Any:
    z = normalize_scalar(z)
    if z == 0:
        raise DomainError("z = 0 is outside the domain")
    if not isinstance(z, (complex, _mpc)) and z < 0:
        raise DomainError("z on the branch cut arg(z) = pi")
    return z


def _pi_for(*xs: Any) -> Any:
    for x in xs:
        if is_mp(x):
            return x.context.pi
    return math.pi


def _unit(*xs: Any) -> Any:
    for x in xs:
        if is_mp(x):
            return x.context.one
    return 1.0


def phase_constant(order: Order | Any) -> Any:
    """``-nu*pi/2 - pi/4``, fixed by matching the large-argument forms."""
    order = as_order(order)
    return _constant(order.nu, _pi_for(order.nu))


def _constant(nu: Any, pi: Any) -> Any:
    return -nu * pi / 2 - pi / 4


class _Expansion:
    """Lazily truncated modulus and phase series for one (order, z, policy)."""

    def __init__(self, order: Order | Any, z: Any, policy: TruncationPolicy | None):
        self.order = as_order(order)
        self.z = _check_argument(z)
        self.policy = policy or DEFAULT_POLICY
        self.one = _unit(self.order.nu, self.z)
        self._t = _modulus_ratio_list(self.order.mu, self.z, self.policy.max_terms)
        self._mod: _Truncated | None = None
        self._ph: _Truncated | None = None

    @property
    def modulus(self) -> _Truncated:
        if self._mod is None:
            self._mod = _truncate(self._t, self.policy, self.one)
        return self._mod

    @property
    def phase(self) -> _Truncated:
        if self._ph is None:
            self._ph = _truncate(iter_reciprocal(self._t), self.policy, self.one)
        return self._ph

    def modulus_sq(self) -> Any:
        return 2 / (_pi_for(self.z, self.order.nu) * self.z) * self.modulus.total

    def correction(self) -> Any:
        # -sum s_n / ((2n-1) z^(2n-1)) = -z * sum ratio_n / (2n-1)
        acc = 0 * self.one
        for n, r in enumerate(self.phase.ratios, start=1):
            acc = acc + r / (2 * n - 1)
        return -self.z * acc


def modulus_squared(
    order: Order | Any, z: Any, policy: TruncationPolicy | None = None
) -> tuple[Any, int, float]:
    """``J_nu(z)**2 + Y_nu(z)**2`` from its asymptotic series.

    Returns ``(value, terms_used, err)``; ``err`` is the first omitted term
    relative to the retained sum.
    """
    exp = _Expansion(order, z, policy)
    return exp.modulus_sq(), exp.modulus.terms_used, exp.modulus.err


def phase_derivative(
    order: Order | Any, z: Any, policy: TruncationPolicy | None = None
) -> tuple[Any, int, float]:
    """``alpha'(z) = 2 / (pi z M(z)**2)`` from the reciprocal series."""
    exp = _Expansion(order, z, policy)
    return exp.phase.total, exp.phase.terms_used, exp.phase.err


def phase_value(order: Order | Any, z: Any, policy: TruncationPolicy | None = None) -> PhaseResult:
    exp = _Expansion(order, z, policy)
    corr = exp.correction()
    return PhaseResult(
        alpha=_constant(exp.order.nu, _pi_for(exp.z, exp.order.nu)) + exp.z + corr,
        alpha_prime=exp.phase.total,
        modulus_sq=exp.modulus_sq(),
        modulus_terms_used=exp.modulus.terms_used,
        phase_terms_used=exp.phase.terms_used,
        err_estimate=max(exp.modulus.err, exp.phase.err),
        correction=corr,
    )


def general_basis_phase_derivative(u_vals, v_vals, wronskian: float = 1.0, rtol: float = 1e-12) -> np.ndarray:
    """Phase derivative ``W / (u**2 + v**2)`` of a sampled solution basis.

    Rejects samples where ``u`` and ``v`` vanish together, which no genuine
    basis can do.
    """
    u = np.asarray(u_vals, dtype=float)
    v = np.asarray(v_vals, dtype=float)
    if u.shape != v.shape:
        raise ValueError("u and v must be sampled on the same grid")
    r2 = u * u + v * v
    if not np.all(np.isfinite(r2)):
        raise ValueError("non-finite basis samples")
    scale = r2.max() if r2.size else 0.0
    if r2.size and (scale == 0.0 or np.any(r2 <= rtol * scale)):
        raise ValueError("u and v vanish simultaneously; not a solution basis")
    return wronskian / r2


def _principal_sqrt(x: Any) -> Any:
    if is_mp(x):
        return x.context.sqrt(x)
    if isinstance(x, complex) or x < 0:
        return cmath.sqrt(x)
    return math.sqrt(x)
