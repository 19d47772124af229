"""Coefficient recurrences for the modulus and phase expansions.

Every coefficient is carried in ratio form, ``t_n / z**(2n)`` and
``s_n / z**(2n)``, and advanced by a single multiplication with ``z**-2`` per
step.  The raw coefficients ``t_n`` grow like ``nu**(2n)`` and overflow the
double exponent range long before the ratios do (orders up to ``1e18`` are in
scope), so they are never formed.

The functions here are generic in the scalar type: Python ``float`` /
``complex`` give double precision, ``mpmath`` numbers give whatever precision
their context carries.
"""

from __future__ import annotations

import numbers
import operator
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from typing import Any, Literal

from mpmath.ctx_mp_python import _mpc, _mpf

from .errors import DomainError

__all__ = [
    "Order",
    "TermSequence",
    "as_order",
    "iter_reciprocal",
    "modulus_term_ratios",
    "normalize_scalar",
    "reciprocal_series",
]

DEFAULT_MAX_TERMS = 200


def is_mp(x: Any) -> bool:
    return isinstance(x, (_mpf, _mpc))


def normalize_scalar(x: Any) -> Any:
    """Map ``x`` to ``float``, ``complex`` or an mpmath number.

    Complex values with a zero imaginary part become real so that real input
    stays on the real-arithmetic path.
    """
    if is_mp(x):
        if isinstance(x, _mpc) and x.imag == 0:
            return x.real
        return x
    if isinstance(x, bool):
        raise TypeError("boolean is not a valid scalar")
    if isinstance(x, numbers.Real):
        return float(x)
    if isinstance(x, numbers.Complex):
        x = complex(x)
        return x.real if x.imag == 0 else x
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


@dataclass(frozen=True)
class Order:
    """Bessel order ``nu``; ``mu = 4 nu**2`` is always derived, never stored."""

    nu: Any

    def __post_init__(self) -> None:
        object.__setattr__(self, "nu", normalize_scalar(self.nu))

    @property
    def mu(self) -> Any:
        return 4 * self.nu * self.nu

    @property
    def is_real(self) -> bool:
        return not isinstance(self.nu, (complex, _mpc))


def as_order(order: Order | Any) -> Order:
    return order if isinstance(order, Order) else Order(order)


@dataclass(frozen=True)
class TermSequence:
    """Ratios ``c_n / z**(2n)`` for ``n = 1, 2, ...``; the ``n = 0`` term is the implicit 1."""

    kind: Literal["modulus", "phase"]
    ratios: tuple
    magnitudes: tuple = field(init=False)

    def __post_init__(self) -> None:
        if self.kind not in ("modulus", "phase"):
            raise ValueError(f"unknown sequence kind {self.kind!r}")
        object.__setattr__(self, "ratios", tuple(self.ratios))
        object.__setattr__(self, "magnitudes", tuple(abs(r) for r in self.ratios))

    def __len__(self) -> int:
        return len(self.ratios)


def _modulus_ratio_list(mu: Any, z: Any, max_terms: int) -> list:
    zinv2 = 1 / (z * z)
    ratio = zinv2 * 0 + 1  # unit of the working type
    out = []
    for n in range(1, max_terms + 1):
        k = 2 * n - 1
        # (mu - k^2)/4 * k/(2n) * z^-2, grouped so nothing exceeds |mu / z^2|
        ratio = ratio * (((mu - k * k) * zinv2) * (k / (8 * n)))
        out.append(ratio)
    return out


def modulus_term_ratios(order: Order | Any, z: Any, max_terms: int = DEFAULT_MAX_TERMS) -> TermSequence:
    """Return ``t_n / z**(2n)`` for ``n = 1..max_terms``.

    ``t_0 = 1`` and ``t_n = t_{n-1} (mu - (2n-1)**2)/4 * (2n-1)/(2n)``.

    >>> modulus_term_ratios(0.0, 1.0, 1).ratios
    (-0.125,)
    """
    order = as_order(order)
    z = normalize_scalar(z)
    if z == 0:
        raise DomainError("z must be nonzero")
    if max_terms < 1:
        raise ValueError("max_terms must be at least 1")
    return TermSequence("modulus", _modulus_ratio_list(order.mu, z, int(max_terms)))


def _dot(xs: Sequence, ys: Sequence) -> Any:
    if xs and is_mp(xs[0]):
        return xs[0].context.fdot(xs, ys)
    return sum(map(operator.mul, xs, ys))


def iter_reciprocal(a: Sequence) -> Iterator:
    """Yield ``b_1, b_2, ...`` with ``1 + sum b_n x^n = 1 / (1 + sum a_n x^n)``.

    ``b_n = -a_n - sum_{j=1}^{n-1} a_j b_{n-j}``.  Works on ratio form
    directly because the powers of ``z`` in ``a_j b_{n-j}`` add up to those of
    ``b_n``.
    """
    b: list = []
    for n in range(1, len(a) + 1):
        # a[0..n-2] holds a_1..a_{n-1}; b reversed holds b_{n-1}..b_1
        conv = _dot(a[: n - 1], b[::-1]) if n > 1 else 0
        bn = -(a[n - 1] + conv)
        b.append(bn)
        yield bn


def reciprocal_series(a_ratios: TermSequence) -> TermSequence:
    """Phase-derivative ratios ``s_n / z**(2n)`` from modulus ratios."""
    if a_ratios.kind != "modulus":
        raise ValueError("reciprocal_series expects a modulus sequence")
    return TermSequence("phase", list(iter_reciprocal(a_ratios.ratios)))
