"""Arctangent lattice series: closed form, paired partial sums, regrouping.

The engine evaluates both sides of

    atan(tanh(a) * cot(b)) = sum over all integers k of atan(a / (b + k*pi))

under the bilateral convention value = term(0) + sum_{k>=1} (term(k) +
term(-k)).  Pairing the k and -k terms is mandatory: single terms decay like
1/k while a pair decays like 1/k^2, which is what makes the remainder bound
below possible at all.

Tail bound derivation (documented here, validated empirically in the tests):
with u = a/(b+k*pi), v = a/(b-k*pi) and k*pi > |b| we have u*v < 0 for real
inputs, so atan(u) + atan(v) = atan((u+v)/(1-uv)) with no branch shift, and

    |pair_k| <= |u+v| / |1-uv| <= 2|a||b| / (k^2 pi^2 - |b|^2 - |a|^2).

Whenever (N+1)^2 pi^2 >= 2(|a|^2 + |b|^2), each k > N satisfies
k^2 pi^2 - |a|^2 - |b|^2 >= k^2 pi^2 / 2, and sum_{k>N} 1/k^2 <= 1/N, giving

    |remainder| <= 4 |a||b| / (pi^2 N).

The same modulus bound is used for complex (a, b); its validity there is an
empirical claim that the test suite checks on random samples.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

import numpy as np

from .errors import BranchPointError, ConfigError, PoleError
from .jets import complex_atan

__all__ = [
    "SeriesEval",
    "er_closed",
    "er_partial",
    "er_tail_bound",
    "er_regroup_finite",
    "BranchOffset",
    "branch_offset",
]

Scalar = Union[float, complex]

_POLE_MARGIN = 1e-12


@dataclass(frozen=True)
class SeriesEval:
    """Result of a paired bilateral partial sum.

    ``value`` is term(0) plus the first ``n_pairs`` symmetric pairs;
    ``tail_bound`` is a proven upper bound on the absolute remainder under
    that pairing.  ``im_residual`` records |Im value| for sums whose terms
    are complex but whose total must be real.
    """

    value: Scalar
    n_pairs: int
    tail_bound: float
    terms_policy: str = "paired-bilateral"
    im_residual: Optional[float] = None


def _is_complex(*vals) -> bool:
    # dispatch on type, not value: complex inputs with zero imaginary part
    # stay on the complex path and return complex results
    return any(isinstance(v, complex) for v in vals)


def er_closed(a: Scalar, b: Scalar) -> Scalar:
    """Closed form atan(tanh(a) * cot(b)); principal branch for complex input."""
    if _is_complex(a, b):
        sb = cmath.sin(b)
        if abs(sb) < _POLE_MARGIN:
            raise PoleError(f"cot pole: sin(b) ~ 0 at b={b!r}")
        w = cmath.tanh(a) * cmath.cos(b) / sb
        if abs(w - 1j) < 1e-15 or abs(w + 1j) < 1e-15:
            raise BranchPointError(f"atan branch point reached at argument {w!r}")
        return complex_atan(w)
    sb = math.sin(b)
    if abs(sb) < _POLE_MARGIN:
        raise PoleError(f"cot pole: sin(b) ~ 0 at b={b!r}")
    return math.atan(math.tanh(a) * math.cos(b) / sb)


def er_tail_bound(a: Scalar, b: Scalar, n_pairs: int) -> float:
    """Remainder bound 4|a||b| / (pi^2 N); see the module docstring.

    Raises ConfigError when N is too small for the bound's validity
    condition (N+1)^2 pi^2 >= 2 (|a|^2 + |b|^2).
    """
    if n_pairs < 1:
        raise ConfigError("paired sums need n_pairs >= 1")
    aa, bb = abs(a), abs(b)
    if (n_pairs + 1) ** 2 * math.pi ** 2 < 2.0 * (aa * aa + bb * bb):
        raise ConfigError(
            f"tail bound invalid: need (N+1)^2 pi^2 >= 2(|a|^2+|b|^2), got "
            f"N={n_pairs}, |a|={aa:.3g}, |b|={bb:.3g}")
    return 4.0 * aa * bb / (math.pi ** 2 * n_pairs)


def _check_term_poles(b: Scalar, n_pairs: int):
    """b + k*pi must stay away from 0 for all |k| <= N."""
    if isinstance(b, complex) and b.imag != 0.0:
        return  # off the real axis no lattice point is hit
    br = b.real if isinstance(b, complex) else b
    k_near = round(-br / math.pi)
    if abs(k_near) <= n_pairs and abs(br + k_near * math.pi) < _POLE_MARGIN:
        raise PoleError(f"term pole: b + k*pi ~ 0 for k={k_near}")


def er_partial(a: Scalar, b: Scalar, n_pairs: int) -> SeriesEval:
    """Paired bilateral partial sum of atan(a / (b + k*pi)).

    Terms are accumulated in ascending k with a fixed (pairwise) reduction,
    so results are reproducible run to run.
    """
    if n_pairs < 0:
        raise ConfigError("n_pairs must be >= 0")
    _check_term_poles(b, n_pairs)
    cplx = _is_complex(a, b)
    if a == 0:
        z = 0j if cplx else 0.0
        return SeriesEval(z, n_pairs, 0.0,
                          im_residual=0.0 if cplx else None)
    if abs(b) < _POLE_MARGIN:
        raise PoleError("term pole at k=0: b ~ 0")

    dtype = np.complex128 if cplx else np.float64
    k = np.arange(1, n_pairs + 1, dtype=np.float64) * math.pi
    av = np.asarray(a, dtype=dtype)
    bv = np.asarray(b, dtype=dtype)
    pairs = np.arctan(av / (bv + k)) + np.arctan(av / (bv - k))
    total = np.arctan(av / bv) + pairs.sum()
    tail = er_tail_bound(a, b, max(n_pairs, 1)) if n_pairs >= 1 else math.inf
    if cplx:
        value = complex(total)
        return SeriesEval(value, n_pairs, tail, im_residual=abs(value.imag))
    return SeriesEval(float(total), n_pairs, tail)


def er_regroup_finite(a: Scalar, b: Scalar, n: int) -> Scalar:
    """Regrouped n-term value sum_{m=0..n-1} atan(tanh(a/n) cot((b+m*pi)/n)).

    Equals the closed form modulo an integer multiple of pi whose value
    depends on the branch cell of b; use :func:`branch_offset` to compare.
    """
    if n < 1:
        raise ConfigError("regrouping needs n >= 1")
    cplx = _is_complex(a, b)
    total: Scalar = 0j if cplx else 0.0
    for m in range(n):
        total += er_closed(a / n, (b + m * math.pi) / n)
    return total


class BranchOffset(NamedTuple):
    """Nearest integer multiple of ``unit`` separating two values."""

    q: int
    gap: float


def branch_offset(lhs: float, rhs: float, unit: float = math.pi) -> BranchOffset:
    """q minimizing |lhs - rhs - q*unit|, with the residual gap."""
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        raise ConfigError("branch_offset needs finite inputs")
    q = round((lhs - rhs) / unit)
    return BranchOffset(int(q), abs(lhs - rhs - q * unit))
