"""Decompositions of the Scherk-type families into dilated helicoids.

Infinite side: the spacelike family psi decomposes over a real lattice of
dilated helicoids,

    psi(x, y; theta) = sec(t2) * [pi/2 - sum_n atan( y / (x cos(t2) - n s) )],
    s = pi / sin(t2),  t2 = theta/2,

valid where tan((x sin theta)/2) / tanh(y sin(t2)) > 0; and the soliton
family chi decomposes over a purely imaginary lattice of dilated hyperbolic
helicoids,

    chi(y, z; theta) = sec(t2) * sum_n atanh( z cos(t2) / (y - n s) ),
    s = i pi / sin(t2).

The chi terms for +n and -n are complex conjugates at real arguments, so
every bilateral pair is exactly real; taking real parts termwise gives the
equivalent log-modulus form  (1/2) sec(t2) sum_n log |(y - n s + z cos(t2))
/ (y - n s - z cos(t2))|.

Finite side: four regrouping identities tie psi, phi, chi at angle 2*beta or
4*beta to n dilated copies at a smaller angle.  Part 1's published statement
and its proof's final line disagree (second argument cos(2*beta~) vs
cos(beta~), and a 1/n factor on the x-term), so three variants are evaluated
and the numbers adjudicate; parts 2-4 have a single form.  All finite
comparisons are performed mod the natural branch unit (pi times the secant
prefactor of the side's arctangent), with the integer multiple reported.

Value-level partial sums run on vectorized arrays; jet-level partial sums
(used for derivative-level identity checks and the summand/dilation
correspondence) run through the scalar jet engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .catalog import (
    DilationSpec,
    FamilyParam,
    HeightField,
    chi_family,
    dilate,
    helicoid,
    hyperbolic_helicoid,
    phi_family,
    psi_family,
)
from .errors import ConfigError, DomainConstraintError, PoleError
from .jets import Jet2, imag_magnitude, jatan, jatanh, real_part, seed_x, seed_y
from .series import SeriesEval, branch_offset

__all__ = [
    "psi_infinite_rhs",
    "chi_infinite_rhs",
    "chi_infinite_log_rhs",
    "psi_rhs_jet",
    "chi_rhs_jet",
    "psi_summand_field",
    "chi_summand_field",
    "psi_domain_constraint",
    "DecompReport",
    "PART1_VARIANTS",
    "FINITE_PARTS",
    "safe_beta_range",
    "finite_decomp_jets",
    "finite_decomp_check",
]

Param = Union[FamilyParam, float]


def _param(p: Param) -> FamilyParam:
    return p if isinstance(p, FamilyParam) else FamilyParam(p)


# -- infinite decomposition of psi -------------------------------------------

def psi_domain_constraint(x: float, y: float, p: Param) -> bool:
    """The decomposition's stated constraint tan((x sin theta)/2)/tanh(y sin(theta/2)) > 0."""
    p = _param(p)
    den = math.tanh(y * p.half_sin)
    if den == 0.0:
        return False
    return math.tan(x * p.full_sin_half) / den > 0.0


def _check_psi_lattice_poles(x: float, p: FamilyParam, n_pairs: int):
    xc = x * p.cos_half
    k_near = round(xc / p.s_real)
    if abs(k_near) <= n_pairs and abs(xc - k_near * p.s_real) < 1e-9:
        raise PoleError(f"helicoid summand pole: x cos(theta/2) ~ {k_near}*s")


def _psi_tail_bound(x: float, y: float, p: FamilyParam, n_pairs: int) -> float:
    """sec(t2) * 4 |x cos(t2)| |y| / (s^2 N); valid once
    (N+1)^2 s^2 >= 2 ((x cos(t2))^2 + y^2) -- same Taylor-pair argument as
    the arctangent lattice bound in :mod:`zmcforge.series`."""
    xc, s = abs(x) * p.cos_half, p.s_real
    if (n_pairs + 1) ** 2 * s * s < 2.0 * (xc * xc + y * y):
        raise ConfigError(f"tail bound invalid at N={n_pairs} for |x cos|="
                          f"{xc:.3g}, |y|={abs(y):.3g}, s={s:.3g}")
    return p.sec_half * 4.0 * xc * abs(y) / (s * s * n_pairs)


def psi_infinite_rhs(x: float, y: float, p: Param, n_pairs: int) -> SeriesEval:
    """Paired bilateral partial sum of the dilated-helicoid decomposition."""
    p = _param(p)
    if n_pairs < 1:
        raise ConfigError("need n_pairs >= 1")
    if not psi_domain_constraint(x, y, p):
        raise DomainConstraintError(
            f"({x}, {y}) violates tan/tanh positivity for theta={p.theta}")
    _check_psi_lattice_poles(x, p, n_pairs)
    xc = x * p.cos_half
    k = np.arange(1, n_pairs + 1, dtype=np.float64) * p.s_real
    t0 = math.atan(y / xc) if xc != 0.0 else math.copysign(math.pi / 2, y)
    pairs = np.arctan(y / (xc - k)) + np.arctan(y / (xc + k))
    total = t0 + pairs.sum()
    value = p.sec_half * (math.pi / 2 - total)
    return SeriesEval(float(value), n_pairs, _psi_tail_bound(x, y, p, n_pairs))


def psi_summand_field(p: Param, n: int) -> HeightField:
    """The n-th summand as an explicit dilation of the helicoid:
    atan(y / (x cos(theta/2) - n s))."""
    p = _param(p)
    return dilate(helicoid(), DilationSpec(k=1.0, m1=p.cos_half,
                                           n1=-n * p.s_real, m2=1.0, n2=0.0))


def psi_rhs_jet(x: float, y: float, p: Param, n_pairs: int) -> Jet2:
    """Jet of the partial RHS (value + both derivative orders), summed in
    ascending pair order through the scalar jet engine."""
    p = _param(p)
    _check_psi_lattice_poles(x, p, n_pairs)
    jx, jy = seed_x(x), seed_y(y)
    xc = jx * p.cos_half
    total = jatan(jy / xc)
    s = p.s_real
    for n in range(1, n_pairs + 1):
        total = total + jatan(jy / (xc - n * s)) + jatan(jy / (xc + n * s))
    return (math.pi / 2 - total) * p.sec_half


# -- infinite decomposition of chi -------------------------------------------

def _chi_domain(y: float, z: float, p: FamilyParam) -> bool:
    den = math.tanh(y * p.half_sin)
    return den != 0.0 and abs(math.tanh(z * p.full_sin_half)) < abs(den)


def _chi_tail_bound(y: float, z: float, p: FamilyParam, n_pairs: int) -> float:
    """sec(t2) * (8/3) |y| |z cos(t2)| / (q^2 N) with q = pi/sin(t2).

    Each conjugate pair satisfies atanh(u) + atanh(conj u) = atanh(W) with
    W = 2 Re(u)/(1+|u|^2) real, |W| <= 2|y||z cos|/(n^2 q^2), and
    |atanh W| <= (4/3)|W| for |W| <= 1/2; requires the |W| <= 1/2 condition
    at n = N+1.
    """
    zc, q = abs(z) * p.cos_half, p.s_imag
    if 2.0 * abs(y) * zc > 0.5 * (n_pairs + 1) ** 2 * q * q:
        raise ConfigError(f"tail bound invalid at N={n_pairs} for |y|={abs(y):.3g}, "
                          f"|z cos|={zc:.3g}, q={q:.3g}")
    return p.sec_half * (8.0 / 3.0) * abs(y) * zc / (q * q * n_pairs)


def chi_infinite_rhs(y: float, z: float, p: Param, n_pairs: int) -> SeriesEval:
    """Paired bilateral partial sum over the imaginary lattice; the value is
    complex with ``im_residual`` recording how far from real it is (exactly
    0 up to rounding, since each pair is conjugate-symmetric)."""
    p = _param(p)
    if n_pairs < 1:
        raise ConfigError("need n_pairs >= 1")
    if not _chi_domain(y, z, p):
        raise DomainConstraintError(
            f"({y}, {z}) outside the soliton domain for theta={p.theta}")
    zc = z * p.cos_half
    q = p.s_imag
    t0 = complex(np.arctanh(complex(zc / y)))
    k = np.arange(1, n_pairs + 1, dtype=np.float64)
    dens = y - 1j * k * q
    pairs = np.arctanh(zc / dens) + np.arctanh(zc / np.conjugate(dens))
    total = t0 + pairs.sum()
    value = p.sec_half * complex(total)
    return SeriesEval(value, n_pairs, _chi_tail_bound(y, z, p, n_pairs),
                      im_residual=abs(value.imag))


def chi_infinite_log_rhs(y: float, z: float, p: Param, n_pairs: int) -> SeriesEval:
    """Real log-modulus form of the same sum:
    (1/2) sec(t2) sum_n log |(y - n s + z cos(t2)) / (y - n s - z cos(t2))|."""
    p = _param(p)
    if n_pairs < 1:
        raise ConfigError("need n_pairs >= 1")
    if not _chi_domain(y, z, p):
        raise DomainConstraintError(
            f"({y}, {z}) outside the soliton domain for theta={p.theta}")
    zc = z * p.cos_half
    q = p.s_imag
    k = np.arange(1, n_pairs + 1, dtype=np.float64)
    kq2 = (k * q) ** 2
    plus, minus = (y + zc) ** 2, (y - zc) ** 2
    # |y - i k q +- zc|^2 = (y +- zc)^2 + (k q)^2, so each term's
    # (1/2) log |.../...| reads (1/4) log of the squared-modulus ratio and
    # the identical +-k terms pair to (1/2) log of it
    t0 = 0.25 * math.log(plus / minus)
    pairs = 0.5 * np.log((plus + kq2) / (minus + kq2))
    value = p.sec_half * (t0 + pairs.sum())
    return SeriesEval(float(value), n_pairs, _chi_tail_bound(y, z, p, n_pairs))


def chi_summand_field(p: Param, n: int) -> HeightField:
    """The n-th summand as a complex-shifted dilation of the hyperbolic
    helicoid: atanh(z cos(theta/2) / (y - n s)), s imaginary."""
    p = _param(p)
    shift = -n * p.s_complex if n != 0 else 0.0
    return dilate(hyperbolic_helicoid(),
                  DilationSpec(k=1.0, m1=1.0, n1=shift, m2=p.cos_half, n2=0.0))


def chi_rhs_jet(y: float, z: float, p: Param, n_pairs: int) -> Jet2:
    """Complex jet of the partial RHS; real up to rounding at real points."""
    p = _param(p)
    jy, jz = seed_x(y), seed_y(z)
    zc = jz * p.cos_half
    total = jatanh((zc * (1.0 + 0j)) / jy)
    s = p.s_complex
    for n in range(1, n_pairs + 1):
        total = total + jatanh(zc / (jy - n * s)) + jatanh(zc / (jy + n * s))
    return total * p.sec_half


# -- finite decompositions -----------------------------------------------------

PART1_VARIANTS = ("statement", "proof", "rederived")
FINITE_PARTS = (1, 2, 3, 4)


def safe_beta_range(part: int) -> tuple:
    """beta range keeping every family angle inside (0, pi/2): parts 1 and 4
    rotate at angle 2*beta, parts 2 and 3 at 4*beta."""
    return (0.0, math.pi / 8) if part in (2, 3) else (0.0, math.pi / 4)


@dataclass(frozen=True)
class DecompReport:
    """LHS/RHS comparison after branch correction at one sample point."""

    point: tuple
    theta: float          # the LHS family angle (2*beta or 4*beta)
    n: int                # regroup order (finite) / pair count (infinite)
    lhs: float
    rhs: float            # real part for complex-summand identities
    gap: float            # |lhs - rhs - q*unit|
    branch_q: int
    im_residual: float
    domain_ok: bool
    part: Optional[int] = None
    variant: Optional[str] = None
    branch_unit: float = math.pi
    deriv_gap: Optional[float] = None


def _beta_guard(part: int, beta: float):
    lo, hi = safe_beta_range(part)
    if not (lo < beta < hi):
        raise DomainConstraintError(
            f"part {part} needs beta in ({lo:.4g}, {hi:.4g}) to keep all "
            f"family angles inside (0, pi/2); got beta={beta}")


def _part1_sides(x, y, beta, n, variant):
    """LHS psi(sec(beta) x, y; 2 beta); RHS per variant.

    The rescaled half-angle beta~ satisfies sin(2 beta~) = sin(beta)/n.
    Variants differ in the summand arguments:
      statement:  psi(2x/n + 2m pi csc(2b~)/n,  2y cos(2b~); 2b~)
      proof:      psi(2x/n + 2m pi csc(2b~)/n,  2y cos(b~);  2b~)
      rederived:  psi(2x   + 2m pi csc(2b~)/n,  2y cos(b~);  2b~)
    (direct substitution of the regrouping into the family's lattice form
    gives the 'rederived' arguments).
    """
    if variant not in PART1_VARIANTS:
        raise ValueError(f"part 1 variant must be one of {PART1_VARIANTS}")
    tb2 = math.asin(math.sin(beta) / n)        # 2*beta~
    sec_b = 1.0 / math.cos(beta)
    big = psi_family(2 * beta)
    small = psi_family(tb2)
    jx, jy = seed_x(x), seed_y(y)
    lhs = big.fn(jx * sec_b, jy)

    const = (1 - n) * (math.pi / 2) * sec_b
    pref = math.cos(tb2 / 2) / math.cos(beta)
    csc = 1.0 / math.sin(tb2)
    if variant == "statement":
        first_scale, second_scale = 2.0 / n, 2.0 * math.cos(tb2)
    elif variant == "proof":
        first_scale, second_scale = 2.0 / n, 2.0 * math.cos(tb2 / 2)
    else:
        first_scale, second_scale = 2.0, 2.0 * math.cos(tb2 / 2)

    acc = None
    for m in range(n):
        term = small.fn(jx * first_scale + 2.0 * m * math.pi * csc / n,
                        jy * second_scale)
        acc = term if acc is None else acc + term
    rhs = const + pref * acc

    # stated positivity constraints: the LHS complement plus one complement
    # per regrouped term
    sb = math.sin(beta)
    den = math.tanh(y * sb)
    ok = den != 0.0 and math.tan(x * sb) / den > 0.0
    if ok:
        tden = math.tanh(y * math.sin(tb2))
        for m in range(n):
            t = math.tan((x * sb * math.cos(beta) * sec_b + m * math.pi) / n)
            if t == 0.0 or tden / t <= 0.0:
                ok = False
                break
    return lhs, rhs, math.pi * sec_b, ok


def _part2_sides(x, y, beta, n, variant):
    """LHS psi(sec(beta) sec(2 beta) x, y; 4 beta) against n dilated
    phi-copies at angle 2*beta (single published form)."""
    sec2 = 1.0 / math.cos(2 * beta)
    secb = 1.0 / math.cos(beta)
    big = psi_family(4 * beta)
    small = phi_family(2 * beta)
    jx, jy = seed_x(x), seed_y(y)
    lhs = big.fn(jx * (secb * sec2), jy)
    csc = 1.0 / math.sin(beta)
    acc = None
    for m in range(n):
        term = small.fn(jy * (2.0 / n), jx * (2.0 / n) + m * math.pi * csc / n)
        acc = term if acc is None else acc + term
    rhs = (math.pi / 2) * sec2 + (math.cos(beta) * sec2) * acc
    den = math.tanh(y * math.sin(2 * beta))
    ok = den != 0.0 and math.tan(2 * x * math.sin(beta)) / den > 0.0
    return lhs, rhs, math.pi * sec2, ok


def _part3_sides(x, y, beta, n, variant):
    """LHS phi(sec(beta) sec(2 beta) x, y; 4 beta) against n dilated
    psi-copies at angle 2*beta (single published form)."""
    sec2 = 1.0 / math.cos(2 * beta)
    secb = 1.0 / math.cos(beta)
    big = phi_family(4 * beta)
    small = psi_family(2 * beta)
    jx, jy = seed_x(x), seed_y(y)
    lhs = big.fn(jx * (secb * sec2), jy)
    csc2 = 1.0 / math.sin(2 * beta)
    acc = None
    for m in range(n):
        term = small.fn(jy * (2.0 / n) + 2.0 * m * math.pi * csc2 / n,
                        jx * (2.0 / n))
        acc = term if acc is None else acc + term
    rhs = -(n * math.pi / 2) * sec2 + (math.cos(beta) * sec2) * acc
    ok = True
    num = math.tanh(2 * x * math.sin(beta) / n)
    for m in range(n):
        t = math.tan((y * math.sin(2 * beta) + m * math.pi) / n)
        if t == 0.0 or num / t <= 0.0:
            ok = False
            break
    return lhs, rhs, math.pi * sec2, ok


def _part4_sides(y, z, beta, n, variant):
    """LHS chi(y, z; 2 beta) against n soliton copies at complex-shifted
    first arguments; the complex terms must sum to a real value."""
    fam = chi_family(2 * beta)
    jy, jz = seed_x(y), seed_y(z)
    lhs = fam.fn(jy, jz)
    csc = 1.0 / math.sin(beta)
    acc = None
    for m in range(n):
        shift = -1j * m * math.pi * csc / n
        term = fam.fn(jy * (1.0 / n) + shift, jz * (1.0 / n))
        acc = term if acc is None else acc + term
    ok = fam.domain(y, z)
    return lhs, acc, math.pi / math.cos(beta), ok


_PART_SIDES = {1: _part1_sides, 2: _part2_sides, 3: _part3_sides, 4: _part4_sides}


def finite_decomp_jets(part: int, variant: str, a: float, b: float,
                       beta: float, n: int):
    """Jet-level LHS and RHS of a finite decomposition, plus the branch unit
    and the stated-domain flag.  For part 4 the point is (y, z)."""
    if part not in _PART_SIDES:
        raise ValueError(f"part must be in {FINITE_PARTS}")
    if n < 1:
        raise ConfigError("regroup order n must be >= 1")
    _beta_guard(part, beta)
    if part == 1 and variant not in PART1_VARIANTS:
        raise ValueError(f"part 1 variant must be one of {PART1_VARIANTS}")
    return _PART_SIDES[part](a, b, beta, n, variant)


def finite_decomp_check(part: int, variant: str, a: float, b: float,
                        beta: float, n: int) -> DecompReport:
    """Evaluate one finite decomposition at one point.

    The gap is reported after correcting by the nearest integer multiple of
    the branch unit; ``deriv_gap`` is the worst discrepancy over the five
    derivative slots (real parts for the complex-summand part 4, whose
    imaginary residual is reported separately).
    """
    lhs, rhs, unit, ok = finite_decomp_jets(part, variant, a, b, beta, n)
    im_res = imag_magnitude(rhs)
    rhs_r = real_part(rhs)
    q, gap = branch_offset(lhs.v, rhs_r.v, unit)
    dgap = max(abs(lhs.dx - rhs_r.dx), abs(lhs.dy - rhs_r.dy),
               abs(lhs.dxx - rhs_r.dxx), abs(lhs.dxy - rhs_r.dxy),
               abs(lhs.dyy - rhs_r.dyy))
    return DecompReport(point=(a, b), theta=(4 * beta if part in (2, 3) else 2 * beta),
                        n=n, lhs=lhs.v, rhs=rhs_r.v, gap=gap, branch_q=q,
                        im_residual=im_res, domain_ok=ok, part=part,
                        variant=variant, branch_unit=unit, deriv_gap=dgap)
