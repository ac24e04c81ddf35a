"""Infinite and finite decompositions: lattice sums vs closed forms,
summand/dilation correspondence, realness of the imaginary-lattice sum,
and the finite-identity adjudication."""

import cmath
import math
import random

import pytest

from zmcforge.catalog import FamilyParam, get_field
from zmcforge.decompositions import (
    PART1_VARIANTS,
    chi_infinite_log_rhs,
    chi_infinite_rhs,
    chi_rhs_jet,
    chi_summand_field,
    finite_decomp_check,
    psi_domain_constraint,
    psi_infinite_rhs,
    psi_rhs_jet,
    psi_summand_field,
    safe_beta_range,
)
from zmcforge.errors import ConfigError, DomainConstraintError
from zmcforge.jets import real_part

# 50-digit closed-form evaluations, frozen
PSI_04_07_09 = 0.54533017119906629695054136803710580543799801748876
CHI_20_05_08 = 0.30309099872379561367408381254795561584101200440228


# -- psi: real helicoid lattice ---------------------------------------------------

def test_psi_closed_form_oracle():
    assert abs(get_field("psi", theta=0.9).value(0.4, 0.7) - PSI_04_07_09) <= 1e-14


def test_psi_rhs_converges_within_tail():
    for n in (100, 10_000):
        ev = psi_infinite_rhs(0.4, 0.7, 0.9, n)
        assert abs(ev.value - PSI_04_07_09) <= ev.tail_bound


def test_psi_rhs_small_y_limit():
    # every lattice term vanishes as y -> 0+ (x off the lattice), leaving
    # sec(theta/2) * pi/2
    p = FamilyParam(0.9)
    ev = psi_infinite_rhs(0.4, 1e-300, 0.9, 100)
    assert abs(ev.value - p.sec_half * math.pi / 2) <= 1e-12


def test_psi_domain_constraint_enforced():
    assert psi_domain_constraint(0.4, 0.7, 0.9)
    assert not psi_domain_constraint(0.4, -0.7, 0.9)
    with pytest.raises(DomainConstraintError):
        psi_infinite_rhs(0.4, -0.7, 0.9, 100)


def test_psi_summand_is_dilated_helicoid():
    p = FamilyParam(0.9)
    rng = random.Random(31)
    for _ in range(10):
        x, y = rng.uniform(0.1, 1.3), rng.uniform(0.1, 1.3)
        for n in (-3, -1, 0, 2, 5):
            direct = math.atan(y / (x * p.cos_half - n * p.s_real))
            assert abs(psi_summand_field(p, n).value(x, y) - direct) <= 1e-14


def test_psi_jet_partial_sum_matches_value_path():
    ev = psi_infinite_rhs(0.4, 0.7, 0.9, 500)
    j = psi_rhs_jet(0.4, 0.7, 0.9, 500)
    assert abs(ev.value - j.v) <= 1e-13


def test_psi_derivative_identity_with_richardson():
    lhs = get_field("psi", theta=0.9).jet(0.4, 0.7)
    jn = psi_rhs_jet(0.4, 0.7, 0.9, 4000)
    j2n = psi_rhs_jet(0.4, 0.7, 0.9, 8000)
    rich = 2.0 * j2n - jn
    for slot in ("dx", "dy", "dxx", "dxy", "dyy"):
        assert abs(getattr(lhs, slot) - getattr(rich, slot)) <= 1e-7


# -- chi: imaginary lattice ---------------------------------------------------------

def test_chi_closed_form_oracle():
    assert abs(get_field("chi", theta=0.8).value(2.0, 0.5) - CHI_20_05_08) <= 1e-14


def test_chi_rhs_real_within_rounding_and_converges():
    for n in (10, 100, 10_000):
        ev = chi_infinite_rhs(2.0, 0.5, 0.8, n)
        assert ev.im_residual <= 1e-12
        assert abs(ev.value.real - CHI_20_05_08) <= ev.tail_bound


def test_chi_terms_pair_to_conjugates():
    p = FamilyParam(0.8)
    y, z = 2.0, 0.5
    for n in (1, 2, 7):
        up = cmath.atanh(z * p.cos_half / (y - n * p.s_complex))
        dn = cmath.atanh(z * p.cos_half / (y + n * p.s_complex))
        assert abs(up - dn.conjugate()) <= 1e-15


def test_chi_rhs_zero_at_z0():
    ev = chi_infinite_rhs(2.0, 0.0, 0.8, 50)
    assert ev.value == 0j and ev.tail_bound == 0.0


def test_chi_outside_cone_raises():
    with pytest.raises(DomainConstraintError):
        chi_infinite_rhs(0.3, 2.0, 0.8, 50)


def test_chi_log_form_equals_real_part_identically():
    rng = random.Random(33)
    n_done = 0
    while n_done < 50:
        theta = rng.choice((0.3, 0.8, 1.2))
        chi = get_field("chi", theta=theta)
        y = rng.uniform(0.4, 2.4) * rng.choice((1, -1))
        z = rng.uniform(-2.0, 2.0)
        if not chi.domain(y, z):
            continue
        n_done += 1
        ev = chi_infinite_rhs(y, z, theta, 100)
        lg = chi_infinite_log_rhs(y, z, theta, 100)
        assert abs(lg.value - ev.value.real) <= 1e-13


def test_chi_log_form_matches_closed_form():
    lg = chi_infinite_log_rhs(2.0, 0.5, 0.8, 10_000)
    assert abs(lg.value - CHI_20_05_08) <= lg.tail_bound


def test_chi_summand_is_complex_dilated_hyperbolic_helicoid():
    # points stay inside the n=0 summand's real cone |z cos| < |y|; the
    # shifted summands are complex-valued there
    p = FamilyParam(0.8)
    rng = random.Random(34)
    for _ in range(10):
        y = rng.uniform(0.5, 2.4)
        z = rng.uniform(-0.9, 0.9) * y / p.cos_half
        for n in (-2, 0, 1, 4):
            direct = cmath.atanh(z * p.cos_half / (y - n * p.s_complex))
            assert abs(chi_summand_field(p, n).jet(y, z).v - direct) <= 1e-14


def test_chi_derivative_identity_with_richardson():
    lhs = get_field("chi", theta=0.8).jet(2.0, 0.5)
    jn = real_part(chi_rhs_jet(2.0, 0.5, 0.8, 4000))
    j2n = real_part(chi_rhs_jet(2.0, 0.5, 0.8, 8000))
    rich = 2.0 * j2n - jn
    for slot in ("dx", "dy", "dxx", "dxy", "dyy"):
        assert abs(getattr(lhs, slot) - getattr(rich, slot)) <= 1e-7


# -- finite decompositions -----------------------------------------------------------

def test_every_part_reduces_to_identity_at_n1():
    for part, (a, b) in [(1, (0.3, 0.5)), (2, (0.3, 0.5)),
                         (3, (0.3, 0.5)), (4, (2.0, 0.4))]:
        variant = "rederived" if part == 1 else "statement"
        rep = finite_decomp_check(part, variant, a, b, 0.3, 1)
        assert rep.gap <= 1e-10, part
        assert rep.branch_q == 0


def test_part1_adjudication_exactly_one_variant_closes():
    passing = []
    for variant in PART1_VARIANTS:
        rep = finite_decomp_check(1, variant, 0.3, 0.5, 0.3, 2)
        if rep.gap <= 1e-9:
            passing.append(variant)
    assert passing == ["rederived"]


def test_part1_rederived_passes_all_orders():
    for n in (1, 2, 3, 5):
        rep = finite_decomp_check(1, "rederived", 0.3, 0.5, 0.3, n)
        assert rep.gap <= 1e-10
        assert rep.deriv_gap <= 1e-7


def test_part1_statement_and_proof_fail_for_n2():
    for variant in ("statement", "proof"):
        rep = finite_decomp_check(1, variant, 0.3, 0.5, 0.3, 2)
        assert rep.gap > 1e-3


def test_parts_2_and_3_pass_as_stated():
    for part in (2, 3):
        for n in (1, 2, 3, 5):
            rep = finite_decomp_check(part, "statement", 0.3, 0.5, 0.3, n)
            assert rep.gap <= 1e-10, (part, n)
            assert rep.deriv_gap <= 1e-7


def test_part4_complex_terms_sum_real_and_close():
    for n in (1, 2, 3, 5):
        rep = finite_decomp_check(4, "statement", 2.0, 0.4, 0.5, n)
        assert rep.im_residual <= 1e-10
        assert rep.gap <= 1e-9
        assert rep.branch_q == 0
        assert rep.deriv_gap <= 1e-7


def test_finite_decomp_guards():
    lo, hi = safe_beta_range(2)
    assert hi == pytest.approx(math.pi / 8)
    with pytest.raises(DomainConstraintError):
        finite_decomp_check(2, "statement", 0.3, 0.5, 0.45, 2)  # beta too big
    with pytest.raises(ConfigError):
        finite_decomp_check(1, "rederived", 0.3, 0.5, 0.3, 0)  # n >= 1
    with pytest.raises(ValueError):
        finite_decomp_check(1, "published", 0.3, 0.5, 0.3, 2)
    with pytest.raises(ValueError):
        finite_decomp_check(7, "statement", 0.3, 0.5, 0.3, 2)


def test_branch_offset_is_constant_on_part3_box():
    # part 3 at n >= 2 needs a nonzero but box-constant branch multiple
    qs = set()
    for i in range(5):
        for k in range(5):
            a = 0.25 + 0.2 * i / 4
            b = 0.35 + 0.3 * k / 4
            rep = finite_decomp_check(3, "statement", a, b, 0.3, 3)
            assert rep.gap <= 1e-10
            qs.add(rep.branch_q)
    assert len(qs) == 1
