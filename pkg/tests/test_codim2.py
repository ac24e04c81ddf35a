"""Immersions into Lorentz-Minkowski 4-space: normals, expansion scalars,
structural sign laws, and the pointwise classification."""

import math
import random

import pytest

from zmcforge.catalog import (
    DilationSpec,
    FamilyParam,
    HeightField,
    dilate,
    get_field,
    swap_variables,
)
from zmcforge.codim2 import (
    classify,
    immerse,
    immerse_F,
    immerse_G,
    immerse_H,
    minkowski,
)
from zmcforge.decompositions import chi_summand_field, psi_summand_field
from zmcforge.errors import DomainError, NotSpacelikeError
from zmcforge.jets import Jet2
from zmcforge.residuals import residual_bie, residual_mse, residual_zmc


def _constant_field(c=0.0):
    return HeightField("const", lambda jx, jy: Jet2(c) + 0.0 * jx + 0.0 * jy,
                       lambda x, y: True, ("even", "even"), "none")


def _linear_field(a, b):
    return HeightField("linear", lambda jx, jy: a * jx + b * jy,
                       lambda x, y: True, ("neither", "neither"), "none")


def test_plane_is_maximal_under_F():
    data = immerse_F(_constant_field(2.0), 0.3, -0.7)
    assert data.k1 == 0.0 and data.k2 == 0.0
    assert classify(data.k1, data.k2).kind == "maximal"
    assert data.lightlike_defect() <= 1e-15
    assert all(data.nu_future)


def test_constant_is_maximal_under_G():
    data = immerse_G(_constant_field(), 0.2, 0.1)
    assert data.k1 == 0.0 and data.k2 == 0.0
    assert classify(data.k1, data.k2).kind == "maximal"


def test_linear_steep_field_under_H():
    # h(y, z) = 2y: hy^2 = 4 > 1 = 1 + hz^2, flat, so maximal
    data = immerse_H(_linear_field(2.0, 0.0), 0.5, 0.5)
    assert data.k1 == 0.0 and data.k2 == 0.0
    assert classify(data.k1, data.k2).kind == "maximal"
    assert data.lightlike_defect() <= 1e-15


def test_structural_sign_laws():
    rng = random.Random(41)
    scherk = get_field("scherk")
    psi = get_field("psi", theta=0.7)
    for _ in range(100):
        x, y = rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)
        if scherk.domain(x, y):
            d = immerse_F(scherk, x, y)
            assert d.k2 == -d.k1
        gx, gy = rng.uniform(-0.4, 0.4), rng.uniform(1.3, 1.9)
        d = immerse_G(psi, gx, gy)
        assert d.k2 == d.k1
    d = immerse_H(_linear_field(3.0, 0.5), 0.1, 0.2)
    assert d.k2 == -d.k1


def test_lightlike_normals_and_metric():
    scherk = get_field("scherk")
    d = immerse_F(scherk, 0.8, -0.4)
    assert abs(minkowski(d.nu1, d.nu1)) <= 1e-14
    assert abs(minkowski(d.nu2, d.nu2)) <= 1e-14
    # the two normals are independent: their product is nonzero
    assert abs(minkowski(d.nu1, d.nu2)) > 0.1
    assert d.metric_det() > 0.0


def test_scherk_under_F_is_maximal():
    rng = random.Random(42)
    scherk = get_field("scherk")
    n = 0
    while n < 50:
        x, y = rng.uniform(-1.3, 1.3), rng.uniform(-1.3, 1.3)
        if not scherk.domain(x, y):
            continue
        n += 1
        d = immerse_F(scherk, x, y)
        assert abs(d.k1) <= 1e-9
        assert classify(d.k1, d.k2).kind == "maximal"


def test_dilated_helicoid_under_F_strictly_weakly_untrapped():
    d_field = dilate(get_field("helicoid"),
                     DilationSpec(k=1.2, m1=0.8, n1=0.5, m2=1.1, n2=-0.3))
    rng = random.Random(43)
    n = 0
    while n < 50:
        x, y = rng.uniform(-2, 2), rng.uniform(-2, 2)
        if not d_field.domain(x, y):
            continue
        n += 1
        d = immerse_F(d_field, x, y)
        cls = classify(d.k1, d.k2)
        assert cls.kind == "weakly_untrapped"
        assert cls.product < 0.0


def test_psi_under_G_is_maximal_on_spacelike_band():
    psi = get_field("psi", theta=0.7)
    rng = random.Random(44)
    for _ in range(50):
        x = rng.uniform(-0.5, 0.5)
        y = rng.uniform(1.2, 2.0) * rng.choice((1, -1))
        d = immerse_G(psi, x, y)
        assert abs(d.k1) <= 1e-9
        assert classify(d.k1, d.k2).kind == "maximal"


def test_lattice_summand_under_G_is_star():
    summand = psi_summand_field(FamilyParam(0.7), 1)
    rng = random.Random(45)
    n = 0
    while n < 50:
        x = rng.uniform(-1.5, 1.5)
        y = rng.uniform(0.8, 2.5) * rng.choice((1, -1))
        try:
            d = immerse_G(summand, x, y)
        except NotSpacelikeError:
            continue
        n += 1
        cls = classify(d.k1, d.k2)
        assert cls.kind == "star_surface"
        assert cls.product > 0.0


def test_G_requires_spacelike_gradient():
    psi = get_field("psi", theta=0.7)
    with pytest.raises(NotSpacelikeError):
        immerse_G(psi, 0.0, 0.2)  # near the axis the gradient exceeds 1


def test_chi_swapped_under_H_is_maximal():
    theta = 0.7
    chi = get_field("chi", theta=theta)
    chi_sw = swap_variables(chi)
    p = chi.params
    rng = random.Random(46)
    n = 0
    while n < 50:
        y = rng.uniform(0.15, 0.7) * rng.choice((1, -1))
        r = rng.uniform(0.35, 0.6)
        z = math.atanh(r * math.tanh(abs(y) * p.half_sin)) / p.full_sin_half
        z *= rng.choice((1, -1))
        if not chi.domain(y, z):
            continue
        n += 1
        d = immerse_H(chi_sw, z, y)  # swapped field takes (z, y)
        assert abs(d.k1) <= 1e-9
        assert classify(d.k1, d.k2).kind == "maximal"


def test_chi_as_written_under_H_is_not_maximal():
    # without the argument swap the spacelike locus carries k1 far from 0:
    # the immersion puts its first parameter in the timelike slot
    theta = 0.8
    chi = get_field("chi", theta=theta)
    rng = random.Random(47)
    found = 0
    for _ in range(40_000):
        y, z = rng.uniform(-3, 3), rng.uniform(-3, 3)
        if not chi.domain(y, z):
            continue
        try:
            d = immerse_H(chi, y, z)
        except NotSpacelikeError:
            continue
        found += 1
        assert abs(d.k1) > 1.0
        if found >= 20:
            break
    assert found >= 20


def test_soliton_summand_under_H_weakly_untrapped():
    sw = swap_variables(chi_summand_field(FamilyParam(0.7), 0))
    rng = random.Random(48)
    n = 0
    while n < 50:
        y = rng.uniform(-0.25, 0.25)
        z = rng.uniform(0.35, 0.95) * rng.choice((1, -1))
        if not sw.domain(y, z):
            continue
        try:
            d = immerse_H(sw, y, z)
        except NotSpacelikeError:
            continue
        n += 1
        cls = classify(d.k1, d.k2)
        assert cls.kind == "weakly_untrapped"
        assert cls.product < 0.0


def test_H_swap_bridge_equals_bie_residual():
    theta = 0.7
    chi = get_field("chi", theta=theta)
    chi_sw = swap_variables(chi)
    p = chi.params
    rng = random.Random(49)
    n = 0
    while n < 50:
        y = rng.uniform(0.15, 0.7)
        r = rng.uniform(0.35, 0.6)
        z = math.atanh(r * math.tanh(y * p.half_sin)) / p.full_sin_half
        if not chi.domain(y, z):
            continue
        n += 1
        k1 = immerse_H(chi_sw, z, y).k1
        bie = residual_bie(chi.jet(y, z))
        j = chi.jet(y, z)
        scale = (1 + j.dx ** 2 + j.dy ** 2) * (abs(j.dxx) + abs(j.dxy)
                                               + abs(j.dyy)) + 1.0
        assert abs(k1 - bie) <= 1e-12 * scale


def test_F_and_G_bridges_match_residual_polynomials():
    scherk = get_field("scherk")
    dil = dilate(scherk, DilationSpec(k=1.5, m1=0.9, n1=0.2, m2=0.8, n2=0.1))
    rng = random.Random(50)
    n = 0
    while n < 50:
        x, y = rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)
        if not dil.domain(x, y):
            continue
        n += 1
        j = dil.jet(x, y)
        assert abs(immerse_F(dil, x, y).k1 - residual_mse(j)) <= 1e-13
        try:
            g = immerse_G(dil, x, y)
        except NotSpacelikeError:
            continue
        assert abs(g.k1 - residual_zmc(j)) <= 1e-13


def test_classification_bands_and_rescaling():
    assert classify(0.0, 0.0).kind == "maximal"
    assert classify(1e-12, -1e-12).kind == "maximal"
    assert classify(2.0, -3.0).kind == "weakly_untrapped"
    assert classify(2.0, 3.0).kind == "star_surface"
    assert classify(2.0, 0.0).kind == "weakly_untrapped_and_star"
    for (k1, k2) in [(0.0, 0.0), (2.0, -3.0), (2.0, 3.0), (2.0, 0.0)]:
        base = classify(k1, k2).kind
        for lam in (0.5, 2.0, 10.0):
            assert classify(k1 / lam, k2 / lam).kind == base


def test_H_future_pointing_flags_recorded():
    up = immerse_H(_linear_field(2.0, 0.0), 0.0, 0.0)    # hy = +2
    down = immerse_H(_linear_field(-2.0, 0.0), 0.0, 0.0)  # hy = -2
    assert up.nu_future == (True, False)
    assert down.nu_future == (False, True)


def test_immersion_dispatch_and_domain_errors():
    scherk = get_field("scherk")
    assert immerse("F", scherk, 0.1, 0.1).immersion_kind == "F"
    with pytest.raises(ValueError):
        immerse("Q", scherk, 0.1, 0.1)
    with pytest.raises(DomainError):
        immerse_F(scherk, 2.0, 0.0)  # outside the principal sheet
    with pytest.raises(NotSpacelikeError):
        immerse_H(_linear_field(0.5, 0.0), 0.1, 0.1)