"""Rotation rules: parity gating, realness, catalog correspondences,
converses, and the complex-rotated-helicoid failure mode."""

import math
import random

import pytest

from zmcforge.catalog import get_field
from zmcforge.errors import ParityError
from zmcforge.residuals import residual_bie, residual_zmc
from zmcforge.wick import (
    parity_profile,
    realness_probe,
    wick_bie_to_mse_even,
    wick_bie_to_mse_odd,
    wick_mse_to_bie_even,
    wick_mse_to_bie_odd,
    wick_mse_to_zmc,
    wick_raw,
)


def test_parity_profiles():
    assert parity_profile(get_field("scherk-maximal")).tags == ("even", "even")
    assert parity_profile(get_field("scherk")).tags == ("even", "even")
    assert parity_profile(get_field("phi", theta=0.7)).tags == ("odd", "odd")
    assert parity_profile(get_field("helicoid")).tags == ("odd", "odd")
    prof = parity_profile(get_field("phi", theta=0.7))
    assert max(prof.max_asymmetry) <= 1e-10


def test_parity_profile_is_deterministic():
    a = parity_profile(get_field("scherk"), seed=99)
    b = parity_profile(get_field("scherk"), seed=99)
    assert a == b


def _max_gap(f, g, pts):
    return max(abs(f.value(*p) - g.value(*p)) for p in pts)


def _grid(lo, hi, n, skip_zero_y=False):
    pts = []
    for i in range(n):
        for k in range(n):
            x = lo + (hi - lo) * (i + 0.5) / n
            y = lo + (hi - lo) * (k + 0.5) / n
            if skip_zero_y and abs(y) < 0.05:
                continue
            pts.append((x, y))
    return pts


def test_rule21_scherk_to_scherk_maximal():
    out = wick_mse_to_zmc(get_field("scherk"))
    assert out.expected_pde == "ZMC"
    assert _max_gap(out, get_field("scherk-maximal"),
                    _grid(-1.2, 1.2, 9)) <= 1e-12


def test_rule21_phi_to_psi():
    theta = 0.9
    out = wick_mse_to_zmc(get_field("phi", theta=theta))
    psi = get_field("psi", theta=theta)
    assert _max_gap(out, psi, _grid(-1.0, 1.0, 9, skip_zero_y=True)) <= 1e-12


def test_constant_field_passes_through_both_rules():
    from zmcforge.catalog import HeightField
    from zmcforge.jets import Jet2
    const = HeightField("const", lambda jx, jy: Jet2(2.5) + 0.0 * (jx + jy),
                        lambda x, y: True, ("even", "even"), "MSE")
    assert parity_profile(const).tags == ("even", "even")
    for transform in (wick_mse_to_zmc, wick_mse_to_bie_even):
        out = transform(const)
        assert out.value(0.3, -0.4) == 2.5


def test_rule22_scherk_to_bi_soliton():
    out = wick_mse_to_bie_even(get_field("scherk"))
    assert out.expected_pde == "BIE"
    assert _max_gap(out, get_field("bi-soliton"), _grid(-1.2, 1.2, 9)) <= 1e-12


def test_rule23_phi_to_chi():
    theta = 0.9
    out = wick_mse_to_bie_odd(get_field("phi", theta=theta))
    chi = get_field("chi", theta=theta)
    pts = [p for p in _grid(0.2, 1.8, 12) if chi.domain(*p)
           and abs(math.tanh(p[1] * chi.params.full_sin_half))
           <= 0.9 * abs(math.tanh(p[0] * chi.params.half_sin))]
    assert len(pts) > 20
    assert _max_gap(out, chi, pts) <= 1e-12


def test_rule23_helicoid_gives_real_soliton_solution():
    out = wick_mse_to_bie_odd(get_field("helicoid"))
    rng = random.Random(6)
    n = 0
    while n < 30:
        z = rng.uniform(0.3, 2.0) * rng.choice((1, -1))
        y = rng.uniform(-0.85, 0.85) * abs(z)
        try:
            j = out.jet(y, z)
        except Exception:
            continue
        n += 1
        assert abs(j.v - math.atanh(y / z)) <= 1e-10
        assert abs(residual_bie(j)) <= 1e-9


def test_round_trips_recover_input():
    f0 = get_field("scherk")
    f2 = wick_bie_to_mse_even(wick_mse_to_bie_even(f0))
    assert _max_gap(f2, f0, _grid(-0.9, 0.9, 8)) <= 1e-12

    p0 = get_field("phi", theta=0.9)
    p2 = wick_bie_to_mse_odd(wick_mse_to_bie_odd(p0))
    assert _max_gap(p2, p0, _grid(-0.4, 0.4, 8, skip_zero_y=True)) <= 1e-12

    g2 = wick_mse_to_zmc(wick_mse_to_zmc(p0))
    assert _max_gap(g2, p0, _grid(-0.4, 0.4, 8, skip_zero_y=True)) <= 1e-12


def test_transform_outputs_satisfy_target_pde():
    theta = 0.9
    out = wick_mse_to_zmc(get_field("phi", theta=theta))
    worst = 0.0
    for p in _grid(-1.0, 1.0, 9, skip_zero_y=True):
        worst = max(worst, abs(residual_zmc(out.jet(*p))))
    assert worst <= 1e-8


def test_even_rule_on_odd_input_is_the_complex_helicoid():
    # ungated: the rotation atan(iz/y) = i atanh(z/y) is purely imaginary
    raw = wick_raw(get_field("helicoid"), "2.2")
    worst = realness_probe(raw, [(0.3, 0.2), (0.5, 0.4), (0.9, 0.6)])
    assert worst > 1e-3
    # gated: both the parity gate and the realness gate refuse
    with pytest.raises(ParityError):
        wick_mse_to_bie_even(get_field("helicoid"))
    with pytest.raises(ParityError):
        wick_mse_to_bie_even(get_field("helicoid"), enforce_parity=False)


def test_parity_error_message_cites_failure_mode():
    with pytest.raises(ParityError) as err:
        wick_mse_to_bie_even(get_field("helicoid"))
    assert "helicoid" in str(err.value)


def test_zero_field_maps_to_zero_under_rule23():
    phi = get_field("phi", theta=0.5)
    out = wick_mse_to_bie_odd(phi)
    # oddness forces a zero along z = 0
    assert abs(out.value(0.4, 0.0)) <= 1e-14
