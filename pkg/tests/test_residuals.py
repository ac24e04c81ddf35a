"""Residual operators, causal typing, and the finite-difference cross-check."""

import math
import random

import pytest

from zmcforge.catalog import DilationSpec, dilate, get_field
from zmcforge.errors import DomainError
from zmcforge.jets import Jet2, seed_x, seed_y
from zmcforge.residuals import (
    causal_character_graph,
    fd_crosscheck,
    residual_bie,
    residual_mse,
    residual_zmc,
)


def test_zero_jet_is_flat_for_all_three():
    j = Jet2(0.0)
    assert residual_mse(j) == 0.0
    assert residual_zmc(j) == 0.0
    assert residual_bie(j) == 0.0


def test_paraboloid_at_origin():
    # f = x^2 + y^2: gradient 0, fxx = fyy = 2 at the origin
    j = (seed_x(0.0) ** 2) + (seed_y(0.0) ** 2)
    assert residual_mse(j) == 4.0
    assert residual_zmc(j) == 4.0


def test_bie_on_pure_z_square():
    # h = z^2 at any point: hy = 0, hz = 2z, hzz = 2 -> residual 2
    for z in (0.0, 0.7, -1.3):
        j = seed_y(z) ** 2
        assert residual_bie(j) == 2.0


def test_residual_is_affine_invariant_in_height():
    rng = random.Random(2)
    f = get_field("scherk")
    for _ in range(20):
        x, y = rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)
        if not f.domain(x, y):
            continue
        j = f.jet(x, y)
        shifted = j + 17.5
        assert residual_mse(shifted) == residual_mse(j)


def test_helicoid_satisfies_mse_at_1_1():
    j = get_field("helicoid").jet(1.0, 1.0)
    assert abs(residual_mse(j)) <= 1e-12


def test_causal_character_trivia():
    flat = Jet2(0.0)
    assert causal_character_graph(flat, "xy-graph").kind == "spacelike"
    assert causal_character_graph(flat, "yz-graph").kind == "timelike"
    steep = Jet2(0.0, 2.0, 0.0)
    assert causal_character_graph(steep, "xy-graph").kind == "timelike"
    edge = Jet2(0.0, 1.0, 0.0)
    assert causal_character_graph(edge, "xy-graph").kind == "lightlike"
    with pytest.raises(ValueError):
        causal_character_graph(flat, "zz-graph")


def test_chi_graph_spacelike_in_measured_band():
    # measured: inside the cone at ratio in [0.35, 0.6] with |y| in
    # [0.15, 0.7] the soliton graph is spacelike for all sampled angles
    rng = random.Random(11)
    for theta in (0.3, 0.7, 1.2):
        chi = get_field("chi", theta=theta)
        p = chi.params
        n = 0
        while n < 100:
            y = rng.uniform(0.15, 0.7) * rng.choice((1, -1))
            r = rng.uniform(0.35, 0.6)
            t = r * math.tanh(abs(y) * p.half_sin)
            z = math.atanh(t) / p.full_sin_half * rng.choice((1, -1))
            if not chi.domain(y, z):
                continue
            n += 1
            assert causal_character_graph(chi.jet(y, z),
                                          "yz-graph").kind == "spacelike"


def test_scaling_height_never_moves_spacelike_to_timelike():
    rng = random.Random(14)
    for _ in range(100):
        j = Jet2(0.0, rng.uniform(-2, 2), rng.uniform(-2, 2))
        c = rng.uniform(1e-3, 1.0 - 1e-9)
        before = causal_character_graph(j, "xy-graph").kind
        after = causal_character_graph(c * j, "xy-graph").kind
        if before == "spacelike":
            assert after == "spacelike"


def test_fd_crosscheck_scherk():
    rep = fd_crosscheck(get_field("scherk"), (0.3, 0.2), h_step=1e-4)
    assert rep.gap <= 1e-6
    assert abs(rep.jet_residual) <= 1e-12


def test_fd_crosscheck_helicoid():
    rep = fd_crosscheck(get_field("helicoid"), (1.0, 2.0), h_step=1e-4)
    assert abs(rep.jet_residual) <= 1e-6
    assert abs(rep.fd_residual) <= 1e-6


def test_fd_crosscheck_dilated_helicoid_nonzero_residual_still_agrees():
    d = dilate(get_field("helicoid"),
               DilationSpec(k=1.2, m1=0.8, n1=0.5, m2=1.1, n2=-0.3))
    rep = fd_crosscheck(d, (1.3, 0.7), h_step=1e-4)
    assert rep.gap <= 1e-6
    assert abs(rep.jet_residual) > 1e-3  # the dilation broke the equation


def test_fd_crosscheck_rejects_boundary_points():
    with pytest.raises(DomainError):
        fd_crosscheck(get_field("scherk"), (math.pi / 2 - 1e-5, 0.0),
                      h_step=1e-4)


def test_wick_consistency_of_residual_operators():
    # for g(x,y) = -f(ix, iy) with f odd-odd, the spacelike residual of g at
    # a real point continues the Euclidean residual of f at (ix, iy)
    phi = get_field("phi", theta=0.8)
    rng = random.Random(21)
    n = 0
    while n < 20:
        x, y = rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)
        if abs(y) < 0.1:
            continue
        try:
            g_jet = -1.0 * phi.fn(1j * seed_x(x), 1j * seed_y(y))
            f_jet = phi.fn(seed_x(1j * x), seed_y(1j * y))
        except Exception:
            continue
        n += 1
        lhs = residual_zmc(g_jet)
        rhs = residual_mse(f_jet)
        assert abs(lhs - rhs) <= 1e-8
