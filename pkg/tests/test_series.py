"""Arctangent lattice series: closed form vs paired partial sums, the tail
bound's empirical domination, regrouping, and branch bookkeeping."""

import math
import random

import pytest

from zmcforge.errors import ConfigError, PoleError
from zmcforge.series import (
    branch_offset,
    er_closed,
    er_partial,
    er_regroup_finite,
    er_tail_bound,
)

# 50-digit evaluation of atan(tanh(1)*cot(1)), frozen
ER_CLOSED_1_1 = 0.45482023330994990478137599419178568357071681834279


def test_closed_form_trivia():
    assert er_closed(0.0, 1.0) == 0.0
    assert abs(er_closed(1.0, math.pi / 2)) <= 1e-15  # cot(pi/2) = 0
    assert abs(er_closed(1.0, 1.0) - ER_CLOSED_1_1) <= 1e-15


def test_closed_form_pole():
    with pytest.raises(PoleError):
        er_closed(1.0, math.pi)
    with pytest.raises(PoleError):
        er_closed(1.0, 0.0)


def test_partial_zero_a():
    ev = er_partial(0.0, 1.0, 5)
    assert ev.value == 0.0 and ev.tail_bound == 0.0
    assert ev.terms_policy == "paired-bilateral"


def test_partial_converges_to_closed_form_within_tail():
    for n in (10, 100, 10_000, 1_000_000):
        ev = er_partial(1.0, 1.0, n)
        assert abs(ev.value - ER_CLOSED_1_1) <= ev.tail_bound


def test_partial_pole_detection():
    with pytest.raises(PoleError):
        er_partial(1.0, 0.0, 10)          # k = 0 term pole
    with pytest.raises(PoleError):
        er_partial(1.0, -3 * math.pi, 10)  # k = 3 term pole


def test_tail_bound_dominates_true_remainder_on_random_inputs():
    rng = random.Random(100)
    for _ in range(100):
        a = rng.uniform(-3, 3)
        b = rng.uniform(0.1, math.pi - 0.1)
        closed = er_closed(a, b)
        for n in (10, 100, 1000):
            ev = er_partial(a, b, n)
            assert abs(ev.value - closed) <= ev.tail_bound


def test_tail_bound_validity_condition():
    with pytest.raises(ConfigError):
        er_tail_bound(1.0, 40.0, 1)  # N too small for this |b|
    assert er_tail_bound(0.0, 1.0, 10) == 0.0


def test_convergence_is_first_order_after_pairing():
    rng = random.Random(101)
    ratios = []
    for _ in range(40):
        a = rng.uniform(0.3, 3.0) * rng.choice((1, -1))
        b = rng.uniform(0.2, math.pi - 0.2)
        closed = er_closed(a, b)
        g1 = abs(er_partial(a, b, 2000).value - closed)
        g2 = abs(er_partial(a, b, 4000).value - closed)
        if g2 > 1e-13:
            ratios.append(g1 / g2)
    ratios.sort()
    median = ratios[len(ratios) // 2]
    assert 1.8 <= median <= 2.2


def test_regroup_n1_is_exactly_the_closed_form():
    for (a, b) in [(1.0, 1.0), (-2.0, 0.4), (0.3, 2.8)]:
        assert er_regroup_finite(a, b, 1) == er_closed(a, b)


def test_regroup_zero_a():
    for n in (1, 2, 5):
        assert er_regroup_finite(0.0, 1.0, n) == 0.0


def test_regroup_matches_deep_partial_sum():
    closed = er_partial(1.0, 1.0, 1_000_000)
    for n in (2, 3, 5):
        got = er_regroup_finite(1.0, 1.0, n)
        q, gap = branch_offset(got, closed.value)
        assert q == 0
        assert gap <= closed.tail_bound + 1e-12


def test_regroup_is_integer_multiple_of_pi_from_closed_form():
    # measured: the multiple is 0 across the whole principal cell (0, pi)
    rng = random.Random(102)
    for _ in range(100):
        a = rng.uniform(-3, 3)
        b = rng.uniform(0.05, math.pi - 0.05)
        n = rng.choice((2, 3, 5))
        q, gap = branch_offset(er_regroup_finite(a, b, n), er_closed(a, b))
        assert gap <= 1e-10
        assert q == 0


def test_complex_extension_small_imaginary_parts():
    rng = random.Random(103)
    for _ in range(20):
        a = complex(rng.uniform(-2, 2), rng.uniform(-0.2, 0.2))
        b = complex(rng.uniform(0.3, math.pi - 0.3), rng.uniform(-0.2, 0.2))
        closed = er_closed(a, b)
        ev = er_partial(a, b, 10_000)
        assert abs(ev.value - closed) <= ev.tail_bound
        assert ev.im_residual is not None


def test_complex_typed_real_inputs_stay_on_complex_path():
    # complex inputs with zero imaginary part must not crash; they return
    # complex results consistent with the real evaluation
    closed = er_closed(complex(1, 0), 1.0)
    assert isinstance(closed, complex)
    assert abs(closed - ER_CLOSED_1_1) <= 1e-15
    ev = er_partial(complex(1, 0), 1.0, 1000)
    assert ev.im_residual == 0.0
    assert abs(ev.value - er_partial(1.0, 1.0, 1000).value) <= 1e-15


def test_branch_offset_trivia():
    assert branch_offset(1.25, 1.25) == (0, 0.0)
    q, gap = branch_offset(0.5 + math.pi, 0.5)
    assert q == 1 and gap <= 1e-15
    q, gap = branch_offset(0.5 - 2 * math.pi, 0.5)
    assert q == -2 and gap <= 1e-15


def test_partial_is_deterministic():
    a = er_partial(1.234, 0.777, 50_000).value
    b = er_partial(1.234, 0.777, 50_000).value
    assert a == b
