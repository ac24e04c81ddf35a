"""Rotation rules between the three graph equations, with parity gating.

Substituting imaginary arguments maps solutions of one graph PDE to another:

  rule 2.1:  g(x, y) = f(ix, iy)   (f even in both) or -f(ix, iy) (f odd in
             both)  -- Euclidean graph -> spacelike graph, and conversely;
  rule 2.2:  h(y, z) = f(y, iz)    (f even in the 2nd variable)
             inverse: f(x, y) = h(x, iy) for h even in its 2nd variable;
  rule 2.3:  h(y, z) = -i f(z, iy) (f odd in the 2nd variable)
             inverse: f(x, y) = -i h(iy, x) for h odd in its 1st variable.

Without the parity hypothesis the rotated field is genuinely complex (the
rotated helicoid atan(iz/y) = i atanh(z/y) is the canonical example), so the
public transforms measure parity numerically before constructing the output
and verify realness of the result on a probe set.  ``wick_raw`` exposes the
ungated complex rotation for exhibiting exactly that failure mode.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .catalog import HeightField
from .errors import ParityError, ZmcForgeError
from .jets import imag_magnitude, real_part, seed_x, seed_y

__all__ = [
    "ParityProfile",
    "parity_profile",
    "wick_mse_to_zmc",
    "wick_mse_to_bie_even",
    "wick_bie_to_mse_even",
    "wick_mse_to_bie_odd",
    "wick_bie_to_mse_odd",
    "wick_raw",
    "realness_probe",
    "WICK_RULES",
    "PARITY_TOL",
    "REALNESS_GUARD",
]

PARITY_TOL = 1e-10      # asymmetry residual below which a tag is assigned
REALNESS_TOL = 1e-10    # probe-level |Im| ceiling for calling a rotation real
REALNESS_GUARD = 1e-8   # per-evaluation |Im| ceiling for a realified field
_PROBE_RADIUS = 0.5     # parity behaviour is guaranteed near the origin
_PROBE_PAIRS = 64


@dataclass(frozen=True)
class ParityProfile:
    """Measured per-variable parity with the supporting asymmetry residuals."""

    tags: tuple                 # ('even'|'odd'|'neither') per variable
    max_asymmetry: tuple        # residual of the assigned tag per variable
    n_pairs: tuple              # probe pairs actually evaluated per variable

    def is_even_even(self) -> bool:
        return self.tags == ("even", "even")

    def is_odd_odd(self) -> bool:
        return self.tags == ("odd", "odd")


def parity_profile(hf: HeightField, n_probes: int = _PROBE_PAIRS,
                   seed: int = 2024, tol: float = PARITY_TOL,
                   radius: float = _PROBE_RADIUS) -> ParityProfile:
    """Measure evenness/oddness of a field in each variable separately.

    Probes are reflection pairs inside a ball about the origin, seeded
    deterministically; pairs whose reflection leaves the domain are skipped.
    A tag is assigned only when the corresponding asymmetry residual stays
    below ``tol`` on every surviving pair.
    """
    rng = random.Random(seed)
    even_res = [0.0, 0.0]
    odd_res = [0.0, 0.0]
    counts = [0, 0]
    attempts = 0
    while min(counts) < n_probes and attempts < 40 * n_probes:
        attempts += 1
        x = rng.uniform(-radius, radius)
        y = rng.uniform(-radius, radius)
        if x * x + y * y > radius * radius:
            continue
        for var in (0, 1):
            if counts[var] >= n_probes:
                continue
            rx, ry = (-x, y) if var == 0 else (x, -y)
            if not (hf.domain(x, y) and hf.domain(rx, ry)):
                continue
            try:
                f0 = hf.value(x, y)
                f1 = hf.value(rx, ry)
            except ZmcForgeError:
                continue
            even_res[var] = max(even_res[var], abs(f1 - f0))
            odd_res[var] = max(odd_res[var], abs(f1 + f0))
            counts[var] += 1
    if min(counts) < max(8, n_probes // 4):
        raise ParityError(
            f"too few usable reflection pairs for {hf.id!r}: {tuple(counts)}")

    tags = []
    asym = []
    for var in (0, 1):
        if even_res[var] <= tol:
            tags.append("even")
            asym.append(even_res[var])
        elif odd_res[var] <= tol:
            tags.append("odd")
            asym.append(odd_res[var])
        else:
            tags.append("neither")
            asym.append(min(even_res[var], odd_res[var]))
    return ParityProfile(tuple(tags), tuple(asym), tuple(counts))


# -- raw (ungated) rotations --------------------------------------------------

def _raw_fn(hf: HeightField, rule: str):
    if rule == "2.1-even":
        return lambda jx, jy: hf.fn(1j * jx, 1j * jy)
    if rule == "2.1-odd":
        return lambda jx, jy: -hf.fn(1j * jx, 1j * jy)
    if rule == "2.2":
        return lambda jy, jz: hf.fn(jy, 1j * jz)
    if rule == "2.2-inv":
        return lambda jx, jy: hf.fn(jx, 1j * jy)
    if rule == "2.3":
        return lambda jy, jz: -1j * hf.fn(jz, 1j * jy)
    if rule == "2.3-inv":
        return lambda jx, jy: -1j * hf.fn(1j * jy, jx)
    raise ValueError(f"unknown rotation rule {rule!r}")


WICK_RULES = ("2.1-even", "2.1-odd", "2.2", "2.2-inv", "2.3", "2.3-inv")


def wick_raw(hf: HeightField, rule: str) -> HeightField:
    """The bare argument-rotation, complex-valued, with no parity gate.

    The returned field evaluates the analytic continuation as-is; use
    :func:`realness_probe` on it to measure how far from real it is.
    """
    fn = _raw_fn(hf, rule)

    def domain(x, y):
        try:
            fn(seed_x(x), seed_y(y))
            return True
        except ZmcForgeError:
            return False

    return HeightField(f"{hf.id}~wick{rule}", fn, domain,
                       ("neither", "neither"), "none", params=hf.params)


def realness_probe(hf: HeightField, points) -> float:
    """Max |Im| over all jet components of ``hf`` at the given points;
    points where evaluation fails are skipped."""
    worst = 0.0
    for (x, y) in points:
        try:
            j = hf.jet(x, y)
        except ZmcForgeError:
            continue
        worst = max(worst, imag_magnitude(j))
    return worst


def _ball_grid(radius: float = _PROBE_RADIUS, n: int = 9):
    for i in range(n):
        for k in range(n):
            yield (-radius + 2 * radius * (i + 0.5) / n,
                   -radius + 2 * radius * (k + 0.5) / n)


def _realified(raw: HeightField, new_id: str, pde: str) -> HeightField:
    """Wrap a verified-real rotation so it evaluates to real jets, guarding
    every real evaluation against leaving the locus where the rotation is
    real.  Complex seeds (a further rotation's analytic continuation) pass
    through unguarded and unstripped."""
    def fn(ja, jb):
        j = raw.fn(ja, jb)
        if ja.is_complex() or jb.is_complex():
            return j
        m = imag_magnitude(j)
        if m > REALNESS_GUARD:
            raise ParityError(
                f"{new_id}: rotated value is not real at this point "
                f"(|Im| = {m:.3e})")
        return real_part(j)

    def domain(a, b):
        try:
            fn(seed_x(a), seed_y(b))
            return True
        except ZmcForgeError:
            return False

    return HeightField(new_id, fn, domain, ("neither", "neither"), pde,
                       params=raw.params)


def _gated(hf: HeightField, rule: str, pde: str, needed: str,
           enforce_parity: bool, parity_seed: int) -> HeightField:
    """Common path: parity gate, raw rotation, realness probe, realify."""
    if enforce_parity:
        prof = parity_profile(hf, seed=parity_seed)
        ok = {
            "2.1-even": prof.is_even_even(),
            "2.1-odd": prof.is_odd_odd(),
            "2.2": prof.tags[1] == "even",
            "2.2-inv": prof.tags[1] == "even",
            "2.3": prof.tags[1] == "odd",
            "2.3-inv": prof.tags[0] == "odd",
        }[rule]
        if not ok:
            raise ParityError(
                f"field {hf.id!r} has parity {prof.tags}, but rule {rule} "
                f"needs {needed}; without it the rotation is complex-valued "
                f"(as for the rotated helicoid atan(iz/y) = i*atanh(z/y))")
    raw = wick_raw(hf, rule)
    # The rotated field is real only on its own (possibly smaller) domain,
    # e.g. rule 2.3 outputs live inside a cone.  A rotation counts as real
    # when enough probe points evaluate with rounding-level |Im|; a parity
    # violation pushes |Im| to O(1) on the whole ball, leaving none.
    n_real = 0
    for (px, py) in _ball_grid():
        try:
            j = raw.fn(seed_x(px), seed_y(py))
        except ZmcForgeError:
            continue
        if imag_magnitude(j) <= REALNESS_TOL:
            n_real += 1
    if n_real < 8:
        raise ParityError(
            f"rotation of {hf.id!r} by rule {rule} is not real on any open "
            f"probe neighbourhood ({n_real} real points of the ball grid); "
            f"check the parity hypothesis (rotated-helicoid failure mode)")
    return _realified(raw, f"{hf.id}~{rule}", pde)


def wick_mse_to_zmc(hf: HeightField, enforce_parity: bool = True,
                    parity_seed: int = 2024) -> HeightField:
    """Euclidean-graph solution -> spacelike-graph solution (rule 2.1).

    Even/even input maps through f(ix, iy), odd/odd through -f(ix, iy);
    applying the rule twice recovers the input (the stated converse).
    """
    prof = parity_profile(hf, seed=parity_seed)
    if prof.is_even_even():
        rule = "2.1-even"
    elif prof.is_odd_odd():
        rule = "2.1-odd"
    else:
        if enforce_parity:
            raise ParityError(
                f"field {hf.id!r} has parity {prof.tags}; rule 2.1 needs "
                f"(even, even) or (odd, odd) -- otherwise the rotation is "
                f"complex-valued (rotated-helicoid failure mode)")
        rule = "2.1-even"
    return _gated(hf, rule, "ZMC", "(even, even) or (odd, odd)",
                  False, parity_seed)


def wick_mse_to_bie_even(hf: HeightField, enforce_parity: bool = True,
                         parity_seed: int = 2024) -> HeightField:
    """f(y, iz) for f even in its second variable (rule 2.2)."""
    return _gated(hf, "2.2", "BIE", "evenness in the 2nd variable",
                  enforce_parity, parity_seed)


def wick_bie_to_mse_even(hf: HeightField, enforce_parity: bool = True,
                         parity_seed: int = 2024) -> HeightField:
    """Inverse of rule 2.2: h(x, iy) for h even in its second variable."""
    return _gated(hf, "2.2-inv", "MSE", "evenness in the 2nd variable",
                  enforce_parity, parity_seed)


def wick_mse_to_bie_odd(hf: HeightField, enforce_parity: bool = True,
                        parity_seed: int = 2024) -> HeightField:
    """-i f(z, iy) for f odd in its second variable (rule 2.3)."""
    return _gated(hf, "2.3", "BIE", "oddness in the 2nd variable",
                  enforce_parity, parity_seed)


def wick_bie_to_mse_odd(hf: HeightField, enforce_parity: bool = True,
                        parity_seed: int = 2024) -> HeightField:
    """Inverse of rule 2.3: -i h(iy, x) for h odd in its first variable."""
    return _gated(hf, "2.3-inv", "MSE", "oddness in the 1st variable",
                  enforce_parity, parity_seed)
