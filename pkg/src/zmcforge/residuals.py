"""Left-hand sides of the three graph PDEs, causal typing, and FD cross-checks.

The residual operators read only the derivative slots of a jet, so they are
invariant under adding a constant to the height.  Over the spacelike plane
the graph equation is

    (1 - g_x^2) g_yy + 2 g_x g_y g_xy + (1 - g_y^2) g_xx,

over the Euclidean plane

    (1 + f_x^2) f_yy - 2 f_x f_y f_xy + (1 + f_y^2) f_xx,

and over the timelike plane (variables (y, z), first jet slot = y)

    (1 + h_y^2) h_zz - 2 h_y h_z h_yz + (h_z^2 - 1) h_yy.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .catalog import HeightField
from .jets import Jet2

__all__ = [
    "residual_mse",
    "residual_zmc",
    "residual_bie",
    "RESIDUAL_OF",
    "residual_for",
    "CausalCharacter",
    "causal_character_graph",
    "FdReport",
    "fd_crosscheck",
]


def residual_mse(j: Jet2):
    """(1 + fx^2) fyy - 2 fx fy fxy + (1 + fy^2) fxx."""
    fx, fy = j.dx, j.dy
    return (1.0 + fx * fx) * j.dyy - 2.0 * fx * fy * j.dxy + (1.0 + fy * fy) * j.dxx


def residual_zmc(j: Jet2):
    """(1 - gx^2) gyy + 2 gx gy gxy + (1 - gy^2) gxx."""
    gx, gy = j.dx, j.dy
    return (1.0 - gx * gx) * j.dyy + 2.0 * gx * gy * j.dxy + (1.0 - gy * gy) * j.dxx


def residual_bie(j: Jet2):
    """(1 + hy^2) hzz - 2 hy hz hyz + (hz^2 - 1) hyy  (jet slots = (y, z))."""
    hy, hz = j.dx, j.dy
    return (1.0 + hy * hy) * j.dyy - 2.0 * hy * hz * j.dxy + (hz * hz - 1.0) * j.dxx


RESIDUAL_OF = {"MSE": residual_mse, "ZMC": residual_zmc, "BIE": residual_bie}


def residual_for(hf: HeightField, x, y):
    """Residual of a field's expected PDE at a point (raises on 'none' tag)."""
    if hf.expected_pde not in RESIDUAL_OF:
        raise ValueError(f"field {hf.id!r} carries no expected PDE")
    return RESIDUAL_OF[hf.expected_pde](hf.jet(x, y))


@dataclass(frozen=True)
class CausalCharacter:
    """Pointwise causal type of a graph with the quantity that decided it."""

    kind: str        # 'spacelike' | 'timelike' | 'lightlike'
    indicator: float  # xy-graph: gx^2+gy^2 - 1;  yz-graph: 1 + hy^2 - hz^2
    tol: float


def causal_character_graph(j: Jet2, kind: str, tol: float = 1e-9) -> CausalCharacter:
    """Classify a real jet as spacelike/timelike/lightlike.

    kind='xy-graph': spacelike iff gx^2 + gy^2 < 1 (strictly, by tol).
    kind='yz-graph': spacelike iff 1 + hy^2 - hz^2 < 0 (strictly, by tol);
    the lightlike band is the tol-neighbourhood of the degenerate value.
    """
    if kind == "xy-graph":
        q = j.dx * j.dx + j.dy * j.dy - 1.0
        if q < -tol:
            return CausalCharacter("spacelike", q, tol)
        if q > tol:
            return CausalCharacter("timelike", q, tol)
        return CausalCharacter("lightlike", q, tol)
    if kind == "yz-graph":
        q = 1.0 + j.dx * j.dx - j.dy * j.dy
        if q < -tol:
            return CausalCharacter("spacelike", q, tol)
        if q > tol:
            return CausalCharacter("timelike", q, tol)
        return CausalCharacter("lightlike", q, tol)
    raise ValueError(f"unknown graph kind {kind!r}")


# -- finite-difference cross-check -------------------------------------------

@dataclass(frozen=True)
class FdReport:
    """Jet residual vs 5-point finite-difference residual at one point."""

    x: float
    y: float
    h_step: float
    jet_residual: float
    fd_residual: float
    gap: float


def _fd_jet(hf: HeightField, x: float, y: float, h: float) -> Jet2:
    """Second-order jet assembled purely from function values.

    First derivatives use the 4th-order 5-point stencil; pure second
    derivatives the 4th-order 5-point stencil; the mixed derivative is the
    tensor product of two first-derivative stencils.
    """
    def f(a, b):
        return hf.value(a, b)

    def d1(g, t, h):
        return (g(t - 2 * h) - 8 * g(t - h) + 8 * g(t + h) - g(t + 2 * h)) / (12 * h)

    def d2(g, t, h):
        return (-g(t - 2 * h) + 16 * g(t - h) - 30 * g(t)
                + 16 * g(t + h) - g(t + 2 * h)) / (12 * h * h)

    fx = d1(lambda t: f(t, y), x, h)
    fy = d1(lambda t: f(x, t), y, h)
    fxx = d2(lambda t: f(t, y), x, h)
    fyy = d2(lambda t: f(x, t), y, h)
    fxy = d1(lambda t: d1(lambda u: f(t, u), y, h), x, h)
    return Jet2(f(x, y), fx, fy, fxx, fxy, fyy)


def fd_crosscheck(hf: HeightField, point, h_step: float = 1e-4) -> FdReport:
    """Compare the jet residual against a residual built from 5-point
    central finite differences of plain function values."""
    x, y = point
    # the stencil reaches 2*h in each direction plus the mixed offsets
    for ex in (-4 * h_step, 0.0, 4 * h_step):
        for ey in (-4 * h_step, 0.0, 4 * h_step):
            if not hf.domain(x + ex, y + ey):
                raise DomainError(
                    f"point {(x, y)} too close to the domain boundary for "
                    f"h={h_step}")
    residual = RESIDUAL_OF.get(hf.expected_pde, residual_mse)
    jr = residual(hf.jet(x, y))
    fr = residual(_fd_jet(hf, x, y, h_step))
    return FdReport(x, y, h_step, jr, fr, abs(jr - fr))
