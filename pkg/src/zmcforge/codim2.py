"""Graph immersions into Lorentz-Minkowski 4-space and their expansion scalars.

Three immersion shapes are supported (metric diag(+, +, +, -), coordinates
(x, y, z, w) with w timelike):

    F(x, y) = (x, y, f(x, y), 0)            always spacelike;
    G(x, y) = (0, y, x, g(x, y))            spacelike iff gx^2 + gy^2 < 1;
    H(y, z) = (0, h(y, z), z, y)            spacelike iff hy^2 > 1 + hz^2.

Each carries two independent lightlike normal fields nu1, nu2 and the
expansion scalars k1, k2 of the mean-curvature vector H = k1*nu1 + k2*nu2.
The scalars are computed as the displayed polynomial expressions; these
differ from the full inverse-metric trace by the (positive) metric
determinant and possibly an overall sign shared by both scalars, neither of
which moves the classification (sign of k1*k2 and joint vanishing).

Structural sign laws: k2 = -k1 for F and H, k2 = +k1 for G.  Hence every
F/H point is weakly untrapped and every G point is a star-surface by
construction; maximality is the extra condition k1 = 0.

Note on H's parameter order: H places its first parameter in the timelike
slot, which swaps the causal roles the two variables have in the graph
equation over the timelike plane.  A solution of that equation therefore
enters H with its arguments interchanged (see catalog.swap_variables); the
k1 polynomial of the swapped field at (y, z) coincides exactly with the
graph-equation residual of the original field at (z, y).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .catalog import HeightField
from .errors import DomainError, NotSpacelikeError

__all__ = [
    "Codim2Data",
    "Codim2Class",
    "CLASSIFY_TOL",
    "minkowski",
    "immerse_F",
    "immerse_G",
    "immerse_H",
    "immerse",
    "classify",
]

CLASSIFY_TOL = 1e-8  # |k| band for "vanishing"; jets put exact solutions well below


def minkowski(u, v) -> float:
    """Inner product of 4-vectors under diag(+, +, +, -)."""
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2] - u[3] * v[3]


@dataclass(frozen=True)
class Codim2Data:
    """Induced metric, lightlike normals, and expansion scalars at a point."""

    point: tuple
    immersion_kind: str          # 'F' | 'G' | 'H'
    induced_metric: tuple        # ((g11, g12), (g12, g22))
    nu1: tuple                   # 4-vector
    nu2: tuple                   # 4-vector
    k1: float
    k2: float
    nu_future: tuple             # measured sign of each normal's timelike part

    def metric_det(self) -> float:
        (a, b), (_, c) = self.induced_metric
        return a * c - b * b

    def lightlike_defect(self) -> float:
        """max |<nu_i, nu_i>|; zero for exact lightlike normals."""
        return max(abs(minkowski(self.nu1, self.nu1)),
                   abs(minkowski(self.nu2, self.nu2)))


@dataclass(frozen=True)
class Codim2Class:
    """Pointwise classification with its tolerance band."""

    kind: str      # 'maximal' | 'weakly_untrapped' | 'star_surface'
                   # | 'weakly_untrapped_and_star'
    product: float  # k1 * k2
    tol: float


def classify(k1: float, k2: float, tol: float = CLASSIFY_TOL) -> Codim2Class:
    """maximal iff both scalars vanish (within tol); weakly untrapped iff
    k1*k2 <= tol^2; star iff k1*k2 >= -tol^2; the overlap gets its own tag."""
    prod = k1 * k2
    band = tol * tol
    if abs(k1) <= tol and abs(k2) <= tol:
        return Codim2Class("maximal", prod, tol)
    wu = prod <= band
    st = prod >= -band
    if wu and st:
        return Codim2Class("weakly_untrapped_and_star", prod, tol)
    if wu:
        return Codim2Class("weakly_untrapped", prod, tol)
    return Codim2Class("star_surface", prod, tol)


def immerse_F(f: HeightField, x: float, y: float) -> Codim2Data:
    """Euclidean graph immersed flat into the w = 0 slice.

    k1 = (1+fy^2) fxx + (1+fx^2) fyy - 2 fx fy fxy = -k2; this is exactly
    the Euclidean graph-equation residual, so solutions are maximal points.
    """
    if not f.domain(x, y):
        raise DomainError(f"({x}, {y}) outside domain of {f.id!r}")
    j = f.jet(x, y)
    fx, fy = j.dx, j.dy
    w = math.sqrt(1.0 + fx * fx + fy * fy)
    nu1 = (fx, fy, -1.0, w)
    nu2 = (-fx, -fy, 1.0, w)
    metric = ((1.0 + fx * fx, fx * fy), (fx * fy, 1.0 + fy * fy))
    k1 = (1.0 + fy * fy) * j.dxx + (1.0 + fx * fx) * j.dyy - 2.0 * fx * fy * j.dxy
    return Codim2Data((x, y), "F", metric, nu1, nu2, k1, -k1,
                      (w > 0.0, w > 0.0))


def immerse_G(g: HeightField, x: float, y: float) -> Codim2Data:
    """Spacelike graph over the spacelike plane, height in the timelike slot.

    k1 = (1-gy^2) gxx + (1-gx^2) gyy + 2 gx gy gxy = +k2; this is exactly
    the spacelike graph-equation residual.
    """
    j = g.jet(x, y)
    gx, gy = j.dx, j.dy
    s = 1.0 - gy * gy - gx * gx
    if s <= 0.0:
        raise NotSpacelikeError(
            f"G not spacelike at ({x}, {y}): gx^2+gy^2 = {gx*gx+gy*gy:.6f} >= 1")
    rad = math.sqrt(s)
    nu1 = (rad, gy, gx, 1.0)
    nu2 = (-rad, gy, gx, 1.0)
    metric = ((1.0 - gx * gx, -gx * gy), (-gx * gy, 1.0 - gy * gy))
    k1 = (1.0 - gy * gy) * j.dxx + (1.0 - gx * gx) * j.dyy + 2.0 * gx * gy * j.dxy
    return Codim2Data((x, y), "G", metric, nu1, nu2, k1, k1, (True, True))


def immerse_H(h: HeightField, y: float, z: float) -> Codim2Data:
    """Spacelike graph with the first parameter in the timelike slot.

    k1 = (1+hz^2) hyy - (1-hy^2) hzz - 2 hy hz hyz = -k2.  The stated
    second normal has timelike component -hy, which is past-pointing
    wherever hy > 0; the measured orientation is recorded in ``nu_future``
    without altering the formulas.
    """
    j = h.jet(y, z)
    hy, hz = j.dx, j.dy
    s = hy * hy - 1.0 - hz * hz
    if s <= 0.0:
        raise NotSpacelikeError(
            f"H not spacelike at ({y}, {z}): hy^2 = {hy*hy:.6f} <= 1 + hz^2 "
            f"= {1.0 + hz*hz:.6f}")
    rad = math.sqrt(s)
    nu1 = (rad, 1.0, -hz, hy)
    nu2 = (rad, -1.0, hz, -hy)
    metric = ((hy * hy - 1.0, hy * hz), (hy * hz, hz * hz + 1.0))
    k1 = (1.0 + hz * hz) * j.dxx - (1.0 - hy * hy) * j.dyy - 2.0 * hy * hz * j.dxy
    return Codim2Data((y, z), "H", metric, nu1, nu2, k1, -k1,
                      (hy > 0.0, -hy > 0.0))


_IMMERSIONS = {"F": immerse_F, "G": immerse_G, "H": immerse_H}


def immerse(kind: str, hf: HeightField, a: float, b: float) -> Codim2Data:
    """Dispatch on immersion kind ('F', 'G', or 'H')."""
    try:
        fn = _IMMERSIONS[kind]
    except KeyError:
        raise ValueError(f"unknown immersion kind {kind!r}") from None
    return fn(hf, a, b)
