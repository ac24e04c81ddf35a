"""Second-order forward-mode jets in two variables, over real or complex scalars.

A :class:`Jet2` carries a value together with its first derivatives (dx, dy)
and the three independent entries of the symmetric Hessian (dxx, dxy, dyy).
Arithmetic and the elementary functions propagate all six slots exactly via
the chain rule, so evaluating a height function on seed jets yields machine-
precision first and second partials in one pass.

All operations are pure.  Jets are immutable by convention: no function in
this package mutates a jet after construction.  Real and complex values share
the same code paths; complex evaluation uses principal branches throughout
(``cmath`` conventions), which keeps analytic continuations consistent across
composed expressions.

NaN/Inf policy: every operation validates its freshly built components and
raises a typed error instead of letting a non-finite value escape.
"""

from __future__ import annotations

import cmath
import math

from .errors import (
    BranchPointError,
    DomainError,
    NonFiniteError,
    PoleError,
)

__all__ = [
    "Jet2",
    "constant",
    "seed_x",
    "seed_y",
    "jet_apply",
    "ELEMENTARY",
    "complex_atan",
    "complex_atanh",
    "imag_magnitude",
    "real_part",
]

_isfinite = cmath.isfinite  # accepts float and complex


def _require_finite(v, what: str):
    if not _isfinite(v):
        raise NonFiniteError(f"non-finite value in {what}: {v!r}")
    return v


class Jet2:
    """Value plus first/second partials with respect to two variables."""

    __slots__ = ("v", "dx", "dy", "dxx", "dxy", "dyy")

    def __init__(self, v, dx=0.0, dy=0.0, dxx=0.0, dxy=0.0, dyy=0.0):
        self.v = v
        self.dx = dx
        self.dy = dy
        self.dxx = dxx
        self.dxy = dxy
        self.dyy = dyy

    # -- structural views ---------------------------------------------------

    @property
    def d1(self):
        """Gradient (d/dx, d/dy)."""
        return (self.dx, self.dy)

    @property
    def d2(self):
        """Hessian entries (dxx, dxy, dyy); symmetry is structural."""
        return (self.dxx, self.dxy, self.dyy)

    def is_complex(self) -> bool:
        return any(isinstance(c, complex)
                   for c in (self.v, self.dx, self.dy, self.dxx, self.dxy, self.dyy))

    def __repr__(self):
        return (f"Jet2(v={self.v!r}, dx={self.dx!r}, dy={self.dy!r}, "
                f"dxx={self.dxx!r}, dxy={self.dxy!r}, dyy={self.dyy!r})")

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self):
        return Jet2(-self.v, -self.dx, -self.dy, -self.dxx, -self.dxy, -self.dyy)

    def __add__(self, other):
        if isinstance(other, Jet2):
            return _checked(self.v + other.v, self.dx + other.dx, self.dy + other.dy,
                            self.dxx + other.dxx, self.dxy + other.dxy,
                            self.dyy + other.dyy)
        return _checked(self.v + other, self.dx, self.dy, self.dxx, self.dxy, self.dyy)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet2):
            return _checked(self.v - other.v, self.dx - other.dx, self.dy - other.dy,
                            self.dxx - other.dxx, self.dxy - other.dxy,
                            self.dyy - other.dyy)
        return _checked(self.v - other, self.dx, self.dy, self.dxx, self.dxy, self.dyy)

    def __rsub__(self, other):
        return _checked(other - self.v, -self.dx, -self.dy, -self.dxx, -self.dxy,
                        -self.dyy)

    def __mul__(self, other):
        if isinstance(other, Jet2):
            a, b = self, other
            return _checked(
                a.v * b.v,
                a.dx * b.v + a.v * b.dx,
                a.dy * b.v + a.v * b.dy,
                a.dxx * b.v + 2.0 * a.dx * b.dx + a.v * b.dxx,
                a.dxy * b.v + a.dx * b.dy + a.dy * b.dx + a.v * b.dxy,
                a.dyy * b.v + 2.0 * a.dy * b.dy + a.v * b.dyy,
            )
        return _checked(self.v * other, self.dx * other, self.dy * other,
                        self.dxx * other, self.dxy * other, self.dyy * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet2):
            if other == 0:
                raise DomainError("division of jet by zero scalar")
            inv = 1.0 / other
            return self.__mul__(inv)
        a, b = self, other
        if b.v == 0:
            raise DomainError("jet division by zero value")
        q = a.v / b.v
        qdx = (a.dx - q * b.dx) / b.v
        qdy = (a.dy - q * b.dy) / b.v
        qdxx = (a.dxx - 2.0 * qdx * b.dx - q * b.dxx) / b.v
        qdxy = (a.dxy - qdx * b.dy - qdy * b.dx - q * b.dxy) / b.v
        qdyy = (a.dyy - 2.0 * qdy * b.dy - q * b.dyy) / b.v
        return _checked(q, qdx, qdy, qdxx, qdxy, qdyy)

    def __rtruediv__(self, other):
        return constant(other).__truediv__(self)

    def __pow__(self, n):
        if isinstance(n, int):
            if n == 0:
                return constant(1.0)
            if n == 1:
                return self
            v = self.v
            try:
                f1 = n * v ** (n - 1)
                f2 = n * (n - 1) * v ** (n - 2)
                return _lift(self, v ** n, f1, f2)
            except OverflowError:
                raise NonFiniteError(f"power overflow: {v!r} ** {n}") from None
        raise TypeError("jet exponent must be an integer; use sqrt for n=1/2")


def _checked(v, dx, dy, dxx, dxy, dyy) -> Jet2:
    if not (_isfinite(v) and _isfinite(dx) and _isfinite(dy)
            and _isfinite(dxx) and _isfinite(dxy) and _isfinite(dyy)):
        raise NonFiniteError(
            f"non-finite jet component: v={v!r} d1=({dx!r},{dy!r}) "
            f"d2=({dxx!r},{dxy!r},{dyy!r})")
    return Jet2(v, dx, dy, dxx, dxy, dyy)


def constant(v) -> Jet2:
    """Jet of a constant: zero gradient and Hessian."""
    _require_finite(v, "constant jet")
    return Jet2(v)


def seed_x(v) -> Jet2:
    """Coordinate jet for the first variable: d1 = (1, 0), d2 = 0."""
    _require_finite(v, "seed jet")
    return Jet2(v, 1.0, 0.0)


def seed_y(v) -> Jet2:
    """Coordinate jet for the second variable: d1 = (0, 1), d2 = 0."""
    _require_finite(v, "seed jet")
    return Jet2(v, 0.0, 1.0)


def _lift(j: Jet2, f0, f1, f2) -> Jet2:
    """Chain rule: f(j) from f(v), f'(v), f''(v)."""
    dx, dy = j.dx, j.dy
    return _checked(
        f0,
        f1 * dx,
        f1 * dy,
        f2 * dx * dx + f1 * j.dxx,
        f2 * dx * dy + f1 * j.dxy,
        f2 * dy * dy + f1 * j.dyy,
    )


# -- scalar kernels ---------------------------------------------------------
#
# Each kernel returns (f(v), f'(v), f''(v)) and enforces the function's
# domain at the value level.  Real inputs stay on math.*, complex inputs on
# cmath.* (principal branches).

_POLE_EPS = 1e-150  # only essentially-exact poles are rejected here;
                    # conservative domain margins live in the catalog


def _k_sin(v):
    s = cmath.sin(v) if isinstance(v, complex) else math.sin(v)
    c = cmath.cos(v) if isinstance(v, complex) else math.cos(v)
    return s, c, -s


def _k_cos(v):
    s = cmath.sin(v) if isinstance(v, complex) else math.sin(v)
    c = cmath.cos(v) if isinstance(v, complex) else math.cos(v)
    return c, -s, -c


def _k_tan(v):
    c = cmath.cos(v) if isinstance(v, complex) else math.cos(v)
    if abs(c) < _POLE_EPS:
        raise PoleError(f"tan pole at {v!r}")
    t = (cmath.sin(v) if isinstance(v, complex) else math.sin(v)) / c
    d = 1.0 + t * t
    return t, d, 2.0 * t * d


def _k_sec(v):
    c = cmath.cos(v) if isinstance(v, complex) else math.cos(v)
    if abs(c) < _POLE_EPS:
        raise PoleError(f"sec pole at {v!r}")
    s = 1.0 / c
    t = (cmath.sin(v) if isinstance(v, complex) else math.sin(v)) / c
    return s, s * t, s * (t * t + s * s)


def _k_csc(v):
    s = cmath.sin(v) if isinstance(v, complex) else math.sin(v)
    if abs(s) < _POLE_EPS:
        raise PoleError(f"csc pole at {v!r}")
    co = (cmath.cos(v) if isinstance(v, complex) else math.cos(v)) / s
    c = 1.0 / s
    return c, -c * co, c * (co * co + c * c)


def _k_exp(v):
    e = cmath.exp(v) if isinstance(v, complex) else math.exp(v)
    return e, e, e


def _k_log(v):
    if isinstance(v, complex):
        if v == 0:
            raise DomainError("log of 0")
        f0 = cmath.log(v)
    else:
        if v <= 0.0:
            raise DomainError(f"log of non-positive real {v!r}")
        f0 = math.log(v)
    inv = 1.0 / v
    return f0, inv, -inv * inv


def _k_sinh(v):
    s = cmath.sinh(v) if isinstance(v, complex) else math.sinh(v)
    c = cmath.cosh(v) if isinstance(v, complex) else math.cosh(v)
    return s, c, s


def _k_cosh(v):
    s = cmath.sinh(v) if isinstance(v, complex) else math.sinh(v)
    c = cmath.cosh(v) if isinstance(v, complex) else math.cosh(v)
    return c, s, c


def _k_tanh(v):
    t = cmath.tanh(v) if isinstance(v, complex) else math.tanh(v)
    d = 1.0 - t * t
    return t, d, -2.0 * t * d


def _k_atan(v):
    if isinstance(v, complex):
        f0 = complex_atan(v)
    else:
        f0 = math.atan(v)
    d = 1.0 / (1.0 + v * v)
    return f0, d, -2.0 * v * d * d


def _k_atanh(v):
    if isinstance(v, complex):
        f0 = complex_atanh(v)
    else:
        if abs(v) >= 1.0:
            raise DomainError(f"real atanh outside (-1, 1): {v!r}")
        f0 = math.atanh(v)
    d = 1.0 / (1.0 - v * v)
    return f0, d, 2.0 * v * d * d


def _k_sqrt(v):
    if isinstance(v, complex):
        if v == 0:
            raise DomainError("sqrt jet at 0 (derivative pole)")
        s = cmath.sqrt(v)
    else:
        if v <= 0.0:
            raise DomainError(f"real sqrt jet needs v > 0, got {v!r}")
        s = math.sqrt(v)
    d = 0.5 / s
    return s, d, -0.5 * d / v


_KERNELS = {
    "sin": _k_sin,
    "cos": _k_cos,
    "tan": _k_tan,
    "sec": _k_sec,
    "csc": _k_csc,
    "exp": _k_exp,
    "log": _k_log,
    "sinh": _k_sinh,
    "cosh": _k_cosh,
    "tanh": _k_tanh,
    "atan": _k_atan,
    "atanh": _k_atanh,
    "sqrt": _k_sqrt,
}


def _make_jet_fn(name, kernel):
    def fn(j: Jet2) -> Jet2:
        try:
            f0, f1, f2 = kernel(j.v)
        except OverflowError:
            raise NonFiniteError(f"{name} overflow at {j.v!r}") from None
        return _lift(j, f0, f1, f2)
    fn.__name__ = f"jet_{name}"
    fn.__doc__ = f"Apply {name} to a jet via the second-order chain rule."
    return fn


ELEMENTARY = {name: _make_jet_fn(name, k) for name, k in _KERNELS.items()}

# module-level aliases: jsin(j), jtan(j), ...
globals().update({f"j{name}": fn for name, fn in ELEMENTARY.items()})
__all__ += [f"j{name}" for name in _KERNELS]


def jet_apply(fn_id: str, j: Jet2) -> Jet2:
    """Apply the elementary function named ``fn_id`` to jet ``j``."""
    try:
        fn = ELEMENTARY[fn_id]
    except KeyError:
        raise ValueError(f"unknown elementary function {fn_id!r}; "
                         f"known: {sorted(ELEMENTARY)}") from None
    return fn(j)


# -- principal-branch complex inverses --------------------------------------

def complex_atan(z) -> complex:
    """Principal-branch complex arctangent.

    Branch cuts run along the imaginary axis for |Im z| > 1, so
    atan(i*z) == i*atanh(z) wherever both sides sit on principal branches.
    """
    z = complex(z)
    _require_finite(z, "complex_atan argument")
    if z == 1j or z == -1j:
        raise BranchPointError(f"atan branch point at {z!r}")
    w = cmath.atan(z)
    _require_finite(w, "complex_atan result")
    return w


def complex_atanh(z) -> complex:
    """Principal-branch complex inverse hyperbolic tangent.

    Branch cuts run along the real axis for |Re z| > 1; off the cuts,
    atanh(conj(z)) == conj(atanh(z)).
    """
    z = complex(z)
    _require_finite(z, "complex_atanh argument")
    if z == 1.0 + 0j or z == -1.0 + 0j:
        raise BranchPointError(f"atanh branch point at {z!r}")
    w = cmath.atanh(z)
    _require_finite(w, "complex_atanh result")
    return w


# -- realness helpers (used by the rotation rules) ---------------------------

def imag_magnitude(j: Jet2) -> float:
    """Largest |imaginary part| over all six jet components."""
    out = 0.0
    for c in (j.v, j.dx, j.dy, j.dxx, j.dxy, j.dyy):
        if isinstance(c, complex):
            m = abs(c.imag)
            if m > out:
                out = m
    return out


def real_part(j: Jet2) -> Jet2:
    """Componentwise real part (for fields verified real up to rounding)."""
    def re(c):
        return c.real if isinstance(c, complex) else c
    return Jet2(re(j.v), re(j.dx), re(j.dy), re(j.dxx), re(j.dxy), re(j.dyy))
