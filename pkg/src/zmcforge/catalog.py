"""Named height functions, their domains and symmetry tags, and dilation.

Each surface is packaged as a :class:`HeightField`: a jet-level evaluation
rule together with a conservative open-domain predicate (poles and cuts are
avoided by a margin), parity metadata per variable, and the PDE the field is
expected to satisfy.  The same rule evaluates on real and complex seed jets,
which is what the rotation rules and the complex-shifted decompositions rely
on.

The one-parameter families phi/psi/chi share an argument convention that is
easy to misread: the numerator argument is (x*sin(theta))/2 while the
denominator argument is x*sin(theta/2).  The PDE residual tests arbitrate
this parse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

from .errors import DegenerateDilationError, DomainError, PoleError
from .jets import Jet2, jatan, jatanh, jcos, jcosh, jlog, jtan, jtanh, seed_x, seed_y

__all__ = [
    "DOMAIN_MARGIN",
    "FamilyParam",
    "HeightField",
    "DilationSpec",
    "dilate",
    "swap_variables",
    "scherk_classical",
    "scherk_maximal_classical",
    "bi_soliton_classical",
    "helicoid",
    "hyperbolic_helicoid",
    "phi_family",
    "psi_family",
    "chi_family",
    "phi_limit",
    "psi_limit",
    "LimitComparison",
    "limit_comparison",
    "CATALOG_IDS",
    "get_field",
]

# Conservative distance kept from poles/branch cuts by domain predicates.
# Jets amplify proximity to singularities, so domains are open sets shrunk
# by this margin rather than the exact maximal domains.
DOMAIN_MARGIN = 1e-6


@dataclass(frozen=True)
class FamilyParam:
    """Family angle theta in (0, pi/2) with the derived constants used
    throughout the decomposition identities."""

    theta: float

    def __post_init__(self):
        if not (0.0 < self.theta < math.pi / 2):
            raise ValueError(f"theta must lie strictly in (0, pi/2), got {self.theta}")

    @property
    def half_sin(self) -> float:
        """sin(theta/2): the denominator-argument frequency."""
        return math.sin(self.theta / 2)

    @property
    def full_sin_half(self) -> float:
        """sin(theta)/2: the numerator-argument frequency."""
        return math.sin(self.theta) / 2

    @property
    def sec_half(self) -> float:
        """sec(theta/2): the family's amplitude prefactor."""
        return 1.0 / math.cos(self.theta / 2)

    @property
    def cos_half(self) -> float:
        return math.cos(self.theta / 2)

    @property
    def s_real(self) -> float:
        """Real lattice spacing s with sin(theta/2) = pi/s."""
        return math.pi / self.half_sin

    @property
    def s_imag(self) -> float:
        """Magnitude of the purely imaginary spacing s with
        sin(theta/2) = i*pi/s; equals s_real."""
        return math.pi / self.half_sin

    @property
    def s_complex(self) -> complex:
        """The purely imaginary spacing i*pi/sin(theta/2) itself."""
        return 1j * self.s_imag


JetRule = Callable[[Jet2, Jet2], Jet2]
DomainPredicate = Callable[[float, float], bool]


@dataclass(frozen=True)
class HeightField:
    """A named height function with jet rule, domain, and metadata.

    ``fn`` maps two seed jets to the value jet and is total on ``domain``;
    it also accepts complex-valued jets (analytic continuation of the same
    closed form).  ``parity`` holds ('even'|'odd'|'neither') per variable.
    ``expected_pde`` is one of 'MSE', 'ZMC', 'BIE', 'none'.
    """

    id: str
    fn: JetRule
    domain: DomainPredicate
    parity: tuple
    expected_pde: str
    params: Optional[FamilyParam] = None

    def jet(self, x, y) -> Jet2:
        """Evaluate value + first/second partials at a point (real or complex)."""
        return self.fn(seed_x(x), seed_y(y))

    def value(self, x, y):
        return self.fn(seed_x(x), seed_y(y)).v


# -- classical surfaces ------------------------------------------------------

def scherk_classical() -> HeightField:
    """log(cos x / cos y) on the principal sheet (cos x > 0, cos y > 0)."""
    def fn(jx, jy):
        cx, cy = jcos(jx), jcos(jy)
        return jlog(cx / cy)

    def domain(x, y):
        return math.cos(x) > DOMAIN_MARGIN and math.cos(y) > DOMAIN_MARGIN

    return HeightField("scherk", fn, domain, ("even", "even"), "MSE")


def scherk_maximal_classical() -> HeightField:
    """log(cosh x / cosh y); entire plane."""
    def fn(jx, jy):
        return jlog(jcosh(jx) / jcosh(jy))

    return HeightField("scherk-maximal", fn, lambda x, y: True,
                       ("even", "even"), "ZMC")


def bi_soliton_classical() -> HeightField:
    """log(cos y / cosh z) over the strip cos y > 0 (variables (y, z))."""
    def fn(jy, jz):
        return jlog(jcos(jy) / jcosh(jz))

    def domain(y, z):
        return math.cos(y) > DOMAIN_MARGIN

    return HeightField("bi-soliton", fn, domain, ("even", "even"), "BIE")


def helicoid() -> HeightField:
    """atan(y/x) for x != 0; solves both the minimal and the zero-mean-
    curvature graph equations."""
    def fn(jx, jy):
        if jx.v == 0:
            raise DomainError("helicoid undefined at x = 0")
        return jatan(jy / jx)

    def domain(x, y):
        return abs(x) > DOMAIN_MARGIN

    return HeightField("helicoid", fn, domain, ("odd", "odd"), "MSE")


def hyperbolic_helicoid() -> HeightField:
    """atanh(z/y) on |z| < |y|; the theta->0 limit of the chi family."""
    def fn(jy, jz):
        if jy.v == 0:
            raise DomainError("hyperbolic helicoid undefined at y = 0")
        return jatanh(jz / jy)

    def domain(y, z):
        return abs(y) > DOMAIN_MARGIN and abs(z) < abs(y) * (1.0 - DOMAIN_MARGIN)

    return HeightField("hyperbolic-helicoid", fn, domain, ("odd", "odd"), "BIE")


# -- one-parameter families --------------------------------------------------

def phi_family(theta: float) -> HeightField:
    """-sec(theta/2) * atan( tanh((x sin theta)/2) / tan(y sin(theta/2)) ).

    Odd in both variables; minimal-surface-equation solution.
    """
    p = FamilyParam(theta)
    a, b, sec = p.full_sin_half, p.half_sin, p.sec_half

    def fn(jx, jy):
        den = jtan(jy * b)
        if den.v == 0:
            raise PoleError("phi: tan factor vanishes (y*sin(theta/2) in pi*Z)")
        return (-sec) * jatan(jtanh(jx * a) / den)

    def domain(x, y):
        u = y * b
        return (abs(math.cos(u)) > DOMAIN_MARGIN
                and abs(math.tan(u)) > DOMAIN_MARGIN)

    return HeightField("phi", fn, domain, ("odd", "odd"), "MSE", params=p)


def psi_family(theta: float) -> HeightField:
    """sec(theta/2) * atan( tan((x sin theta)/2) / tanh(y sin(theta/2)) ).

    Zero-mean-curvature solution, spacelike near the origin; odd in both
    variables.
    """
    p = FamilyParam(theta)
    a, b, sec = p.full_sin_half, p.half_sin, p.sec_half

    def fn(jx, jy):
        den = jtanh(jy * b)
        if den.v == 0:
            raise DomainError("psi undefined at y = 0")
        return sec * jatan(jtan(jx * a) / den)

    def domain(x, y):
        return (abs(math.tanh(y * b)) > DOMAIN_MARGIN
                and abs(math.cos(x * a)) > DOMAIN_MARGIN)

    return HeightField("psi", fn, domain, ("odd", "odd"), "ZMC", params=p)


def chi_family(theta: float) -> HeightField:
    """sec(theta/2) * atanh( tanh((z sin theta)/2) / tanh(y sin(theta/2)) ).

    Real on |tanh((z sin theta)/2)| < |tanh(y sin(theta/2))|; solves the
    graph equation over the timelike plane (variables (y, z)).
    """
    p = FamilyParam(theta)
    a, b, sec = p.full_sin_half, p.half_sin, p.sec_half

    def fn(jy, jz):
        den = jtanh(jy * b)
        if den.v == 0:
            raise DomainError("chi undefined at y = 0")
        return sec * jatanh(jtanh(jz * a) / den)

    def domain(y, z):
        den = math.tanh(y * b)
        num = math.tanh(z * a)
        return (abs(den) > DOMAIN_MARGIN
                and abs(num) < abs(den) * (1.0 - DOMAIN_MARGIN))

    return HeightField("chi", fn, domain, ("odd", "odd"), "BIE", params=p)


# -- theta -> 0 limit surfaces ------------------------------------------------

def phi_limit() -> HeightField:
    """-atan(x/y): the small-angle limit of the phi family."""
    def fn(jx, jy):
        if jy.v == 0:
            raise DomainError("phi limit undefined at y = 0")
        return -jatan(jx / jy)

    def domain(x, y):
        return abs(y) > DOMAIN_MARGIN

    return HeightField("phi-limit", fn, domain, ("odd", "odd"), "MSE")


def psi_limit() -> HeightField:
    """atan(x/y): the small-angle limit of the psi family."""
    def fn(jx, jy):
        if jy.v == 0:
            raise DomainError("psi limit undefined at y = 0")
        return jatan(jx / jy)

    def domain(x, y):
        return abs(y) > DOMAIN_MARGIN

    return HeightField("psi-limit", fn, domain, ("odd", "odd"), "ZMC")


# chi's limit is the hyperbolic helicoid itself; see CATALOG_IDS below.


# -- dilation -----------------------------------------------------------------

@dataclass(frozen=True)
class DilationSpec:
    """Affine reparametrization + vertical scale: k*f(m1*x + n1, m2*y + n2).

    Constants may be complex (the decomposition summands use imaginary
    shifts); m1 and m2 must be nonzero.
    """

    k: complex = 1.0
    m1: complex = 1.0
    n1: complex = 0.0
    m2: complex = 1.0
    n2: complex = 0.0

    def is_identity(self) -> bool:
        return (self.k == 1 and self.m1 == 1 and self.m2 == 1
                and self.n1 == 0 and self.n2 == 0)

    def is_real(self) -> bool:
        return not any(isinstance(c, complex) and c.imag != 0.0
                       for c in (self.k, self.m1, self.n1, self.m2, self.n2))


def dilate(hf: HeightField, spec: DilationSpec) -> HeightField:
    """Dilated copy of a height field; jets follow the affine chain rule.

    Generic dilations break the field's PDE, so the result is tagged with
    expected_pde='none' and parity 'neither' unless the spec is the identity.
    """
    if spec.m1 == 0 or spec.m2 == 0:
        raise DegenerateDilationError(f"degenerate dilation {spec}")

    k, m1, n1, m2, n2 = spec.k, spec.m1, spec.n1, spec.m2, spec.n2

    def fn(jx, jy):
        return k * hf.fn(jx * m1 + n1, jy * m2 + n2)

    if spec.is_identity():
        return replace(hf, id=f"{hf.id}~dilated", fn=fn)

    if spec.is_real():
        def domain(x, y):
            return hf.domain((m1 * x + n1).real if isinstance(m1 * x + n1, complex)
                             else m1 * x + n1,
                             (m2 * y + n2).real if isinstance(m2 * y + n2, complex)
                             else m2 * y + n2)
    else:
        # complex-shifted domain has no real predicate; rely on eval errors
        def domain(x, y):
            return True

    return HeightField(f"{hf.id}~dilated", fn, domain, ("neither", "neither"),
                       "none", params=hf.params)


def swap_variables(hf: HeightField) -> HeightField:
    """Field evaluating hf with its two arguments interchanged.

    Needed when a graph solution enters an immersion whose parameter order
    assigns the opposite causal roles to the two variables.
    """
    def fn(ju, jw):
        return hf.fn(jw, ju)

    return HeightField(f"{hf.id}~swap", fn,
                       lambda u, w: hf.domain(w, u),
                       (hf.parity[1], hf.parity[0]), "none", params=hf.params)


# -- small-angle limit comparison ---------------------------------------------

@dataclass(frozen=True)
class LimitComparison:
    """Gap between a family member at small theta and its limit surface.

    ``epsilon_sign`` is the sign indicator of the helicoid-limit identity:
    +1 when the ratio of the two coordinates is positive, -1 when negative.
    """

    family_id: str
    x: float
    y: float
    theta: float
    family_value: float
    limit_value: float
    gap: float
    epsilon_sign: int


_LIMIT_OF = {
    "phi": phi_limit,
    "psi": psi_limit,
    "chi": hyperbolic_helicoid,
}


def limit_comparison(family_id: str, x: float, y: float, theta: float) -> LimitComparison:
    """Compare family value at (x, y; theta) with the theta->0 limit surface."""
    if family_id not in _LIMIT_OF:
        raise ValueError(f"no limit surface registered for {family_id!r}")
    fam = get_field(family_id, theta=theta)
    lim = _LIMIT_OF[family_id]()
    fv = fam.value(x, y)
    lv = lim.value(x, y)
    eps = 1 if (x / y) > 0 else -1
    return LimitComparison(family_id, x, y, theta, fv, lv, abs(fv - lv), eps)


# -- registry -----------------------------------------------------------------

_PARAMETRIC = {"phi": phi_family, "psi": psi_family, "chi": chi_family}
_PLAIN = {
    "scherk": scherk_classical,
    "scherk-maximal": scherk_maximal_classical,
    "bi-soliton": bi_soliton_classical,
    "helicoid": helicoid,
    "hyperbolic-helicoid": hyperbolic_helicoid,
    "phi-limit": phi_limit,
    "psi-limit": psi_limit,
    "chi-limit": hyperbolic_helicoid,
}

CATALOG_IDS = tuple(sorted(_PLAIN) + sorted(_PARAMETRIC))


def get_field(field_id: str, theta: Optional[float] = None) -> HeightField:
    """Look up a catalog surface by id; parametric families require theta."""
    if field_id in _PARAMETRIC:
        if theta is None:
            raise ValueError(f"{field_id!r} requires theta")
        return _PARAMETRIC[field_id](theta)
    if field_id in _PLAIN:
        return _PLAIN[field_id]()
    raise ValueError(f"unknown surface {field_id!r}; known: {CATALOG_IDS}")
