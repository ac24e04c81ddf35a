"""Typed error taxonomy shared by all numeric modules.

Every operation converts floating-point pathologies (NaN/Inf, poles, branch
points, empty domains) into one of these exceptions at the point where they
arise, so that a failed identity check can always be told apart from "the
evaluation left the function's domain".
"""


class ZmcForgeError(Exception):
    """Base class for all package errors."""


class DomainError(ZmcForgeError):
    """Point lies outside a function's (open, margin-shrunk) domain."""


class PoleError(DomainError):
    """Evaluation at (or within margin of) a pole, e.g. tan at pi/2 + k*pi."""


class BranchPointError(DomainError):
    """Evaluation at a branch point of a multivalued function (atan at +-i,
    atanh at +-1)."""


class NonFiniteError(ZmcForgeError):
    """A NaN or Inf would have been produced; raised instead of propagating."""


class DegenerateDilationError(ZmcForgeError):
    """Dilation with a vanishing axis scale (m1 == 0 or m2 == 0)."""


class ParityError(ZmcForgeError):
    """A symmetry precondition of a rotation rule is not met."""


class NotSpacelikeError(DomainError):
    """Induced metric is not Riemannian at the requested point."""


class DomainConstraintError(DomainError):
    """A decomposition identity's stated domain constraint fails at the point."""


class ConfigError(ZmcForgeError):
    """Malformed configuration, grid, or CLI arguments."""
