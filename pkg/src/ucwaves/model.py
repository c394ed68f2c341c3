"""Flux and shock algebra for the scalar law u_t + (u - u^3)_x = 0.

The flux f(u) = u - u^3 is concave for u > 0 and convex for u < 0 (the sign
of f'' = -6u decides; prose descriptions elsewhere are not relied upon).
Also provides the linear dispersion relation of the regularized equation
u_t + f(u)_x = beta*u_xx + mu*u_xxt about a constant state.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DomainError, PoleError

#: Absolute tolerance used in shock classification; all states are O(1).
CLASSIFY_ATOL = 1e-12


@dataclass(frozen=True)
class ScalarParams:
    """Dissipation/dispersion coefficients of the regularized equation.

    gamma = beta/sqrt(mu) is the single combined parameter the traveling-wave
    analysis depends on; it is defined only for mu > 0.
    """

    beta: float
    mu: float
    gamma: float = field(init=False)

    def __post_init__(self):
        if self.beta < 0:
            raise DomainError(f"beta must be >= 0, got {self.beta}")
        if self.mu == 0:
            raise DomainError("mu must be nonzero")
        g = self.beta / np.sqrt(self.mu) if self.mu > 0 else float("nan")
        object.__setattr__(self, "gamma", g)


class ShockKind(Enum):
    LAX = "lax"
    UNDERCOMPRESSIVE_CANDIDATE = "undercompressive_candidate"
    INADMISSIBLE = "inadmissible"
    CHARACTERISTIC = "characteristic"


@dataclass(frozen=True)
class ShockPair:
    """A candidate discontinuity (u_minus, u_plus) with its RH speed.

    ``sonic`` is set when the speed equals the characteristic speed on one
    side to within CLASSIFY_ATOL (tangent chord); such pairs are classified
    INADMISSIBLE and handled separately by the Riemann solver.

    ``kind`` is a pointwise classification by characteristic inequalities
    only; UNDERCOMPRESSIVE_CANDIDATE does not assert that a traveling-wave
    profile exists (that is decided by the kinetics/phaseplane modules).
    """

    u_minus: float
    u_plus: float
    speed: float
    kind: ShockKind
    sonic: bool = False


def flux(u):
    """Cubic flux f(u) = u - u**3."""
    u = np.asarray(u) if not np.isscalar(u) else u
    return u - u**3


def char_speed(u):
    """Characteristic speed f'(u) = 1 - 3u**2."""
    u = np.asarray(u) if not np.isscalar(u) else u
    return 1.0 - 3.0 * u**2


def rh_speed(u_minus, u_plus):
    """Rankine-Hugoniot speed: chord slope s = 1 - (u_+^2 + u_+ u_- + u_-^2).

    Symmetric in its arguments; reduces to char_speed(u) when both states
    coincide.
    """
    return 1.0 - (u_plus**2 + u_plus * u_minus + u_minus**2)


def classify_shock(u_minus, u_plus, atol=CLASSIFY_ATOL):
    """Classify the pair by the Lax inequalities (strict).

    LAX when 1 - 3u_+^2 < s < 1 - 3u_-^2, UNDERCOMPRESSIVE_CANDIDATE when s
    exceeds the characteristic speed on both sides (supersonic-supersonic),
    CHARACTERISTIC for coincident states.  Equality with either
    characteristic speed (within atol) yields INADMISSIBLE with sonic=True.
    """
    s = rh_speed(u_minus, u_plus)
    if abs(u_plus - u_minus) <= atol:
        return ShockPair(u_minus, u_plus, s, ShockKind.CHARACTERISTIC)
    cl = char_speed(u_minus)
    cr = char_speed(u_plus)
    sonic = abs(s - cl) <= atol or abs(s - cr) <= atol
    if sonic:
        kind = ShockKind.INADMISSIBLE
    elif cr < s < cl:
        kind = ShockKind.LAX
    elif s > cl and s > cr:
        kind = ShockKind.UNDERCOMPRESSIVE_CANDIDATE
    else:
        kind = ShockKind.INADMISSIBLE
    return ShockPair(u_minus, u_plus, s, kind, sonic)


def dispersion_lambda(u_bar, beta, mu, xi):
    """Growth rate lambda(xi) of a linear mode exp(i*xi*x + lambda*t).

    lambda(xi) = (-i*xi*f'(u_bar) - beta*xi**2) / (1 + mu*xi**2).

    For beta > 0, mu > 0 every nonzero wavenumber decays.  For mu < 0 the
    denominator vanishes at xi = 1/sqrt(-mu) (raises PoleError) and
    Re(lambda) > 0 beyond it.
    """
    denom = 1.0 + mu * xi**2
    if denom == 0.0:
        raise PoleError(
            f"dispersion relation has a pole at xi = 1/sqrt(-mu) = {xi}"
        )
    return (-1j * xi * char_speed(u_bar) - beta * xi**2) / denom
