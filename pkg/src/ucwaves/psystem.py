"""Traveling waves for the p-system with cubic stress and BBM-type dispersion.

The wave profile solves u' = w, s*A*w' = s*w + s^2*(u - u_-) - (u^3 - u_-^3),
whose outside equilibria are saddles exactly when s and A have opposite
signs.  With the definiteness convention A > 0, u_- > 0, s < 0, the
saddle-saddle family is parametrized by b = u_+/u_- on (-1, -1/2):

    u_-(b) = (2 / (9*(1+b)^2)) * sqrt(b^2 + b + 1) / A,   u_+ = b*u_-(b).

All other sign quadrants are reached through the two exact symmetries of
the system (odd map, A-flip).

Note on orientation: the invariance conditions for the connecting parabola
w = k*(u - u_-)*(u - u_+) force s*k = (3/2)*(u_- + u_+), whose right side is
positive on -1 < b < -1/2 while s < 0.  The parabola coefficient of the
actual orbit is therefore negative (w > 0 between the saddles, i.e. the
heteroclinic runs from u_+ to u_-), while the reported k field keeps the
conventional positive value 1/sqrt(-2*A*s); the magnitude identity
|s|*k = (3/2)*(u_- + u_+) holds exactly.  Shooting records the realized
orientation.
"""

import math
from dataclasses import dataclass, replace

from scipy.optimize import brentq

from .errors import DomainError, NoLocusError, NoSaddleError
from .phaseplane import (
    CONNECTION_TOL,
    OrbitResult,
    Verdict,
    shoot_saddle_connection,
)


@dataclass(frozen=True)
class PSystemLocusPoint:
    """One undercompressive traveling wave of the p-system."""

    b: float
    A: float
    u_minus: float
    u_plus: float
    u_zero: float
    s: float
    k: float
    v_minus: float
    v_plus: float


def psys_threshold(A):
    """Smallest u_- carrying an undercompressive wave: 4*sqrt(3)/(9*A)."""
    if A <= 0:
        raise DomainError("threshold defined for A > 0; map A < 0 via psys_symmetry")
    return 4.0 * math.sqrt(3.0) / (9.0 * A)


def psys_locus(b, A, v_minus=0.0):
    """Evaluate the parametric locus at ratio b = u_+/u_- (A > 0 convention).

    Valid for -1 < b <= -1/2; the b = -1/2 endpoint is the degenerate
    coalescence u_0 = u_+ (equal to the existence threshold).  The second
    component states satisfy v_+ = v_- - s*(u_+ - u_-).
    """
    if A <= 0:
        raise DomainError("psys_locus fixes A > 0; map A < 0 via psys_symmetry")
    if not -1.0 < b <= -0.5:
        raise DomainError(
            f"b={b!r} outside (-1, -1/2]: states diverge at b = -1 (energy "
            "restriction) and equilibria coalesce at b = -1/2"
        )
    u_minus = 2.0 / (9.0 * (1.0 + b) ** 2) * math.sqrt(b * b + b + 1.0) / A
    u_plus = b * u_minus
    u_zero = -(u_minus + u_plus)
    s = -math.sqrt(u_plus**2 + u_plus * u_minus + u_minus**2)
    k = 1.0 / math.sqrt(-2.0 * A * s)
    v_plus = v_minus - s * (u_plus - u_minus)
    return PSystemLocusPoint(b, A, u_minus, u_plus, u_zero, s, k, v_minus, v_plus)


def psys_kinetic_u_plus(u_minus, A):
    """The unique u_+ in (-u_-, -u_-/2) paired with u_- (requires
    u_- > psys_threshold(A), strictly).

    Inverts the monotone decreasing map b -> u_-(b) on (-1, -1/2).
    """
    thr = psys_threshold(A)
    if u_minus <= thr:
        raise NoLocusError(
            f"u_minus={u_minus!r} at or below the threshold {thr!r} for A={A!r}"
        )

    def f(b):
        return psys_locus(b, A).u_minus - u_minus

    b_lo = -0.75
    while f(b_lo) < 0:
        b_lo = -1.0 + 0.5 * (b_lo + 1.0)
        if b_lo < -1.0 + 1e-14:
            raise NoLocusError(f"failed to bracket u_minus={u_minus!r}")
    b = brentq(f, b_lo, -0.5, xtol=1e-15, rtol=8.9e-16)
    return b * u_minus


def _lienard_form(point: PSystemLocusPoint):
    """Coefficients of the equivalent system u' = w, w' = T*w + P(u)."""
    um, s, A = point.u_minus, point.s, point.A
    T = 1.0 / A

    def P(u):
        return -(u**3 - um**3 - s * s * (u - um)) / (s * A)

    def dP(u):
        return -(3.0 * u * u - s * s) / (s * A)

    return T, P, dP


def resolved_parabola_coefficient(point: PSystemLocusPoint):
    """Signed coefficient of the invariant parabola actually containing the
    orbit: (3/2)*(u_- + u_+)/s (negative under the A > 0, s < 0 convention)."""
    return 1.5 * (point.u_minus + point.u_plus) / point.s


def psys_shoot(point: PSystemLocusPoint, tol=CONNECTION_TOL):
    """Verify the saddle-saddle connection of a locus point by shooting.

    Raises NoSaddleError unless s*A < 0.  Tries the unstable manifold of
    (u_-, 0) first and, failing that, of (u_+, 0); under the A > 0, s < 0
    convention the connecting orbit leaves u_+ (w > 0 between the saddles).
    The realized orientation is readable off trajectory[0].
    """
    if point.s * point.A >= 0:
        raise NoSaddleError(
            f"outside equilibria are saddles only for s*A < 0, "
            f"got s={point.s!r}, A={point.A!r}"
        )
    T, P, dP = _lienard_form(point)
    span = abs(point.u_minus - point.u_plus)
    vmax = 50.0 * (1.0 + abs(resolved_parabola_coefficient(point)) * span**2)
    res = shoot_saddle_connection(T, P, dP, point.u_minus, point.u_plus,
                                  tol=tol, vmax=vmax)
    if res.verdict is Verdict.CONNECTS:
        return res
    res2 = shoot_saddle_connection(T, P, dP, point.u_plus, point.u_minus,
                                   tol=tol, vmax=vmax)
    if res2.verdict is Verdict.CONNECTS:
        return res2
    return res2 if res2.terminal_distance < res.terminal_distance else res


def psys_parabola_residual(orbit: OrbitResult, point: PSystemLocusPoint):
    """Max deviation of a shot orbit from the orientation-resolved parabola."""
    u, w = orbit.trajectory[:, 1], orbit.trajectory[:, 2]
    k = resolved_parabola_coefficient(point)
    dev = w - k * (u - point.u_minus) * (u - point.u_plus)
    return float(abs(dev).max())


def psys_symmetry(point: PSystemLocusPoint, which):
    """Apply one of the two exact symmetries; locus membership is preserved.

    which="odd":    (u, v) -> (-u, -v), same A and s (parabola coefficient
                    flips sign).
    which="a_flip": A -> -A, s -> -s, xi -> -xi, states unchanged (wave
                    direction and traversal reverse; |k| unchanged).
    """
    if which == "odd":
        return replace(
            point,
            u_minus=-point.u_minus, u_plus=-point.u_plus, u_zero=-point.u_zero,
            v_minus=-point.v_minus, v_plus=-point.v_plus, k=-point.k,
        )
    if which == "a_flip":
        v_plus = point.v_minus - (-point.s) * (point.u_plus - point.u_minus)
        return replace(point, A=-point.A, s=-point.s, v_plus=v_plus)
    raise DomainError(f"unknown symmetry {which!r}; use 'odd' or 'a_flip'")
