"""Vanishing angles for the curvature criterion.

The vanishing-angle equation

    dr/dtheta = r sqrt(r^(2k) cos^(2k-2)(theta) J(tan theta)^2 - 1),  r(0) = 1

blows up at the vanishing angle.  With u = r^(-k) it becomes

    du/dtheta = -k sqrt(cos^(2k-2)(theta) J^2 - u^2),  u(0) = 1,

and blow-up turns into the regular event u -> 0.  The right-hand side
vanishes identically at theta = 0, so the solution is started a little
away from the origin on the branch r = 1 + A theta^2 + ... with A the
larger root of 4A^2 - 2kA + (k - 1 + alpha^2) = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

U_TOL = 1e-9
U_GUARD = 1e-6
THETA_START = 1e-4
MAX_STEP = 1e-3
ATOL = 1e-14
RTOL = 1e-12
MARGIN = 1e-9


def generic_F(alpha: float, t: float, m: int) -> float:
    """Lower bound for det(I - tA) over trace-free symmetric m x m A with |A| = alpha."""
    if m < 2:
        raise ValueError("m must be at least 2")
    return two_eigen_L(alpha, t, m, 1)


def limit_F(alpha: float, t: float) -> float:
    return (1.0 - alpha * t) * math.exp(alpha * t)


def two_eigen_L(alpha: float, t: float, m: int, r: int) -> float:
    """det(I - tA) for A with eigenvalue p (multiplicity r) and q (multiplicity m - r).

    p = alpha sqrt((m-r)/(m r)) and q = -alpha sqrt(r/(m(m-r))), so A is
    trace-free with |A| = alpha.
    """
    if not 1 <= r <= m - 1:
        raise ValueError(f"r must lie in [1, m-1], got r={r}, m={m}")
    p = alpha * math.sqrt((m - r) / (m * r))
    q = alpha * math.sqrt(r / (m * (m - r)))
    return (1.0 - t * p) ** r * (1.0 + t * q) ** (m - r)


@dataclass(frozen=True)
class JacobianBound:
    name: str
    func: Callable[[float], float]
    cap: float                  # largest admissible t = tan(theta)
    alpha_sq: float             # -J''(0), fixes the start-up branch

    def __call__(self, t: float) -> float:
        return self.func(t)

    @classmethod
    def generic(cls, alpha: float, k: int) -> "JacobianBound":
        m = k - 1
        cap = math.sqrt((k - 1) / (k - 2)) / alpha if alpha > 0 else math.inf
        return cls(f"GenericF({alpha:.6g},{k})", lambda t: generic_F(alpha, t, m), cap, alpha * alpha)

    @classmethod
    def limit(cls, alpha: float) -> "JacobianBound":
        cap = 1.0 / alpha if alpha > 0 else math.inf
        return cls(f"GenericLimit({alpha:.6g})", lambda t: limit_F(alpha, t), cap, alpha * alpha)

    @classmethod
    def two_eigen(cls, alpha: float, m: int, r: int) -> "JacobianBound":
        p = alpha * math.sqrt((m - r) / (m * r))
        cap = 1.0 / p if p > 0 else math.inf
        return cls(f"TwoEigen({alpha:.6g},{m},{r})", lambda t: two_eigen_L(alpha, t, m, r), cap, alpha * alpha)

    @classmethod
    def case_exact(cls, name: str, func: Callable[[float], float], cap: float,
                   alpha_sq: float = 6.0) -> "JacobianBound":
        return cls(f"CaseExact({name})", func, cap, alpha_sq)


class Status(str, Enum):
    VANISHES = "Vanishes"
    NO_VANISHING = "NoVanishingAngle"


@dataclass(frozen=True)
class VanishingAngleResult:
    status: Status
    angle: float                # vanishing angle, or the last theta reached
    reason: str = ""
    trace: tuple = field(default=(), repr=False)

    @property
    def vanishes(self) -> bool:
        return self.status is Status.VANISHES

    @property
    def degrees(self) -> float:
        return math.degrees(self.angle)

    def to_dict(self) -> dict:
        key = "angle" if self.vanishes else "maxTheta"
        return {
            "status": self.status.value,
            key + "Rad": self.angle,
            key + "Deg": round(self.degrees, 4),
            "reason": self.reason,
        }


def startup_coefficient(k: int, alpha_sq: float) -> float | None:
    disc = 4 * k * k - 16 * (k - 1 + alpha_sq)
    if disc < 0:
        return None
    return (2 * k + math.sqrt(disc)) / 8


def integrate_vn(k: int, J: JacobianBound, *, theta_start: float = THETA_START,
                 max_step: float = MAX_STEP, atol: float = ATOL, rtol: float = RTOL,
                 trace_points: int = 64) -> VanishingAngleResult:
    if k < 3:
        raise ValueError("k must be at least 3")
    A = startup_coefficient(k, J.alpha_sq)
    if A is None:
        return VanishingAngleResult(Status.NO_VANISHING, 0.0, "no real start-up branch")

    theta_end = min(math.atan(J.cap), math.pi / 2 - 1e-6)
    u0 = (1.0 + A * theta_start ** 2) ** (-k)

    def log_ratio(theta, u):
        # log(cos^(k-1) J / u); the radicand is u^2 expm1(2 * log_ratio)
        j = J(math.tan(theta))
        if j <= 0.0 or u <= 0.0:
            return None, j
        return (k - 1) * math.log(math.cos(theta)) + math.log(j) - math.log(u), j

    def radicand(theta, u):
        lr, j = log_ratio(theta, u)
        if lr is None:
            return (math.cos(theta) ** (k - 1) * j) ** 2 - u * u
        return u * u * math.expm1(2.0 * lr)

    def rhs(theta, y):
        return [-k * math.sqrt(max(radicand(theta, y[0]), 0.0))]

    def hit_zero(theta, y):
        return y[0] - U_TOL
    hit_zero.terminal = True
    hit_zero.direction = -1

    def stall(theta, y):
        if y[0] <= U_GUARD:
            return 1.0
        lr, j = log_ratio(theta, y[0])
        if lr is None:
            return -1.0
        return math.expm1(2.0 * lr)
    stall.terminal = True
    stall.direction = -1

    sol = solve_ivp(rhs, (theta_start, theta_end), [u0], method="RK45",
                    events=[hit_zero, stall], rtol=rtol, atol=atol,
                    max_step=max_step, dense_output=True)
    grid = np.linspace(theta_start, sol.t[-1], trace_points)
    trace = tuple(zip(grid.tolist(), sol.sol(grid)[0].tolist()))

    if sol.t_events[0].size:
        return VanishingAngleResult(Status.VANISHES, float(sol.t_events[0][0]), "u reached tolerance", trace)
    if sol.t_events[1].size:
        return VanishingAngleResult(Status.NO_VANISHING, float(sol.t_events[1][0]),
                                    "radicand reached zero before blow-up", trace)
    if sol.status != 0:
        raise RuntimeError(f"integration failed: {sol.message}")
    reason = "validity cap reached" if theta_end < math.pi / 2 - 1e-6 else "reached pi/2"
    return VanishingAngleResult(Status.NO_VANISHING, float(sol.t[-1]), reason, trace)


@lru_cache(maxsize=None)
def theta1(k: int, alpha: float, **kw) -> VanishingAngleResult:
    return integrate_vn(k, JacobianBound.generic(alpha, k), **kw)


@lru_cache(maxsize=None)
def theta2(k: int, alpha: float, **kw) -> VanishingAngleResult:
    return integrate_vn(k, JacobianBound.limit(alpha), **kw)


def theta2_scaled_bound(k: int, alpha: float) -> float:
    """Upper bound on tan(theta2(k, alpha)) obtained from the k = 12 solution."""
    if k < 13:
        raise ValueError("scaling bound needs k >= 13")
    res = theta2(12, 12.0 * alpha / k)
    if not res.vanishes:
        raise RuntimeError(f"theta2(12, {12 * alpha / k}) has no vanishing angle")
    return 12.0 / k * math.tan(res.angle)


def cosine_chain(k: int, c: float) -> tuple[float, float]:
    """(2 arctan(2/k), arccos(1 - c/(k-1))): the scaled angle and the radius it must beat."""
    return 2.0 * math.atan(2.0 / k), math.acos(1.0 - c / (k - 1))


class Verdict(str, Enum):
    MINIMIZING = "MINIMIZING"
    INCONCLUSIVE = "INCONCLUSIVE"


def criterion(vanishing, normal_radius: float, margin: float = MARGIN) -> Verdict:
    """One-sided test: twice the vanishing angle must stay below the normal radius.

    ``vanishing`` is either a :class:`VanishingAngleResult` or a float upper
    bound on the tangent of the vanishing angle.
    """
    if isinstance(vanishing, VanishingAngleResult):
        if not vanishing.vanishes:
            return Verdict.INCONCLUSIVE
        angle = vanishing.angle
    else:
        if not math.isfinite(vanishing) or vanishing < 0:
            return Verdict.INCONCLUSIVE
        angle = math.atan(vanishing)
    if 2.0 * angle < normal_radius - margin:
        return Verdict.MINIMIZING
    return Verdict.INCONCLUSIVE
