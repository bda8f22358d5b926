"""Directional Laplace transforms and their concatenation over a fan of directions.

The directional transform along theta is

    g_theta(w) = (1/(2 pi i)) int_0^inf f(t e^{i theta}) e^{w t e^{i theta}} e^{i theta} dt,

absolutely convergent when the margin

    m(theta, w) = -I(theta) - Re(w e^{i theta})

is positive (I is the indicator).  The integrand envelope is then
(K / 2 pi) e^{-m t} with K the entry's envelope constant, which is what the
ray quadrature's analytic truncation uses.  Different admissible directions
agree on overlaps, so the concatenated transform simply evaluates along the
direction of largest margin.

Margins are computed from the indicator oracle when one exists; otherwise
from the numeric estimate with a 10% haircut on the decay rate, since an
estimated indicator can be slightly low.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .catalog import TestFunction, type_for
from .errors import OutsideDomain, OutsideUnion
from .geometry import ContourGamma, GrowthCertificate, HalfPlane
from .indicator import OFFSET_CAP, estimate_indicator, indicator_value
from .quadrature import DecayModel, IntegralResult, QuadratureBudget, integrate_ray

__all__ = [
    "DELTA_MIN_DEFAULT",
    "TransformQuery",
    "ConcatenatedTransform",
    "directional_transform",
    "select_direction",
    "concatenated_transform",
    "consistency_residual",
    "gamma_bound_check",
]

DELTA_MIN_DEFAULT = 1e-3
_RATE_HAIRCUT = 0.9
_GOLDEN_ITERS = 48
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class TransformQuery:
    fn: TestFunction
    theta: float
    omega: complex
    budget: QuadratureBudget = QuadratureBudget()
    delta_min: float = DELTA_MIN_DEFAULT
    indicator_source: str = "auto"

    def __post_init__(self):
        if not abs(self.theta) <= self.fn.spec.alpha + 1e-12:
            raise ValueError(
                f"theta={self.theta} outside the entry's sector |theta| <= {self.fn.spec.alpha}"
            )
        if not self.delta_min > 0:
            raise ValueError(f"delta_min must be positive, got {self.delta_min}")


def _ray_transform(
    fn: TestFunction,
    theta: float,
    omega: complex,
    budget: QuadratureBudget,
    indicator: float,
    exact_indicator: bool,
    delta_min: float,
) -> IntegralResult:
    direction = cmath.exp(1j * theta)
    margin = min(-indicator - (omega * direction).real, OFFSET_CAP)
    if not margin >= delta_min:
        raise OutsideDomain(
            f"omega={omega} has margin {margin:.3e} < delta_min={delta_min:.3e} "
            f"in Omega_theta at theta={theta}"
        )
    rate = margin if exact_indicator else _RATE_HAIRCUT * margin
    prefactor = direction / (2j * math.pi)
    integrand = lambda t: prefactor * fn.weighted_eval(t * direction, omega)
    decay = DecayModel(rate=rate, amplitude=fn.envelope_const / (2.0 * math.pi))
    return integrate_ray(integrand, decay, budget, osc_freq=abs((omega * direction).imag))


def directional_transform(query: TransformQuery) -> IntegralResult:
    """g_theta(omega) by adaptive ray quadrature; OutsideDomain below delta_min margin."""
    ind, exact = indicator_value(query.fn, query.theta, query.indicator_source)
    return _ray_transform(
        query.fn, query.theta, query.omega, query.budget, ind, exact, query.delta_min
    )


@dataclass(frozen=True)
class ConcatenatedTransform:
    """Immutable bundle of an entry with its fan of half-planes on [-alpha, alpha].

    When the entry has an indicator oracle the offsets come from it directly;
    otherwise they are interpolated from numeric estimates precomputed on a
    theta grid at construction, so the object stays immutable and cheap to
    query afterwards.
    """

    fn: TestFunction
    alpha: float
    min_margin: float = DELTA_MIN_DEFAULT
    _grid_thetas: Optional[tuple[float, ...]] = None
    _grid_offsets: Optional[tuple[float, ...]] = None

    @classmethod
    def build(
        cls,
        fn: TestFunction,
        alpha: float | None = None,
        indicator_source: str = "auto",
        min_margin: float = DELTA_MIN_DEFAULT,
        grid_points: int = 65,
    ) -> "ConcatenatedTransform":
        eff = min(alpha, fn.spec.alpha) if alpha is not None else fn.spec.alpha
        if not (0.0 < eff < math.pi / 2):
            raise ValueError(f"effective alpha must lie in (0, pi/2), got {eff}")
        use_oracle = indicator_source != "numeric" and fn.indicator_oracle is not None
        if indicator_source == "oracle" and fn.indicator_oracle is None:
            raise ValueError(f"entry {fn.id!r} has no indicator oracle")
        if use_oracle:
            return cls(fn=fn, alpha=eff, min_margin=min_margin)
        thetas = np.linspace(-eff, eff, grid_points)
        offsets = tuple(
            min(-estimate_indicator(fn, float(t)).value, OFFSET_CAP) for t in thetas
        )
        return cls(
            fn=fn,
            alpha=eff,
            min_margin=min_margin,
            _grid_thetas=tuple(float(t) for t in thetas),
            _grid_offsets=offsets,
        )

    @property
    def exact(self) -> bool:
        return self._grid_thetas is None

    def offset(self, theta: float) -> float:
        if self.exact:
            return min(-max(self.fn.indicator_oracle(theta), -OFFSET_CAP), OFFSET_CAP)
        return float(np.interp(theta, self._grid_thetas, self._grid_offsets))

    def halfplane(self, theta: float) -> HalfPlane:
        return HalfPlane(theta=theta, offset=self.offset(theta))

    def margin(self, omega: complex, theta: float) -> float:
        return self.offset(theta) - (omega * cmath.exp(1j * theta)).real


def select_direction(ct: ConcatenatedTransform, omega: complex) -> float:
    """Direction of largest margin, via coarse scan plus golden-section refinement.

    Ties (within 1e-9 relative) break toward the smallest |theta|.  Raises
    OutsideUnion when even the best margin falls below ct.min_margin.
    """
    lo, hi = -ct.alpha, ct.alpha
    thetas = np.linspace(lo, hi, 65)
    if 0.0 not in thetas:
        thetas = np.sort(np.append(thetas, 0.0))
    margins = np.array([ct.margin(omega, float(t)) for t in thetas])
    best = float(np.max(margins))
    tol = 1e-9 * (1.0 + abs(best))
    tied = thetas[margins >= best - tol]
    theta0 = float(tied[np.argmin(np.abs(tied))])

    # golden-section refinement inside the bracketing coarse cells
    step = thetas[1] - thetas[0]
    a = max(lo, theta0 - step)
    b = min(hi, theta0 + step)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = ct.margin(omega, c)
    fd = ct.margin(omega, d)
    for _ in range(_GOLDEN_ITERS):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = ct.margin(omega, c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = ct.margin(omega, d)
    theta_g = 0.5 * (a + b)
    m_g = ct.margin(omega, theta_g)
    m_0 = ct.margin(omega, theta0)

    theta_star, m_star = (theta_g, m_g) if m_g > m_0 + tol else (theta0, m_0)
    if abs(m_g - m_0) <= tol and abs(theta0) < abs(theta_g):
        theta_star, m_star = theta0, m_0
    if not m_star >= ct.min_margin:
        raise OutsideUnion(
            f"omega={omega} lies outside the union of half-planes: best margin "
            f"{m_star:.3e} at theta={theta_star:.6f} is below min_margin={ct.min_margin:.3e}"
        )
    return theta_star


def concatenated_transform(
    ct: ConcatenatedTransform, omega: complex, budget: QuadratureBudget | None = None
) -> IntegralResult:
    """g(omega) evaluated along the best direction of the fan."""
    budget = budget or QuadratureBudget()
    theta = select_direction(ct, omega)
    return _ray_transform(
        ct.fn,
        theta,
        omega,
        budget,
        indicator=-ct.offset(theta),
        exact_indicator=ct.exact,
        delta_min=ct.min_margin,
    )


def consistency_residual(
    fn: TestFunction,
    theta1: float,
    theta2: float,
    omega: complex,
    budget: QuadratureBudget | None = None,
    delta_min: float = DELTA_MIN_DEFAULT,
) -> tuple[float, float]:
    """|g_theta1(w) - g_theta2(w)| on an overlap, with the combined error estimate.

    Well-definedness of the concatenation predicts a residual at quadrature
    tolerance; returns (residual, est_error_1 + est_error_2).
    """
    budget = budget or QuadratureBudget()
    r1 = directional_transform(TransformQuery(fn, theta1, omega, budget, delta_min))
    r2 = directional_transform(TransformQuery(fn, theta2, omega, budget, delta_min))
    return abs(r1.value - r2.value), r1.est_error + r2.est_error


def gamma_bound_check(
    fn: TestFunction,
    cert: GrowthCertificate,
    gamma: ContourGamma,
    samples: int = 200,
    budget: QuadratureBudget | None = None,
    t_range: tuple[float, float] = (1e-2, 1e2),
) -> float:
    """Worst excess of |g| over the uniform contour bound c_eps / -(h+eps+p cos(alpha)).

    Samples both legs of the contour at geometrically spaced leg parameters,
    computing g numerically along the leg's natural direction (theta = -alpha
    on the lower leg, +alpha on the upper); a nonpositive return certifies
    the bound at every sample.
    """
    budget = budget or QuadratureBudget()
    h = type_for(fn, gamma.alpha)
    denom = h + cert.epsilon + gamma.p * math.cos(gamma.alpha)
    if not denom < 0.0:
        raise ValueError(
            f"bound requires h + epsilon + p*cos(alpha) < 0, got {denom!r}; "
            "tighten epsilon or move the apex left"
        )
    bound = -cert.c_epsilon / denom
    ts = np.geomspace(t_range[0], t_range[1], samples)
    worst = -math.inf
    for leg_theta, leg_dir in (
        (-gamma.alpha, gamma.lower_direction),
        (gamma.alpha, gamma.upper_direction),
    ):
        ind, exact = indicator_value(fn, leg_theta)
        for t in ts:
            omega = gamma.p + leg_dir * float(t)
            res = _ray_transform(fn, leg_theta, omega, budget, ind, exact, DELTA_MIN_DEFAULT)
            worst = max(worst, abs(res.value) - bound)
    return worst
