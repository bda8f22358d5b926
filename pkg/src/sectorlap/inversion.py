"""Reconstruction of f from its transform by integration over the V contour.

With the contour's increasing-parameter traversal (in along the lower leg,
out along the upper), the inversion integral splits into two ray integrals:

    f(z) =   i e^{+i alpha} int_0^inf g(p - i e^{+i alpha} u) e^{-(p - i e^{+i alpha} u) z} du
           + i e^{-i alpha} int_0^inf g(p + i e^{-i alpha} t) e^{-(p + i e^{-i alpha} t) z} dt

(the lower leg's dw/dt is +i e^{i alpha} because the contour parameter runs
opposite to the leg parameter there).  For z = |z| e^{i phi} inside the open
sector the integrand decays like e^{-u |z| sin(alpha + phi)} on the lower leg
and e^{-t |z| sin(alpha - phi)} on the upper one, which is why an angular
margin min(alpha - phi, alpha + phi) >= delta_ang is enforced.

g comes either from the entry's transform oracle or from nested numeric
transforms along theta = -+ alpha with a budget 100x tighter than the outer
one.  |g| is bounded on the legs by (K / 2 pi) / -(h + p cos alpha), which
feeds the outer truncation.

``cauchy_path_check`` verifies the same identity in its pre-interchange form,

    2 pi i f(z) = int_{e^{-i alpha} ray} f(zeta) e^{p (zeta - z)} / (zeta - z) dzeta
                - int_{e^{+i alpha} ray} (same integrand) dzeta,

which exercises the boundary-ray route without any transform in the middle.
"""

import cmath
import math
from dataclasses import dataclass
from statistics import median
from typing import Optional

import numpy as np

from .catalog import TestFunction, type_for
from .errors import AngularMarginTooSmall, OutsideSector, SectorLapError
from .geometry import ContourGamma, SectorSpec, build_gamma, sector_contains
from .indicator import indicator_value
from .laplace import DELTA_MIN_DEFAULT, _ray_transform
from .quadrature import DecayModel, IntegralResult, QuadratureBudget, integrate_ray

__all__ = [
    "DELTA_ANG_DEFAULT",
    "ReconstructionQuery",
    "reconstruct",
    "RoundtripRow",
    "RoundtripReport",
    "roundtrip_report",
    "cauchy_path_check",
]

DELTA_ANG_DEFAULT = 0.05


@dataclass(frozen=True)
class ReconstructionQuery:
    fn: TestFunction
    gamma: ContourGamma
    z: complex
    budget: QuadratureBudget = QuadratureBudget()
    g_source: str = "auto"
    delta_ang: float = DELTA_ANG_DEFAULT
    inner_factor: float = 100.0

    def __post_init__(self):
        if self.g_source not in ("auto", "oracle", "numeric"):
            raise ValueError(f"g_source must be auto|oracle|numeric, got {self.g_source!r}")


def _g_evaluator(q: ReconstructionQuery, leg_theta: float):
    """Vectorized w -> g(w) for one leg, oracle-backed or nested-numeric."""
    fn = q.fn
    if q.g_source != "numeric" and fn.transform_oracle is not None:
        return fn.transform_oracle
    if q.g_source == "oracle":
        raise ValueError(f"entry {fn.id!r} has no transform oracle")
    inner = q.budget.tighten(q.inner_factor)
    ind, exact = indicator_value(fn, leg_theta)

    def g(ws):
        arr = np.atleast_1d(np.asarray(ws, dtype=complex))
        out = np.array(
            [
                _ray_transform(fn, leg_theta, complex(w), inner, ind, exact, DELTA_MIN_DEFAULT).value
                for w in arr
            ]
        )
        return out if np.ndim(ws) else out[0]

    return g


def reconstruct(q: ReconstructionQuery) -> IntegralResult:
    """f(z) from g by the two-leg contour integral; result sums both legs."""
    z = complex(q.z)
    alpha, p = q.gamma.alpha, q.gamma.p
    spec = SectorSpec(alpha=alpha, h=0.0)
    if not sector_contains(spec, z, closed=False):
        raise OutsideSector(f"z={z} is not inside the open sector of half-angle {alpha}")
    phi = cmath.phase(z)
    ang = min(alpha - phi, alpha + phi)
    if not ang >= q.delta_ang:
        raise AngularMarginTooSmall(
            f"z={z} has angular margin {ang:.4f} < delta_ang={q.delta_ang}; "
            "the leg integrals would decay too slowly"
        )

    h = type_for(q.fn, alpha)
    leg_gap = -(h + p * math.cos(alpha))
    if not leg_gap > 0.0:
        raise SectorLapError(
            f"contour apex violates p*cos(alpha) < -h for this entry (gap {leg_gap!r})"
        )
    g_bound = q.fn.envelope_const / (2.0 * math.pi) / leg_gap
    amp = g_bound * math.exp(-p * z.real)

    total = 0j
    err = 0.0
    t_max = 0.0
    panels = 0
    for leg_theta, leg_dir in ((-alpha, q.gamma.lower_direction), (alpha, q.gamma.upper_direction)):
        g = _g_evaluator(q, leg_theta)
        rate = abs(z) * math.sin(alpha + (phi if leg_theta < 0 else -phi))
        jac = 1j * cmath.exp(1j * alpha) if leg_theta < 0 else 1j * cmath.exp(-1j * alpha)
        coeff = -leg_dir * z  # exponent of e^{-w(t) z} is -p z + coeff * t

        def integrand(ts, _dir=leg_dir, _g=g, _jac=jac):
            ws = p + _dir * ts
            return _jac * _g(ws) * np.exp(-ws * z)

        res = integrate_ray(
            integrand,
            DecayModel(rate=rate, amplitude=amp),
            q.budget,
            osc_freq=abs(coeff.imag),
        )
        total += res.value
        err += res.est_error
        t_max = max(t_max, res.truncation_T)
        panels += res.panels_used
    return IntegralResult(total, err, t_max, panels)


@dataclass(frozen=True)
class RoundtripRow:
    z: complex
    expected: complex
    reconstructed: Optional[complex]
    abs_residual: float
    rel_residual: float
    est_error: float
    error: Optional[str] = None


@dataclass(frozen=True)
class RoundtripReport:
    rows: tuple[RoundtripRow, ...]
    max_abs: float
    max_rel: float
    median_rel: float
    failures: int


def roundtrip_report(
    fn: TestFunction,
    spec: SectorSpec,
    p: float,
    z_grid,
    budget: QuadratureBudget | None = None,
    g_source: str = "auto",
) -> RoundtripReport:
    """Reconstruct f on a z grid and compare with direct evaluation.

    Per-point failures are recorded in their row, not raised; the summary
    aggregates over the successful points.
    """
    budget = budget or QuadratureBudget()
    gamma = build_gamma(spec, p)
    rows = []
    for z in z_grid:
        z = complex(z)
        expected = complex(fn.evaluate(z))
        try:
            res = reconstruct(ReconstructionQuery(fn, gamma, z, budget, g_source))
        except SectorLapError as exc:
            rows.append(
                RoundtripRow(z, expected, None, math.nan, math.nan, math.nan, f"{type(exc).__name__}: {exc}")
            )
            continue
        abs_res = abs(res.value - expected)
        rel_res = abs_res / abs(expected) if expected != 0 else abs_res
        rows.append(RoundtripRow(z, expected, res.value, abs_res, rel_res, res.est_error))
    good = [r for r in rows if r.error is None]
    return RoundtripReport(
        rows=tuple(rows),
        max_abs=max((r.abs_residual for r in good), default=math.nan),
        max_rel=max((r.rel_residual for r in good), default=math.nan),
        median_rel=median([r.rel_residual for r in good]) if good else math.nan,
        failures=len(rows) - len(good),
    )


def _ray_distance(z: complex, theta_ray: float) -> float:
    """Distance from z to the ray e^{i theta_ray} [0, inf)."""
    rel = cmath.phase(z * cmath.exp(-1j * theta_ray))
    if abs(rel) >= math.pi / 2:
        return abs(z)
    return abs(z) * abs(math.sin(rel))


def cauchy_path_check(
    fn: TestFunction,
    spec: SectorSpec,
    p: float,
    z: complex,
    budget: QuadratureBudget | None = None,
    delta_ang: float = DELTA_ANG_DEFAULT,
) -> tuple[float, float]:
    """Residual |2 pi i f(z) - (R1 - R2)| of the boundary-ray identity.

    R1 and R2 integrate f(zeta) e^{p(zeta-z)} / (zeta - z) over the lower
    (theta = -alpha) and upper (theta = +alpha) boundary rays.  Returns
    (residual, combined est_error); the residual should sit at quadrature
    tolerance for admissible (spec, p, z).
    """
    budget = budget or QuadratureBudget()
    gamma = build_gamma(spec, p)  # validates the apex gate
    z = complex(z)
    if not sector_contains(spec, z, closed=False):
        raise OutsideSector(f"z={z} is not inside the open sector of half-angle {spec.alpha}")
    phi = cmath.phase(z)
    if not min(spec.alpha - phi, spec.alpha + phi) >= delta_ang:
        raise AngularMarginTooSmall(f"z={z} is within {delta_ang} of a boundary ray")

    total = 0j
    err = 0.0
    for sign in (-1.0, +1.0):
        theta_ray = sign * spec.alpha
        d = cmath.exp(1j * theta_ray)
        ind, exact = indicator_value(fn, theta_ray)
        rate = -(ind + p * math.cos(spec.alpha))
        if not exact:
            rate *= 0.9
        dist = _ray_distance(z, theta_ray)
        amp = fn.envelope_const * math.exp(-p * z.real) / dist
        epz = cmath.exp(-p * z)

        def integrand(ts, _d=d, _epz=epz):
            zeta = ts * _d
            return fn.weighted_eval(zeta, p) * _epz / (zeta - z) * _d

        res = integrate_ray(
            integrand,
            DecayModel(rate=rate, amplitude=amp),
            budget,
            osc_freq=abs(p) * math.sin(spec.alpha),
        )
        total += -sign * res.value  # lower ray enters with +, upper with -
        err += res.est_error
    lhs = 2j * math.pi * complex(fn.evaluate(z))
    return abs(lhs - total), err
