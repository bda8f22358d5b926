"""Probes of the transform's boundary behaviour.

Three independent experiments, all built on the transform machinery:

* ``blowup_scan`` walks the boundary line of Omega_theta through a window
  centered on its closest point to the origin and approaches it along the
  inward normal w(delta) = w_b - delta e^{-i theta}, whose margin is exactly
  delta.  A singularity on the boundary shows up as |g| growing like
  delta^{-1}; the scan reports the location (refined by a parabola vertex on
  1/|g|^2, exact for simple poles), the fitted growth exponent, and whether
  any blow-up was seen at all (quiet boundaries are reported, not raised).

* ``radius_scan`` fits the distance from an interior point to the nearest
  singularity of g out of Taylor coefficients computed by discrete Cauchy
  integrals on a circle of radius 0.8x the margin.  The fit regresses
  ln|c_n| against n over the trailing half of the coefficients; for a simple
  pole at distance R the slope is exactly -ln R.

* ``gamma_prime_diagnostics`` measures the growth in s of the three pieces
  J1 (chord), J2, J3 (outward rays) of a truncated-contour representation
  evaluated at z = s e^{i theta}, and compares their fitted exponential
  rates against -inf_{contour} Re(w e^{i theta}).  If the indicator exceeds
  that infimum, f grows strictly faster than any such representation allows,
  which is the contradiction the diagnostics make quantitative.  Oracle
  entries only.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .catalog import TestFunction
from .errors import IllConditioned
from .indicator import OFFSET_CAP, indicator_value
from .laplace import DELTA_MIN_DEFAULT, _ray_transform
from .quadrature import DecayModel, QuadratureBudget, integrate_ray, integrate_segment

__all__ = [
    "BlowupScan",
    "RadiusScan",
    "GammaPrimeDiagnostics",
    "ProbeReport",
    "blowup_scan",
    "radius_scan",
    "gamma_prime_diagnostics",
    "probe_report",
    "J_SLOPE_SENTINEL",
]

J_SLOPE_SENTINEL = -1e9


@dataclass(frozen=True)
class BlowupScan:
    theta: float
    detected: bool
    boundary_point: Optional[complex]
    blowup_exponent: Optional[float]
    growth_ratio: float
    offset: float


@dataclass(frozen=True)
class RadiusScan:
    center: complex
    theta: float
    radius_estimate: float
    predicted_distance: float
    margin: float


@dataclass(frozen=True)
class GammaPrimeDiagnostics:
    theta: float
    q: complex
    r: complex
    slopes: tuple[float, float, float]
    inf_projection: float


@dataclass(frozen=True)
class ProbeReport:
    theta: float
    boundary_point: Optional[complex]
    blowup_exponent: Optional[float]
    detected: bool
    radius_estimate: Optional[float]
    predicted_distance: Optional[float]
    J_slopes: Optional[tuple[float, float, float]] = None


def _g_values(fn, theta, omegas, budget, g_source, delta_min):
    if g_source != "numeric" and fn.transform_oracle is not None:
        return np.asarray(fn.transform_oracle(np.asarray(omegas, dtype=complex)), dtype=complex)
    if g_source == "oracle":
        raise ValueError(f"entry {fn.id!r} has no transform oracle")
    ind, exact = indicator_value(fn, theta)
    return np.array(
        [_ray_transform(fn, theta, complex(w), budget, ind, exact, delta_min).value for w in omegas]
    )


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _refine_peak(fun, lo: float, hi: float, iters: int = 60) -> float:
    """Golden-section maximizer; assumes a single peak inside [lo, hi]."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fun(d)
    return 0.5 * (a + b)


def blowup_scan(
    fn: TestFunction,
    theta: float,
    delta_grid: np.ndarray | None = None,
    sweep_halfwidth: float = 4.0,
    sweep_points: int = 128,
    budget: QuadratureBudget | None = None,
    g_source: str = "auto",
    detection_ratio: float = 10.0,
) -> BlowupScan:
    """Sweep the boundary of Omega_theta for blow-up of |g| along inward normals."""
    budget = budget or QuadratureBudget()
    has_oracle = g_source != "numeric" and fn.transform_oracle is not None
    if delta_grid is None:
        # numeric transforms cannot go below the default admission margin
        delta_grid = np.geomspace(1e-1, 1e-4 if has_oracle else 1e-3, 13 if has_oracle else 7)
    deltas = np.sort(np.asarray(delta_grid, dtype=float))[::-1]
    delta_min = float(deltas[-1])

    ind, _ = indicator_value(fn, theta)
    offset = min(-ind, OFFSET_CAP)
    back = cmath.exp(-1j * theta)
    taus = np.linspace(-sweep_halfwidth, sweep_halfwidth, sweep_points)

    def boundary(tau):
        return (offset + 1j * tau) * back

    far = _g_values(fn, theta, [boundary(t) - deltas[0] * back for t in taus], budget, g_source, delta_min / 2)
    far_mags = np.abs(far)
    if float(np.max(far_mags)) == 0.0:
        return BlowupScan(theta, False, None, None, 0.0, offset)

    # The coarse sweep locates the peak only to grid resolution, which would
    # cap |g| near the boundary far below its true blow-up; refine tau at the
    # outermost (smooth) level before descending.
    j = int(np.argmax(far_mags))
    lo = taus[max(j - 1, 0)]
    hi = taus[min(j + 1, len(taus) - 1)]
    tau_star = _refine_peak(
        lambda t: float(
            np.abs(_g_values(fn, theta, [boundary(t) - deltas[0] * back], budget, g_source, delta_min / 2))[0]
        ),
        lo,
        hi,
    )
    point = boundary(tau_star)

    mags = np.abs(
        _g_values(fn, theta, [point - d * back for d in deltas], budget, g_source, delta_min / 2)
    )
    ratio = float(mags[-1] / mags[0]) if mags[0] > 0 else 0.0
    if ratio < detection_ratio:
        return BlowupScan(theta, False, None, None, ratio, offset)
    ok = mags > 0
    slope = float(np.polyfit(np.log(deltas[ok]), np.log(mags[ok]), 1)[0]) if ok.sum() >= 2 else math.nan
    return BlowupScan(theta, True, point, slope, ratio, offset)


def radius_scan(
    fn: TestFunction,
    center: complex,
    degree: int = 24,
    budget: QuadratureBudget | None = None,
    theta: float | None = None,
    g_source: str = "auto",
    circle_points: int = 256,
) -> RadiusScan:
    """Distance to the nearest singularity of g from Taylor coefficients at ``center``."""
    budget = budget or QuadratureBudget()
    center = complex(center)
    if degree < 8:
        raise ValueError(f"degree must be >= 8 for a stable fit, got {degree}")
    if theta is None:
        # direction of largest margin, scanned over the entry's admissible fan
        thetas = np.linspace(-fn.spec.alpha, fn.spec.alpha, 129)
        margins = [
            min(-indicator_value(fn, float(t))[0], OFFSET_CAP)
            - (center * cmath.exp(1j * float(t))).real
            for t in thetas
        ]
        theta = float(thetas[int(np.argmax(margins))])
    ind, _ = indicator_value(fn, theta)
    margin = min(-ind, OFFSET_CAP) - (center * cmath.exp(1j * theta)).real
    if not margin > 0:
        raise ValueError(f"center {center} lies outside Omega_theta at theta={theta}")

    rho = 0.8 * margin
    phis = 2.0 * math.pi * np.arange(circle_points) / circle_points
    ring = center + rho * np.exp(1j * phis)
    vals = _g_values(fn, theta, ring, budget, g_source, min(DELTA_MIN_DEFAULT, 0.1 * margin))
    coeffs = np.fft.fft(vals) / circle_points
    n = np.arange(degree + 1)
    cn = np.abs(coeffs[: degree + 1]) / rho**n

    lo = degree // 2
    used = cn[lo:]
    if np.any(used < 1e-280) or not np.all(np.isfinite(used)):
        raise IllConditioned(
            f"Taylor coefficients underflow before degree {degree}; "
            "g is too flat at this center for a radius fit"
        )
    slope = float(np.polyfit(n[lo:], np.log(used), 1)[0])
    radius = math.exp(-slope)

    if fn.singularities_of_g is not None and len(fn.singularities_of_g) > 0:
        predicted = min(abs(center - s) for s in fn.singularities_of_g)
    else:
        predicted = margin
    return RadiusScan(center, theta, radius, predicted, margin)


def _fit_slope(s: np.ndarray, values: np.ndarray) -> float:
    """Regression slope of ln values against s over the trailing half."""
    mask = values > 0
    if mask.sum() < 2:
        return J_SLOPE_SENTINEL
    s_ok, v_ok = s[mask], np.log(values[mask])
    half = len(s_ok) // 2
    return float(np.polyfit(s_ok[half:], v_ok[half:], 1)[0])


def gamma_prime_diagnostics(
    fn: TestFunction,
    alpha: float,
    theta: float,
    q: complex,
    r: complex,
    s_grid: np.ndarray | None = None,
    budget: QuadratureBudget | None = None,
) -> GammaPrimeDiagnostics:
    """Growth rates of the chord-plus-rays pieces against the geometric bound.

    The truncated contour replaces the V by the chord [q, r] plus the outward
    rays r + i e^{-i alpha} [0, inf) and q - i e^{i alpha} [0, inf); its three
    absolute leg integrals at z = s e^{i theta} are

        J_i(s) = int |g(w)| e^{-s Re(w e^{i theta})} |dw|.

    Each fitted slope of ln J_i against s must stay at or below
    -inf Re(w e^{i theta}) over the truncated contour; an indicator strictly
    above that infimum therefore rules the representation out.  Requires a
    transform oracle, pieces clear of its singularities, and |theta| < alpha.
    """
    budget = budget or QuadratureBudget()
    if fn.transform_oracle is None:
        raise ValueError(f"entry {fn.id!r} has no transform oracle; diagnostics need exact g")
    if not (0.0 < alpha < math.pi / 2):
        raise ValueError(f"alpha must lie in (0, pi/2), got {alpha}")
    if not abs(theta) < alpha:
        raise ValueError(f"need |theta| < alpha for positive ray decay, got theta={theta}")
    q, r = complex(q), complex(r)
    if s_grid is None:
        s_grid = np.linspace(4.0, 28.0, 9)
    s_grid = np.asarray(s_grid, dtype=float)

    phase = cmath.exp(1j * theta)
    down = -1j * cmath.exp(1j * alpha)
    up = 1j * cmath.exp(-1j * alpha)
    g = fn.transform_oracle

    for sing in fn.singularities_of_g or ():
        clear = min(
            _point_segment_distance(sing, q, r),
            _point_ray_distance(sing, r, up),
            _point_ray_distance(sing, q, down),
        )
        if clear < 1e-6:
            raise ValueError(f"singularity {sing} lies on the truncated contour (distance {clear:.2e})")

    # Re(w e^{i theta}) is linear on the chord and increasing along both rays
    inf_proj = min((q * phase).real, (r * phase).real)

    # sampled sup|g| with headroom feeds the ray truncation; diagnostics-grade only
    probe_t = np.geomspace(1e-3, 1e3, 64)
    sup_up = 3.0 * float(np.max(np.abs(g(r + up * probe_t))))
    sup_down = 3.0 * float(np.max(np.abs(g(q + down * probe_t))))

    j1 = np.empty(len(s_grid))
    j2 = np.empty(len(s_grid))
    j3 = np.empty(len(s_grid))
    chord = r - q
    for k, s in enumerate(s_grid):
        seg = integrate_segment(
            lambda u: np.abs(g(q + chord * u)) * np.exp(-s * ((q + chord * u) * phase).real) * abs(chord),
            0.0,
            1.0,
            budget,
        )
        j1[k] = abs(seg.value)
        ray_up = integrate_ray(
            lambda t: np.abs(g(r + up * t)) * np.exp(-s * ((r + up * t) * phase).real),
            DecayModel(rate=s * math.sin(alpha - theta), amplitude=sup_up * math.exp(-s * (r * phase).real)),
            budget,
        )
        j2[k] = abs(ray_up.value)
        ray_down = integrate_ray(
            lambda t: np.abs(g(q + down * t)) * np.exp(-s * ((q + down * t) * phase).real),
            DecayModel(rate=s * math.sin(alpha + theta), amplitude=sup_down * math.exp(-s * (q * phase).real)),
            budget,
        )
        j3[k] = abs(ray_down.value)

    slopes = (_fit_slope(s_grid, j1), _fit_slope(s_grid, j2), _fit_slope(s_grid, j3))
    return GammaPrimeDiagnostics(theta, q, r, slopes, inf_proj)


def _point_segment_distance(pt: complex, a: complex, b: complex) -> float:
    ab = b - a
    if ab == 0:
        return abs(pt - a)
    t = ((pt - a) * ab.conjugate()).real / abs(ab) ** 2
    t = min(1.0, max(0.0, t))
    return abs(pt - (a + t * ab))


def _point_ray_distance(pt: complex, start: complex, direction: complex) -> float:
    t = ((pt - start) * direction.conjugate()).real / abs(direction) ** 2
    t = max(0.0, t)
    return abs(pt - (start + t * direction))


def probe_report(
    fn: TestFunction,
    theta: float,
    budget: QuadratureBudget | None = None,
    g_source: str = "auto",
    center: complex | None = None,
    q: complex | None = None,
    r: complex | None = None,
    alpha: float | None = None,
) -> ProbeReport:
    """Bundle the boundary sweep with a radius scan (and J diagnostics when asked)."""
    scan = blowup_scan(fn, theta, budget=budget, g_source=g_source)
    radius = None
    predicted = None
    if center is None:
        # default center: unit margin inward from the boundary's closest point to the origin
        center = (scan.offset - 1.0) * cmath.exp(-1j * theta)
    try:
        rs = radius_scan(fn, center, budget=budget, theta=theta, g_source=g_source)
        radius, predicted = rs.radius_estimate, rs.predicted_distance
    except (IllConditioned, ValueError):
        pass
    slopes = None
    if q is not None and r is not None:
        diag = gamma_prime_diagnostics(
            fn, alpha if alpha is not None else min(fn.spec.alpha, math.pi / 4), theta, q, r, budget=budget
        )
        slopes = diag.slopes
    return ProbeReport(
        theta=theta,
        boundary_point=scan.boundary_point,
        blowup_exponent=scan.blowup_exponent,
        detected=scan.detected,
        radius_estimate=radius,
        predicted_distance=predicted,
        J_slopes=slopes,
    )
