"""Growth-rate (indicator) estimation along rays of the sector.

The indicator I(theta) = limsup_{s -> inf} ln|f(s e^{i theta})| / s is
estimated from samples on a geometric radius grid.  Zeros and underflowed
samples (|f| below 1e-300) are skipped; if every sample underflows, the
indicator is certified to lie below a -1e9 sentinel (the identically-zero
case).  The limsup surrogate is the maximum of sliding-window means of the
per-sample slopes r_k = ln|f(s_k e^{i theta})| / s_k, restricted to the
trailing half of the windows; their spread doubles as a crude confidence
width.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .catalog import TestFunction
from .geometry import HalfPlane

__all__ = [
    "IndicatorEstimate",
    "estimate_indicator",
    "omega_theta",
    "default_s_grid",
    "INDICATOR_SENTINEL",
    "OFFSET_CAP",
]

INDICATOR_SENTINEL = -1e9
OFFSET_CAP = 1e9
_UNDERFLOW = 1e-300


def default_s_grid(s_min: float = 1.0, s_max: float = 2.0**16, count: int = 64) -> np.ndarray:
    return np.geomspace(s_min, s_max, count)


@dataclass(frozen=True)
class IndicatorEstimate:
    theta: float
    value: float
    ci_width: float
    s_max: float


def estimate_indicator(
    fn: TestFunction,
    theta: float,
    s_grid: np.ndarray | None = None,
    window: int = 8,
) -> IndicatorEstimate:
    """Numeric indicator estimate at direction theta.

    Requires |theta| <= fn.spec.alpha and an increasing radius grid of at
    least 3*window points.
    """
    if not abs(theta) <= fn.spec.alpha + 1e-12:
        raise ValueError(f"direction theta={theta} outside the closed sector |theta| <= {fn.spec.alpha}")
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    s = np.asarray(default_s_grid() if s_grid is None else s_grid, dtype=float)
    if s.ndim != 1 or len(s) < 3 * window:
        raise ValueError(f"s_grid needs at least 3*window={3 * window} increasing points, got {len(s)}")
    if not (np.all(np.diff(s) > 0) and s[0] > 0):
        raise ValueError("s_grid must be positive and strictly increasing")

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        mags = np.abs(np.asarray(fn.evaluate(s * cmath.exp(1j * theta)), dtype=complex))
    keep = np.isfinite(mags) & (mags >= _UNDERFLOW)
    s_ok = s[keep]
    if len(s_ok) == 0:
        return IndicatorEstimate(theta=theta, value=INDICATOR_SENTINEL, ci_width=0.0, s_max=0.0)
    r = np.log(mags[keep]) / s_ok

    w = min(window, len(r))
    means = np.convolve(r, np.ones(w) / w, mode="valid")
    tail = means[len(means) // 2 :]
    value = float(np.max(tail))
    ci = float(np.max(tail) - np.min(tail))
    return IndicatorEstimate(theta=theta, value=value, ci_width=ci, s_max=float(s_ok[-1]))


def indicator_value(fn: TestFunction, theta: float, source: str = "auto") -> tuple[float, bool]:
    """Indicator at theta with its provenance: (value, is_exact).

    source: "auto" prefers the oracle, "oracle" requires it, "numeric"
    forces estimation.  Values are floored at the -1e9 sentinel.
    """
    if source not in ("auto", "oracle", "numeric"):
        raise ValueError(f"indicator source must be auto|oracle|numeric, got {source!r}")
    if source != "numeric" and fn.indicator_oracle is not None:
        return max(fn.indicator_oracle(theta), INDICATOR_SENTINEL), True
    if source == "oracle":
        raise ValueError(f"entry {fn.id!r} has no indicator oracle")
    return estimate_indicator(fn, theta).value, False


def omega_theta(fn: TestFunction, theta: float, source: str = "auto") -> HalfPlane:
    """The admissible half-plane Omega_theta = {w : Re(w e^{i theta}) < -I(theta)}.

    Offsets are capped at +1e9 so the identically-zero entry yields a
    well-defined (effectively unconstrained) half-plane.
    """
    value, _ = indicator_value(fn, theta, source)
    return HalfPlane(theta=theta, offset=min(-value, OFFSET_CAP))
