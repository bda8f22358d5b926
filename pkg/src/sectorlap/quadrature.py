"""Adaptive Gauss-Legendre quadrature for complex integrands on segments and rays.

The scheme is fixed-order Gauss-Legendre per panel with bisection refinement.
Each panel carries a two-level error estimate |GL(halves) - GL(panel)|; the
worst panel is split until the summed estimate meets

    est_error <= rel_tol * |value| + abs_floor

or the panel budget runs out (BudgetExceeded, never silent degradation).

Ray integrals over [0, inf) are truncated analytically: given a certified
envelope |f(t)| <= A e^{-m t}, the tail beyond T is bounded by A e^{-m T}/m
and T is chosen so that this bound is at most half of abs_floor.  The tail
bound is added to est_error, so doubling T never moves the result by more
than est_error.

When the integrand's dominant oscillation frequency is known, initial panel
lengths are capped at one period so the two-level estimate cannot alias a
rapidly rotating phase into false convergence.
"""

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BudgetExceeded, InvalidDecay

__all__ = [
    "QuadratureBudget",
    "DecayModel",
    "IntegralResult",
    "integrate_segment",
    "integrate_ray",
    "cauchy_kernel_check",
]

_NODE_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order not in _NODE_CACHE:
        _NODE_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _NODE_CACHE[order]


@dataclass(frozen=True)
class QuadratureBudget:
    rel_tol: float = 1e-10
    abs_floor: float = 1e-12
    max_panels: int = 4000
    panel_order: int = 16

    def __post_init__(self):
        if not (self.rel_tol >= 1e-14):
            raise ValueError(f"rel_tol must be >= 1e-14 (double precision floor), got {self.rel_tol}")
        if not (self.abs_floor > 0.0 and math.isfinite(self.abs_floor)):
            raise ValueError(f"abs_floor must be positive, got {self.abs_floor}")
        if not (isinstance(self.max_panels, int) and self.max_panels >= 1):
            raise ValueError(f"max_panels must be a positive integer, got {self.max_panels}")
        if not (isinstance(self.panel_order, int) and 2 <= self.panel_order <= 64):
            raise ValueError(f"panel_order must be an integer in [2, 64], got {self.panel_order}")
        if self.max_panels * self.panel_order > 10**7:
            raise ValueError(
                f"max_panels*panel_order={self.max_panels * self.panel_order} exceeds the 1e7 evaluation guard"
            )

    def tighten(self, factor: float = 100.0) -> "QuadratureBudget":
        """Budget for nested (inner) quadratures, ``factor`` times tighter."""
        return QuadratureBudget(
            rel_tol=max(1e-14, self.rel_tol / factor),
            abs_floor=max(1e-15, self.abs_floor / factor),
            max_panels=self.max_panels,
            panel_order=self.panel_order,
        )


@dataclass(frozen=True)
class DecayModel:
    """Certified envelope |f(t)| <= amplitude * e^{-rate * t} on [0, inf)."""

    rate: float
    amplitude: float

    def __post_init__(self):
        if not (math.isfinite(self.rate) and self.rate > 0.0):
            raise InvalidDecay(f"ray integration requires a positive decay rate, got {self.rate}")
        if not (math.isfinite(self.amplitude) and self.amplitude > 0.0):
            raise InvalidDecay(f"decay amplitude must be positive, got {self.amplitude}")

    def tail_bound(self, T: float) -> float:
        return self.amplitude * math.exp(-self.rate * T) / self.rate


@dataclass(frozen=True)
class IntegralResult:
    value: complex
    est_error: float
    truncation_T: float
    panels_used: int


def _eval_vector(fn: Callable, pts: np.ndarray) -> np.ndarray:
    vals = np.asarray(fn(pts), dtype=complex)
    if vals.shape != pts.shape:
        vals = np.broadcast_to(vals, pts.shape)
    return vals


def _gl_panel(fn, a: float, b: float, x: np.ndarray, w: np.ndarray) -> complex:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    vals = _eval_vector(fn, mid + half * x)
    return half * complex(np.dot(w, vals))


class _Panel:
    __slots__ = ("a", "b", "coarse", "left", "right", "fine", "err")

    def __init__(self, fn, a, b, x, w, coarse=None):
        self.a = a
        self.b = b
        mid = 0.5 * (a + b)
        self.coarse = _gl_panel(fn, a, b, x, w) if coarse is None else coarse
        self.left = _gl_panel(fn, a, mid, x, w)
        self.right = _gl_panel(fn, mid, b, x, w)
        self.fine = self.left + self.right
        self.err = abs(self.fine - self.coarse)


def _adaptive(fn, breakpoints, budget: QuadratureBudget) -> tuple[complex, float, int]:
    x, w = _gl_nodes(budget.panel_order)
    panels = [_Panel(fn, breakpoints[i], breakpoints[i + 1], x, w) for i in range(len(breakpoints) - 1)]
    if len(panels) > budget.max_panels:
        raise BudgetExceeded(
            f"initial subdivision needs {len(panels)} panels, budget allows {budget.max_panels}"
        )
    heap = []
    seq = 0
    for pan in panels:
        heapq.heappush(heap, (-pan.err, seq, pan))
        seq += 1
    total = sum(pan.fine for pan in panels)
    total_err = math.fsum(pan.err for pan in panels)

    while total_err > budget.rel_tol * abs(total) + budget.abs_floor:
        if len(heap) >= budget.max_panels:
            raise BudgetExceeded(
                f"panel budget {budget.max_panels} exhausted with est_error={total_err:.3e} "
                f"(target {budget.rel_tol * abs(total) + budget.abs_floor:.3e}); "
                "the integrand is harder than the budget allows"
            )
        neg_err, _, worst = heapq.heappop(heap)
        if neg_err == 0.0:
            # every remaining estimate is exactly zero yet the floor is unmet;
            # nothing further to refine
            heapq.heappush(heap, (neg_err, seq, worst))
            seq += 1
            break
        mid = 0.5 * (worst.a + worst.b)
        kids = (
            _Panel(fn, worst.a, mid, x, w, coarse=worst.left),
            _Panel(fn, mid, worst.b, x, w, coarse=worst.right),
        )
        total += kids[0].fine + kids[1].fine - worst.fine
        total_err += kids[0].err + kids[1].err - worst.err
        for kid in kids:
            heapq.heappush(heap, (-kid.err, seq, kid))
            seq += 1

    final = sorted((item[2] for item in heap), key=lambda pan: pan.a)
    value = complex(
        math.fsum(pan.fine.real for pan in final),
        math.fsum(pan.fine.imag for pan in final),
    )
    err = math.fsum(pan.err for pan in final)
    return value, err, len(final)


def _cap_breakpoints(breakpoints: list[float], osc_freq: float, limit: int) -> list[float]:
    """Split intervals so no initial panel exceeds one oscillation period."""
    if osc_freq <= 0.0:
        return breakpoints
    period = 2.0 * math.pi / osc_freq
    out = [breakpoints[0]]
    for a, b in zip(breakpoints, breakpoints[1:]):
        pieces = min(max(1, math.ceil((b - a) / period)), limit)
        for k in range(1, pieces + 1):
            out.append(a + (b - a) * k / pieces)
    if len(out) - 1 > limit:
        raise BudgetExceeded(
            f"oscillation cap requires {len(out) - 1} initial panels, budget allows {limit}"
        )
    return out


def integrate_segment(
    fn: Callable,
    a: float,
    b: float,
    budget: QuadratureBudget | None = None,
    osc_freq: float = 0.0,
) -> IntegralResult:
    """Integrate a complex-valued ``fn`` (vectorized over numpy arrays) on [a, b]."""
    budget = budget or QuadratureBudget()
    if not (math.isfinite(a) and math.isfinite(b) and a <= b):
        raise ValueError(f"segment endpoints must be finite with a <= b, got [{a}, {b}]")
    if a == b:
        return IntegralResult(0j, 0.0, 0.0, 0)
    pts = _cap_breakpoints([a, b], osc_freq, budget.max_panels)
    value, err, used = _adaptive(fn, pts, budget)
    return IntegralResult(value, err, 0.0, used)


def _ray_breakpoints(T: float, rate: float) -> list[float]:
    """Geometric seed panels: dense near 0 where the integrand lives."""
    pts = [0.0]
    step = min(1.0 / rate, T)
    t = step
    while t < T:
        pts.append(t)
        t *= 2.0
    pts.append(T)
    return pts


def integrate_ray(
    fn: Callable,
    decay: DecayModel,
    budget: QuadratureBudget | None = None,
    osc_freq: float = 0.0,
) -> IntegralResult:
    """Integrate ``fn`` on [0, inf) given a certified exponential envelope.

    The result's est_error includes both the adaptive two-level estimate and
    the analytic tail bound at the chosen truncation point.
    """
    budget = budget or QuadratureBudget()
    m, A = decay.rate, decay.amplitude
    # A e^{-m T} / m <= abs_floor / 2
    arg = 2.0 * A / (m * budget.abs_floor)
    if arg <= 1.0:
        # the whole integral is already below half the floor
        return IntegralResult(0j, A / m, 0.0, 0)
    T = math.log(arg) / m
    pts = _cap_breakpoints(_ray_breakpoints(T, m), osc_freq, budget.max_panels)
    value, err, used = _adaptive(fn, pts, budget)
    return IntegralResult(value, err + decay.tail_bound(T), T, used)


def cauchy_kernel_check(z: complex, budget: QuadratureBudget | None = None) -> IntegralResult:
    """Residual of the kernel identity 1/z = -int_0^inf e^{w z} dw for Re z < 0.

    Returns an IntegralResult whose value is the complex residual
    1/z + int_0^inf e^{w z} dw; |value| should sit at quadrature tolerance.
    """
    z = complex(z)
    if not z.real < 0.0:
        raise InvalidDecay(f"kernel identity requires Re z < 0, got Re z = {z.real}")
    res = integrate_ray(
        lambda t: np.exp(t * z),
        DecayModel(rate=-z.real, amplitude=1.0),
        budget,
        osc_freq=abs(z.imag),
    )
    return IntegralResult(1.0 / z + res.value, res.est_error, res.truncation_T, res.panels_used)
