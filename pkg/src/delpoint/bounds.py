"""Risk-change interval for deleting one point, and the privacy-budget floor.

For a point with membership error eps_v (so t = eps_v + target is its d_v)
the deletion-induced risk change is bracketed by

    base - t * C   <=   change   <=   base + t * C

    base = L(w; D0) / (n-1) - ||s_yx - s_xx w||_2 / ((n-1) ||x_v||_2)
    C    = sigma / ||x_v||_2 * sqrt(gamma / (2 (n-1)))

The norm-floor variant replaces ||x_v||_2 by a dataset-wide lower bound B
(constant D instead of C).  The interval width 2 t C shrinks with t, which
is why near-target candidates with small feature norms are preferred.

Caveat, reported rather than silently resolved: the derivation of this
interval treats the bounded per-point quantity as the absolute residual
|y_v - <x_v, w>| in one step while the loss is its square.  Both readings
of the actual change are therefore emitted:

    interpretation A (squared loss):     (L0 - (y_v - <x_v,w>)^2) / (n-1)
    interpretation B (absolute residual): (L0 - |y_v - <x_v,w>|) / (n-1)

together with a containment flag for each.  The derivation also assumes
the change is nonnegative, which fails exactly for points whose loss
exceeds the mean; ``change_nonnegative`` flags that per point.

The privacy-budget floor after deleting a point with membership error
eps_v is

    max(ln[Phi(Phi_inv(alpha) - eps_v) + 1 - alpha], 0)

nonincreasing in eps_v and identically 0 for eps_v >= 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import Dataset, HyperParams
from .errors import (
    DomainError,
    FloorViolated,
    IndexOutOfRange,
    WouldEmptyDataset,
    ZeroFeatureNorm,
)
from .gauss import phi, phi_inv
from .lossgrad import as_weights, point_loss, risk
from .snr import advantage_target


@dataclass(frozen=True)
class RiskBounds:
    """Risk-change interval plus the dual-interpretation actuals."""

    lower: float
    upper: float
    constant: float                 # C (per_point) or D (norm_floor)
    variant: str                    # "per_point" | "norm_floor"
    b_floor: Optional[float]        # B, only for norm_floor
    actual_delta: float             # interpretation A: squared-loss change
    abs_residual_delta: float       # interpretation B: absolute-residual form
    contained_a: bool
    contained_b: bool
    change_nonnegative: bool


@dataclass(frozen=True)
class PrivacyFloor:
    """Lower bound on the privacy budget consumed by one deletion."""

    eps_lower: float


def interval_endpoints(l0: float, t: float, sigma: float, gamma: float,
                       n: int, scale_norm: float, g_norm: float):
    """Endpoints and constant of the interval for explicit arguments.

    ``scale_norm`` is ||x_v||_2 for the per-point variant or B for the
    norm-floor variant.  Exposed separately so monotonicity in the
    individual arguments can be checked without rebuilding datasets.
    """
    if n < 2:
        raise WouldEmptyDataset("risk-change bounds need n >= 2")
    if scale_norm <= 0.0:
        raise ZeroFeatureNorm("bounds divide by a positive feature norm")
    if t < 0.0:
        raise DomainError(f"eps_v + target must be >= 0, got {t}")
    c = sigma / scale_norm * math.sqrt(gamma / (2.0 * (n - 1)))
    base = l0 / (n - 1) - g_norm / ((n - 1) * scale_norm)
    return base - t * c, base + t * c, c


def _bounds_common(ds: Dataset, index: int, w, hp: HyperParams, eps_v: float,
                   scale_norm: float, variant: str,
                   b_floor: Optional[float]) -> RiskBounds:
    w = as_weights(w, ds.dim)
    if ds.n < 2:
        raise WouldEmptyDataset("risk-change bounds need n >= 2")
    if not 0 <= index < ds.n:
        raise IndexOutOfRange(f"index {index} outside [0, {ds.n})")
    l0 = risk(w, ds)
    g_norm = float(np.linalg.norm(ds.stats.s_yx - ds.stats.s_xx @ w))
    t = eps_v + advantage_target(hp.alpha)
    lower, upper, c = interval_endpoints(
        l0, t, hp.sigma, hp.gamma, ds.n, scale_norm, g_norm)
    lv = point_loss(w, ds.point(index))
    da = (l0 - lv) / (ds.n - 1)
    db = (l0 - math.sqrt(lv)) / (ds.n - 1)
    return RiskBounds(
        lower=lower,
        upper=upper,
        constant=c,
        variant=variant,
        b_floor=b_floor,
        actual_delta=da,
        abs_residual_delta=db,
        contained_a=bool(lower <= da <= upper),
        contained_b=bool(lower <= db <= upper),
        change_nonnegative=bool(da >= 0.0),
    )


def risk_change_bounds(ds: Dataset, index: int, w, hp: HyperParams,
                       eps_v: float) -> RiskBounds:
    """Per-point interval with C = sigma/||x_v|| * sqrt(gamma/(2(n-1)))."""
    if not 0 <= index < ds.n:
        raise IndexOutOfRange(f"index {index} outside [0, {ds.n})")
    xnorm = float(np.linalg.norm(ds.X[index]))
    if xnorm == 0.0:
        raise ZeroFeatureNorm("point has a zero feature vector")
    return _bounds_common(ds, index, w, hp, eps_v, xnorm, "per_point", None)


def risk_change_bounds_floor(ds: Dataset, index: int, w, hp: HyperParams,
                             eps_v: float, b: float) -> RiskBounds:
    """Norm-floor interval with D = sigma/B * sqrt(gamma/(2(n-1))).

    Requires 0 < B <= min_i ||x_i||_2 over the whole dataset.
    """
    if b <= 0.0:
        raise FloorViolated(f"B must be positive, got {b}")
    norms = np.sqrt(np.einsum("ij,ij->i", ds.X, ds.X))
    if float(norms.min()) < b:
        raise FloorViolated(
            f"B = {b} exceeds the smallest feature norm {float(norms.min())}")
    return _bounds_common(ds, index, w, hp, eps_v, float(b), "norm_floor", float(b))


def privacy_floor(eps_v: float, alpha: float) -> PrivacyFloor:
    """max(ln[Phi(Phi_inv(alpha) - eps_v) + 1 - alpha], 0)."""
    if not (0.0 < alpha < 0.5):
        raise DomainError(f"alpha must lie in (0, 0.5), got {alpha}")
    raw = math.log(phi(phi_inv(alpha) - eps_v) + 1.0 - alpha)
    return PrivacyFloor(eps_lower=max(raw, 0.0))
