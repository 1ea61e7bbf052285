"""Innovation margin distributions.

Five parametric families are supported for the innovation law of an
ARMAX process: Frechet, exponential, uniform on (0, 1), generalized
Pareto, and Weibull (minimum convention, ``F(x) = 1 - exp(-x**k)``).
Each margin exposes a CDF, a quantile function, inverse-transform
sampling, its max-domain of attraction, and its right endpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

__all__ = [
    "MarginSpec",
    "DomainTag",
    "margin_cdf",
    "margin_quantile",
    "margin_sample",
    "attraction_domain",
    "right_endpoint",
]

_KINDS = ("frechet", "exponential", "uniform01", "gpd", "weibull_min")

# GPD shapes this close to zero collapse to the exponential sub-family so
# that the xi -> 0 limit is continuous instead of a 0/0 evaluation.
GPD_SHAPE_TOL = 1e-12


@dataclass(frozen=True)
class MarginSpec:
    """Parametric innovation margin.

    Only the parameters relevant to ``kind`` may be set:

    - ``frechet``: ``alpha > 0``, CDF ``exp(-x**(-alpha))`` on ``x > 0``
    - ``exponential``: ``rate > 0``, CDF ``1 - exp(-rate * x)``
    - ``uniform01``: no parameters, uniform on ``(0, 1)``
    - ``gpd``: ``shape`` (any sign), ``scale > 0``
    - ``weibull_min``: ``k > 0``, CDF ``1 - exp(-x**k)`` on ``x >= 0``
    """

    kind: str
    alpha: float | None = None
    rate: float | None = None
    shape: float | None = None
    scale: float | None = None
    k: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ConfigurationError(f"unknown margin kind {self.kind!r}")
        required = {
            "frechet": ("alpha",),
            "exponential": ("rate",),
            "uniform01": (),
            "gpd": ("shape", "scale"),
            "weibull_min": ("k",),
        }[self.kind]
        for name in ("alpha", "rate", "shape", "scale", "k"):
            value = getattr(self, name)
            if name in required:
                if value is None:
                    raise ConfigurationError(f"margin {self.kind!r} requires {name}")
                if name != "shape" and not value > 0:
                    raise ConfigurationError(f"margin {self.kind!r}: {name} must be positive")
                if not math.isfinite(value):
                    raise ConfigurationError(f"margin {self.kind!r}: {name} must be finite")
            elif value is not None:
                raise ConfigurationError(f"margin {self.kind!r} does not take {name}")

    @classmethod
    def frechet(cls, alpha: float = 1.0) -> "MarginSpec":
        return cls("frechet", alpha=float(alpha))

    @classmethod
    def exponential(cls, rate: float = 1.0) -> "MarginSpec":
        return cls("exponential", rate=float(rate))

    @classmethod
    def uniform01(cls) -> "MarginSpec":
        return cls("uniform01")

    @classmethod
    def gpd(cls, shape: float, scale: float = 1.0) -> "MarginSpec":
        return cls("gpd", shape=float(shape), scale=float(scale))

    @classmethod
    def weibull_min(cls, k: float) -> "MarginSpec":
        return cls("weibull_min", k=float(k))


@dataclass(frozen=True)
class DomainTag:
    """Max-domain of attraction of a margin.

    ``kind`` is one of ``"frechet"``, ``"gumbel"`` or ``"weibull"``;
    ``alpha`` is the regular-variation index and is set only for the
    Frechet domain.
    """

    kind: str
    alpha: float | None = None

    @property
    def is_frechet(self) -> bool:
        return self.kind == "frechet"


def _as_array(x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _maybe_scalar(arr: np.ndarray, scalar: bool):
    return float(arr) if scalar else arr


def margin_cdf(spec: MarginSpec, x):
    """CDF of ``spec`` at ``x`` (scalar or array)."""
    arr, scalar = _as_array(x)
    if spec.kind == "frechet":
        with np.errstate(divide="ignore", over="ignore"):
            out = np.where(arr > 0, np.exp(-np.power(np.maximum(arr, 1e-300), -spec.alpha)), 0.0)
    elif spec.kind == "exponential":
        out = np.where(arr > 0, -np.expm1(-spec.rate * np.maximum(arr, 0.0)), 0.0)
    elif spec.kind == "uniform01":
        out = np.clip(arr, 0.0, 1.0)
    elif spec.kind == "gpd":
        out = _gpd_cdf(spec.shape, spec.scale, arr)
    else:  # weibull_min
        out = np.where(arr > 0, -np.expm1(-np.power(np.maximum(arr, 0.0), spec.k)), 0.0)
    return _maybe_scalar(out, scalar)


def _gpd_cdf(shape: float, scale: float, arr: np.ndarray) -> np.ndarray:
    if abs(shape) < GPD_SHAPE_TOL:
        return np.where(arr > 0, -np.expm1(-np.maximum(arr, 0.0) / scale), 0.0)
    z = np.maximum(arr, 0.0) / scale
    inner = np.maximum(1.0 + shape * z, 0.0)
    with np.errstate(divide="ignore"):
        out = np.where(arr > 0, -np.expm1(np.log(np.maximum(inner, 1e-300)) * (-1.0 / shape)), 0.0)
    if shape < 0:
        # beyond the finite endpoint -scale/shape the CDF is exactly one
        out = np.where(arr >= -scale / shape, 1.0, out)
    return out


def margin_quantile(spec: MarginSpec, p):
    """Quantile function (inverse CDF) of ``spec`` at ``p`` in (0, 1).

    The endpoints are excluded: every supported margin is continuous and
    strictly increasing on its support, so interior levels are enough, and
    rejecting 0/1 keeps infinities out of downstream recursions.
    """
    arr, scalar = _as_array(p)
    if np.any(arr <= 0) or np.any(arr >= 1):
        raise ValueError("quantile levels must lie strictly inside (0, 1)")
    with np.errstate(divide="ignore", over="ignore"):
        if spec.kind == "frechet":
            out = np.power(-np.log(arr), -1.0 / spec.alpha)
        elif spec.kind == "exponential":
            out = -np.log1p(-arr) / spec.rate
        elif spec.kind == "uniform01":
            out = arr.copy()
        elif spec.kind == "gpd":
            out = _gpd_quantile(spec.shape, spec.scale, arr)
        else:  # weibull_min
            out = np.power(-np.log1p(-arr), 1.0 / spec.k)
    return _maybe_scalar(out, scalar)


def _gpd_quantile(shape: float, scale: float, arr: np.ndarray) -> np.ndarray:
    log_sf = np.log1p(-arr)
    if abs(shape) < GPD_SHAPE_TOL:
        return -scale * log_sf
    return scale * np.expm1(-shape * log_sf) / shape


def margin_sample(spec: MarginSpec, rng: np.random.Generator, size=None):
    """Draw from ``spec`` by inverse transform of uniforms from ``rng``.

    A single stream of ``rng.random`` calls is consumed so that sampling
    is reproducible for a fixed generator state.
    """
    u = rng.random(size)
    # avoid the degenerate endpoints 0 and 1 that a closed interval draw
    # could otherwise map to -inf/inf quantiles
    u = np.clip(u, 1e-300, 1.0 - 1e-16)
    return margin_quantile(spec, u)


def attraction_domain(spec: MarginSpec) -> DomainTag:
    """Max-domain of attraction of ``spec``.

    Frechet margins and heavy-tailed GPDs (``shape > 0``) are in the
    Frechet domain with regular-variation index ``alpha``; exponential
    and light-tailed GPD (``shape == 0``) margins are Gumbel; margins
    with a finite right endpoint are Weibull.  The Weibull-minimum
    family carries the ``"weibull"`` tag as well; every numerical
    routine in the package branches only on ``is_frechet``, so the
    label has no computational consequence.
    """
    if spec.kind == "frechet":
        return DomainTag("frechet", alpha=spec.alpha)
    if spec.kind == "exponential":
        return DomainTag("gumbel")
    if spec.kind == "uniform01":
        return DomainTag("weibull")
    if spec.kind == "gpd":
        if spec.shape > GPD_SHAPE_TOL:
            return DomainTag("frechet", alpha=1.0 / spec.shape)
        if spec.shape < -GPD_SHAPE_TOL:
            return DomainTag("weibull")
        return DomainTag("gumbel")
    return DomainTag("weibull")  # weibull_min


def right_endpoint(spec: MarginSpec) -> float:
    """Supremum of the support of ``spec`` (``inf`` when unbounded)."""
    if spec.kind == "uniform01":
        return 1.0
    if spec.kind == "gpd" and spec.shape < -GPD_SHAPE_TOL:
        return -spec.scale / spec.shape
    return math.inf
