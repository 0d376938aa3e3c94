"""Norms, balls and ball-intersection volumes.

The intersection volume of two Euclidean balls is assembled from two
hyperspherical caps, each expressed through the regularized incomplete Beta
function I_z((n+1)/2, 1/2).  I_z is evaluated by adaptive Gauss-Legendre
quadrature on the integral definition rather than through a special-function
library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, UnsupportedGeometryError

NORM_KINDS = ("euclidean", "l1", "linf", "weighted-linf")


@dataclass(frozen=True)
class Norm:
    """A norm on R^n, restricted to the kinds the games need."""

    kind: str
    dim: int
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind not in NORM_KINDS:
            raise UnsupportedGeometryError(f"unknown norm kind {self.kind!r}")
        if self.dim < 1:
            raise DomainError("norm dimension must be >= 1")
        if self.kind == "weighted-linf":
            if self.weights is None or len(self.weights) != self.dim:
                raise DomainError("weighted-linf needs one positive weight per axis")
            if any(w <= 0 for w in self.weights):
                raise DomainError("weighted-linf weights must be positive")
        elif self.weights is not None:
            raise DomainError(f"{self.kind} norm takes no weights")

    def __call__(self, x: Sequence[float]) -> float:
        if len(x) != self.dim:
            raise DomainError(f"expected a vector of dimension {self.dim}")
        if self.kind == "euclidean":
            return math.sqrt(sum(float(v) * float(v) for v in x))
        if self.kind == "l1":
            return sum(abs(float(v)) for v in x)
        if self.kind == "linf":
            return max(abs(float(v)) for v in x)
        return max(w * abs(float(v)) for w, v in zip(self.weights, x))

    def distance(self, x: Sequence[float], y: Sequence[float]) -> float:
        return self([a - b for a, b in zip(x, y)])

    def equivalence_constants(self) -> tuple[float, float]:
        """Constants c1, c2 > 0 with c1*||.|| <= ||.||_2 <= c2*||.||."""
        n = self.dim
        if self.kind == "euclidean":
            return 1.0, 1.0
        if self.kind == "linf":
            return 1.0, math.sqrt(n)
        if self.kind == "l1":
            return 1.0 / math.sqrt(n), 1.0
        wmax = max(self.weights)
        c2 = math.sqrt(sum(1.0 / (w * w) for w in self.weights))
        return 1.0 / wmax, c2


def euclidean(dim: int) -> Norm:
    return Norm("euclidean", dim)


@dataclass(frozen=True)
class Ball:
    center: tuple[float, ...]
    radius: float
    norm: Norm

    def __post_init__(self):
        if self.radius < 0:
            raise DomainError("ball radius must be nonnegative")
        if len(self.center) != self.norm.dim:
            raise DomainError("center dimension does not match norm")

    def contains(self, x: Sequence[float]) -> bool:
        return self.norm.distance(self.center, x) <= self.radius


def unit_ball_volume(norm: Norm) -> float:
    n = norm.dim
    if norm.kind == "euclidean":
        return math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)
    if norm.kind == "linf":
        return 2.0**n
    if norm.kind == "l1":
        return 2.0**n / math.factorial(n)
    prod = 1.0
    for w in norm.weights:
        prod *= 2.0 / w
    return prod


def ball_volume(norm: Norm, r: float) -> float:
    """Lebesgue measure of any ball of radius r for the given norm."""
    if r < 0:
        raise DomainError("radius must be nonnegative")
    return unit_ball_volume(norm) * float(r) ** norm.dim


# ---------------------------------------------------------------------------
# Regularized incomplete Beta by quadrature.

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


def _gauss_legendre(f: Callable[[np.ndarray], np.ndarray], a: float, b: float) -> float:
    if b <= a:
        return 0.0
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return half * float(np.sum(_GL_WEIGHTS * f(mid + half * _GL_NODES)))


def _adaptive_gl(f, a, b, tol, depth=0):
    whole = _gauss_legendre(f, a, b)
    mid = 0.5 * (a + b)
    left = _gauss_legendre(f, a, mid)
    right = _gauss_legendre(f, mid, b)
    if abs(left + right - whole) <= tol or depth >= 40:
        return left + right
    return _adaptive_gl(f, a, mid, tol / 2, depth + 1) + _adaptive_gl(
        f, mid, b, tol / 2, depth + 1
    )


def log_beta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def regularized_incomplete_beta(z: float, a: float, b: float, tol: float = 1e-12) -> float:
    """I_z(a, b) for b = 1/2 (any a >= 1/2) or integer-friendly b >= 1.

    The b = 1/2 case, the only one the cap formula needs, is transformed with
    t = 1 - u^2 so the endpoint singularity disappears and the integrand is a
    smooth power of (1 - u^2).
    """
    if not 0.0 <= z <= 1.0:
        raise DomainError("z must lie in [0, 1]")
    if z == 0.0:
        return 0.0
    if z == 1.0:
        return 1.0
    beta = math.exp(log_beta(a, b))
    if b == 0.5:
        lo = math.sqrt(1.0 - z)
        integral = 2.0 * _adaptive_gl(lambda u: (1.0 - u * u) ** (a - 1.0), lo, 1.0, tol)
        return min(1.0, integral / beta)
    if b >= 1.0:
        integral = _adaptive_gl(
            lambda t: t ** (a - 1.0) * (1.0 - t) ** (b - 1.0), 0.0, z, tol
        )
        return min(1.0, integral / beta)
    raise UnsupportedGeometryError("quadrature implemented for b = 1/2 or b >= 1 only")


def _cap_volume(n: int, radius: float, plane_dist: float) -> float:
    """Volume of the cap of an n-ball cut by a hyperplane.

    plane_dist is the signed distance from the ball center to the plane;
    positive means the cap is smaller than a half-ball.
    """
    full = ball_volume(euclidean(n), radius)
    if plane_dist >= radius:
        return 0.0
    if plane_dist <= -radius:
        return full
    if plane_dist >= 0.0:
        z = 1.0 - (plane_dist / radius) ** 2
        return 0.5 * full * regularized_incomplete_beta(z, (n + 1) / 2.0, 0.5)
    return full - _cap_volume(n, radius, -plane_dist)


def euclidean_ball_intersection_volume(
    n: int, eps: float, r: float, center_distance: float | None = None
) -> float:
    """lambda(B_eps(0) ∩ B_r(x)) for Euclidean balls, |x| = center_distance.

    Defaults to the boundary configuration center_distance = eps.  When one
    ball contains the other (in particular r >= 2*eps at center_distance =
    eps) the volume of the smaller ball is returned.
    """
    if n < 1:
        raise DomainError("dimension must be >= 1")
    if eps <= 0 or r <= 0:
        raise DomainError("radii must be positive")
    d = eps if center_distance is None else float(center_distance)
    if d < 0:
        raise DomainError("center distance must be nonnegative")
    if d >= eps + r:
        return 0.0
    if d <= abs(eps - r):
        return ball_volume(euclidean(n), min(eps, r))
    a = (d * d + eps * eps - r * r) / (2.0 * d)
    return _cap_volume(n, eps, a) + _cap_volume(n, r, d - a)


# ---------------------------------------------------------------------------
# Monte Carlo volume estimation (testing oracle).


def monte_carlo_volume(
    region_indicator: Callable[[np.ndarray], np.ndarray],
    bounding_box: tuple[Sequence[float], Sequence[float]],
    samples: int,
    seed: int,
    chunk: int = 1_000_000,
) -> tuple[float, float]:
    """Unbiased volume estimate (estimate, std_error) by rejection sampling.

    region_indicator receives a (k, n) array and returns a boolean array of
    length k.  Deterministic for a fixed seed.
    """
    lo = np.asarray(bounding_box[0], dtype=float)
    hi = np.asarray(bounding_box[1], dtype=float)
    if lo.shape != hi.shape or lo.ndim != 1:
        raise DomainError("bounding box must be a pair of equal-length vectors")
    if samples < 1:
        raise DomainError("need at least one sample")
    box_vol = float(np.prod(hi - lo))
    if box_vol <= 0:
        raise DomainError("bounding box has zero volume")
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    while done < samples:
        k = min(chunk, samples - done)
        pts = rng.uniform(lo, hi, size=(k, lo.size))
        hits += int(np.count_nonzero(region_indicator(pts)))
        done += k
    p = hits / samples
    estimate = box_vol * p
    std_error = box_vol * math.sqrt(max(p * (1.0 - p), 0.0) / samples)
    return estimate, std_error
