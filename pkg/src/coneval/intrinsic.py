"""Monte Carlo spherical intrinsic volumes and fan characteristic polynomials.

Samples are standard Gaussian float64 vectors.  Being dyadic rationals they
are projected exactly: :class:`~coneval.projection.FaceClassifier` certifies
every face assignment.  ``v_k(C)`` is estimated by the fraction of samples
whose projection lands in the relative interior of a ``k``-face.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .arrangements import Arrangement, regions, whitney_numbers
from .cones import Cone
from .fans import ConeValuation, Fan
from .projection import face_classifier
from .reports import Report

CHUNK = 50_000


def _sample_dims(c: Cone, n: int, rng: np.random.Generator) -> np.ndarray:
    clf = face_classifier(c)
    out = []
    left = n
    while left > 0:
        m = min(CHUNK, left)
        out.append(clf.face_dims(rng.standard_normal((m, c.ambient_dim))))
        left -= m
    return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)


@dataclass
class IntrinsicEstimate:
    """Estimates of ``v_0..v_d`` for a cone or (summed) for a fan.

    ``counts[c][k]`` is the tally of ``k``-face projections for cone ``c``;
    every cone receives ``samples`` independent points.
    """

    counts: list[list[int]]
    samples: int
    seed: int
    ambient_dim: int

    @property
    def values(self) -> list[float]:
        return [sum(c[k] for c in self.counts) / self.samples for k in range(self.ambient_dim + 1)]

    @property
    def exact_values(self) -> list[Fraction]:
        return [Fraction(sum(c[k] for c in self.counts), self.samples) for k in range(self.ambient_dim + 1)]

    @property
    def total_counts(self) -> list[int]:
        return [sum(c[k] for c in self.counts) for k in range(self.ambient_dim + 1)]

    def variance(self, k: int) -> float:
        n = self.samples
        return sum((c[k] / n) * (1 - c[k] / n) / n for c in self.counts)

    def sigma(self, k: int) -> float:
        return math.sqrt(self.variance(k))

    def ci_radius(self, k: int, z: float = 4.0) -> float:
        return z * self.sigma(k)

    def alternating_sum(self) -> tuple[float, float]:
        """``sum_k (-1)^k v_k`` and its standard deviation."""
        n = self.samples
        value = 0.0
        var = 0.0
        for c in self.counts:
            m = sum((-1) ** k * c[k] for k in range(len(c))) / n
            value += m
            var += (1 - m * m) / n
        return value, math.sqrt(max(var, 0.0))

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "seed": self.seed,
            "values": self.values,
            "counts": self.total_counts,
            "sigma": [self.sigma(k) for k in range(self.ambient_dim + 1)],
        }


def mc_intrinsic_volumes(c: Cone, samples: int, seed: int = 0) -> IntrinsicEstimate:
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = np.random.default_rng(seed)
    dims = _sample_dims(c, samples, rng)
    counts = np.bincount(dims, minlength=c.ambient_dim + 1).tolist()
    return IntrinsicEstimate([counts], samples, seed, c.ambient_dim)


def fan_intrinsic_volumes(fan: Fan, samples: int, seed: int = 0) -> IntrinsicEstimate:
    """Per-cone estimates with independent streams spawned from ``seed``."""
    if samples < 1:
        raise ValueError("samples must be positive")
    d = fan.ambient_dim
    if d is None:
        raise ValueError("empty fan")
    streams = np.random.SeedSequence(seed).spawn(len(fan.cones))
    counts = []
    for c, ss in zip(fan.cones, streams):
        dims = _sample_dims(c, samples, np.random.default_rng(ss))
        counts.append(np.bincount(dims, minlength=d + 1).tolist())
    return IntrinsicEstimate(counts, samples, seed, d)


def convergence_trace(c: Cone, samples: int, seed: int = 0, points: int = 20) -> list[tuple[int, list[float]]]:
    """Running estimates at ``points`` checkpoints of one sample stream."""
    dims = _sample_dims(c, samples, np.random.default_rng(seed))
    onehot = np.zeros((samples, c.ambient_dim + 1))
    onehot[np.arange(samples), dims] = 1.0
    cum = np.cumsum(onehot, axis=0)
    marks = sorted({max(1, int(round(samples * (i + 1) / points))) for i in range(points)})
    return [(m, (cum[m - 1] / m).tolist()) for m in marks]


def exact_intrinsic_2d(c: Cone) -> tuple[float, float, float]:
    """Closed-form ``(v_0, v_1, v_2)`` of a pointed 2-dimensional cone."""
    if c.dim != 2 or not c.is_pointed or len(c.rays) != 2:
        raise ValueError("needs a pointed 2-dimensional cone")
    r, s = c.rays
    with mpmath.workdps(50):
        cos = mpmath.mpf(sum(a * b for a, b in zip(r, s))) / (
            mpmath.sqrt(sum(a * a for a in r)) * mpmath.sqrt(sum(b * b for b in s))
        )
        alpha = mpmath.acos(cos)
        v2 = alpha / (2 * mpmath.pi)
        return float(mpmath.mpf(1) / 2 - v2), 0.5, float(v2)


@dataclass
class FanCharPoly:
    coefficients: list[float]
    estimate: IntrinsicEstimate | None = field(default=None, repr=False)

    def __call__(self, t: float) -> float:
        return sum(c * t**i for i, c in enumerate(self.coefficients))


def fan_char_poly(fan: Fan, samples: int, seed: int = 0) -> FanCharPoly:
    est = fan_intrinsic_volumes(fan, samples, seed)
    return FanCharPoly(est.values, est)


def verify_zaslavsky(fan: Fan, samples: int, seed: int = 0, z: float = 4.0) -> Report:
    """``chi(1) = |fan|`` exactly and ``chi(-1) = 0`` within ``z`` sigma.

    Only fans of rank at least one are in scope: a single subspace ``L`` has
    ``chi(t) = t^dim L``.
    """
    if fan.rank < 1:
        raise ValueError("chi(-1) = 0 is only asserted for fans of rank >= 1")
    est = fan_intrinsic_volumes(fan, samples, seed)
    at_one = sum(est.exact_values)
    at_minus_one, sd = est.alternating_sum()
    ok_one = at_one == len(fan)
    ok_minus = abs(at_minus_one) <= z * sd
    return Report(
        "zaslavsky",
        f"fan of {len(fan)} cones, rank {fan.rank}",
        ok_one and ok_minus,
        {
            "chi_at_1": at_one,
            "cones": len(fan),
            "chi_at_minus_1": at_minus_one,
            "tolerance": z * sd,
            "samples": samples,
            "seed": seed,
        },
    )


def verify_klivans_swartz(arr: Arrangement, samples: int, seed: int = 0, z: float = 4.0) -> Report:
    """Coefficientwise comparison of the region fan polynomial with ``w_k``."""
    if not arr.normals:
        raise ValueError("needs a nonempty arrangement")
    fan = regions(arr)
    est = fan_intrinsic_volumes(fan, samples, seed)
    w = whitney_numbers(arr)
    rows = []
    ok = True
    for k in range(arr.ambient_dim + 1):
        v = est.values[k]
        tol = z * est.sigma(k)
        good = abs(v - w[k]) <= tol
        ok &= good
        rows.append({"k": k, "whitney": w[k], "estimate": v, "tolerance": tol, "ok": good})
    return Report(
        "klivans-swartz",
        f"{len(arr)} hyperplanes in R^{arr.ambient_dim}, {len(fan)} regions",
        ok,
        {"table": rows, "samples": samples, "seed": seed},
    )


@dataclass
class Estimate:
    """A Monte Carlo value with the variance of its estimator."""

    mean: float
    var: float

    def __add__(self, other):
        if isinstance(other, (int, float)) and other == 0:
            return self
        return Estimate(self.mean + other.mean, self.var + other.var)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, float)) and other == 0:
            return self
        return Estimate(self.mean - other.mean, self.var + other.var)

    def __rmul__(self, c):
        return Estimate(c * self.mean, c * c * self.var)

    def close(self, other, z: float = 4.0) -> bool:
        a = other if isinstance(other, Estimate) else Estimate(float(other), 0.0)
        return abs(self.mean - a.mean) <= z * math.sqrt(self.var + a.var)

    def to_dict(self) -> dict:
        return {"mean": self.mean, "sd": math.sqrt(self.var)}


def mc_valuation(k: int, samples: int, seed: int = 0, z: float = 4.0) -> ConeValuation:
    """``v_k`` as a statistical cone valuation.

    Each call draws a fresh stream (``seed`` advanced per call) so values of
    different cones are independent.
    """
    state = {"calls": 0}

    def fn(c: Cone) -> Estimate:
        s = np.random.SeedSequence([seed, state["calls"]])
        state["calls"] += 1
        est = mc_intrinsic_volumes(c, samples, int(s.generate_state(1)[0]))
        return Estimate(est.values[k], est.variance(k))

    return ConeValuation(fn, Estimate(0.0, 0.0), lambda a, b: a.close(b, z), name=f"v_{k}")
