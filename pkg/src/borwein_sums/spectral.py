"""Maximal coefficients of T_{p,s,n} and sampled lower bounds for its sup
norm on the unit circle.

|T(e^{i theta})| is evaluated factor by factor as prod |2 sin(a theta / 2)|^s
over a in D_p, never from the expanded coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidSpecError
from .polycore import IntPolynomial, ProductSpec, expand_product

BORWEIN_SMALL_PRIMES = (2, 3, 5, 7, 11, 13)
BORW2_BASE = 1.219
LOG_SPACE_DEGREE = 10**4
DEFAULT_DENSITY = 8
MIN_DENSITY = 4
_CHUNK = 1 << 15
_GOLDEN = (math.sqrt(5) - 1) / 2


def max_abs_coeff(poly: IntPolynomial) -> int:
    return max((abs(c) for c in poly.coeffs), default=0)


def sum_abs_coeff(poly: IntPolynomial) -> int:
    return sum(abs(c) for c in poly.coeffs)


@dataclass(frozen=True)
class SupNormEstimate:
    """A lower bound for sup |T| on |q| = 1 (a maximum over evaluated points)."""

    value: float
    samples: int
    refined: bool
    theta: float


def abs_on_circle(spec: ProductSpec, theta) -> np.ndarray:
    """|T(e^{i theta})| for an array of angles."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    exps = np.asarray(spec.exponents(), dtype=float)
    out = np.empty_like(theta)
    log_space = spec.degree > LOG_SPACE_DEGREE
    for lo in range(0, theta.size, _CHUNK):
        th = theta[lo:lo + _CHUNK]
        factors = np.abs(2.0 * np.sin(np.outer(th, exps) / 2.0))
        if log_space:
            with np.errstate(divide="ignore"):
                out[lo:lo + _CHUNK] = np.exp(spec.s * np.log(factors).sum(axis=1))
        else:
            out[lo:lo + _CHUNK] = np.prod(factors ** spec.s, axis=1)
    return out


def _golden_max(f, lo: float, hi: float, iters: int = 60) -> tuple[float, float]:
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def supnorm_sample(spec: ProductSpec, samples: int | None = None,
                   refine: bool = True) -> SupNormEstimate:
    """Max of |T| over ``samples`` equispaced points, plus one golden-section pass."""
    if samples is None:
        samples = DEFAULT_DENSITY * spec.degree
    if samples < MIN_DENSITY * spec.degree:
        raise InvalidSpecError(f"{samples} samples below the floor {MIN_DENSITY} * deg T = "
                               f"{MIN_DENSITY * spec.degree}")
    step = 2 * math.pi / samples
    theta = np.arange(samples) * step
    values = abs_on_circle(spec, theta)
    best = int(np.argmax(values))
    best_theta, best_value = float(theta[best]), float(values[best])
    if refine:
        t, v = _golden_max(lambda x: float(abs_on_circle(spec, x)[0]),
                           best_theta - step, best_theta + step)
        if v > best_value:
            best_theta, best_value = t, v
    return SupNormEstimate(best_value, samples, refine, best_theta)


@dataclass
class TrendRow:
    p: int
    s: int
    n: int
    degree: int
    max_abs_coeff: int
    sum_abs_coeff: int
    log_ratio: float
    supnorm: float
    samples: int
    ok: bool
    borw2_ratio: float | None = None

    def as_record(self) -> dict:
        rec = {
            "p": self.p,
            "s": self.s,
            "n": self.n,
            "max_abs_coeff": str(self.max_abs_coeff),
            "log_p_ratio": repr(self.log_ratio),
            "supnorm_estimate": repr(self.supnorm),
            "samples": self.samples,
            "ok": self.ok,
        }
        if self.borw2_ratio is not None:
            rec["borw2_ratio"] = repr(self.borw2_ratio)
        return rec


def _trend_row(spec: ProductSpec, samples: int | None, budget: int | None) -> TrendRow:
    poly = expand_product(spec, budget)
    top = max_abs_coeff(poly)
    total = sum_abs_coeff(poly)
    est = supnorm_sample(spec, samples)
    sup = Fraction(est.value)
    # exact comparisons of the float estimate against integer bounds
    ok = sup <= total and sup <= (spec.degree + 1) * top
    return TrendRow(
        p=spec.p, s=spec.s, n=spec.n,
        degree=spec.degree,
        max_abs_coeff=top,
        sum_abs_coeff=total,
        log_ratio=math.log(top, spec.p) / (spec.s * (spec.n + 1)),
        supnorm=est.value,
        samples=est.samples,
        ok=ok,
    )


def borw1_check(p: int, s: int, ns, samples: int | None = None,
                budget: int | None = None) -> list[TrendRow]:
    """Trend of log_p max|t| / (s(n+1)) for the primes with a sharp sup-norm asymptotic."""
    if p not in BORWEIN_SMALL_PRIMES:
        raise InvalidSpecError(f"p={p} not in {BORWEIN_SMALL_PRIMES}")
    return [_trend_row(ProductSpec(p, s, n), samples, budget) for n in ns]


def borw2_check(p: int, s: int, ns, samples: int | None = None,
                budget: int | None = None) -> list[TrendRow]:
    """max|t| >= sup/(deg+1), plus max|t| s p^2 n^2 / 1.219^(s(p-1)(n+1)) as a trend."""
    if p <= 15:
        raise InvalidSpecError(f"p={p} must exceed 15")
    rows = []
    for n in ns:
        row = _trend_row(ProductSpec(p, s, n), samples, budget)
        log_ratio = (math.log(row.max_abs_coeff) + math.log(s * p * p * max(n, 1) ** 2)
                     - s * (p - 1) * (n + 1) * math.log(BORW2_BASE))
        row.borw2_ratio = math.exp(log_ratio)
        rows.append(row)
    return rows
