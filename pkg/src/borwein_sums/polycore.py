"""Dense integer polynomials and the expansion of T_{p,s,n}(q)."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from sympy import isprime

from .errors import BudgetExceededError, InvalidSpecError

DEFAULT_BUDGET = 2**26
BUDGET_ENV = "BORWEIN_BUDGET"


def resolve_budget(budget: int | None = None) -> int:
    """Coefficient cap: explicit value, else $BORWEIN_BUDGET, else 2**26."""
    if budget is not None:
        return int(budget)
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise InvalidSpecError(f"{BUDGET_ENV}={env!r} is not an integer") from None
    return DEFAULT_BUDGET


@dataclass(frozen=True, order=True)
class ProductSpec:
    """The triple (p, s, n) indexing T_{p,s,n}."""

    p: int
    s: int
    n: int

    def __post_init__(self):
        for name in ("p", "s", "n"):
            if not isinstance(getattr(self, name), int):
                raise InvalidSpecError(f"{name} must be an integer")
        if self.p < 2 or not isprime(self.p):
            raise InvalidSpecError(f"p={self.p} is not prime")
        if self.s < 1:
            raise InvalidSpecError(f"s={self.s} must be >= 1")
        if self.n < 0:
            raise InvalidSpecError(f"n={self.n} must be >= 0")

    @property
    def modulus(self) -> int:
        """N_p = p(n+1)."""
        return self.p * (self.n + 1)

    @property
    def size_d(self) -> int:
        """|D_p| = (p-1)(n+1)."""
        return (self.p - 1) * (self.n + 1)

    @property
    def degree(self) -> int:
        """deg T_{p,s,n} = p(p-1)s(n+1)^2/2."""
        return self.p * (self.p - 1) * self.s * (self.n + 1) ** 2 // 2

    @property
    def leading_sign(self) -> int:
        return -1 if (self.size_d * self.s) % 2 else 1

    def exponents(self) -> list[int]:
        """D_p: the factor exponents pj+k in increasing order."""
        return [a for a in range(1, self.modulus) if a % self.p]


@dataclass(frozen=True)
class IntPolynomial:
    """Exact integer polynomial; coeffs[i] is the coefficient of q^i.

    Trailing zeros are stripped, so the zero polynomial has no coefficients.
    """

    coeffs: tuple[int, ...] = field(default=())

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        end = len(c)
        while end and c[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", c[:end])

    @classmethod
    def from_list(cls, coeffs: Iterable[int]) -> IntPolynomial:
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return self.coeffs[i]
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return IntPolynomial(tuple(out))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-x for x in self.coeffs))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPolynomial(tuple(out))

    def shift(self, k: int) -> IntPolynomial:
        """Multiply by q^k."""
        if not self.coeffs:
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def as_list(self) -> list[int]:
        return list(self.coeffs)


def _check_budget(length: int, budget: int | None) -> None:
    cap = resolve_budget(budget)
    if length > cap:
        raise BudgetExceededError(f"{length} coefficients exceed the budget of {cap}")


def _sub_shifted(buf: list[int], m: int, top: int) -> None:
    # buf[:top+1] holds P; overwrite buf with P*(1-q^m). Descending i reads
    # buf[i] before index i is touched (index i is written only from i-m).
    for i in range(top, -1, -1):
        x = buf[i]
        if x:
            buf[i + m] -= x


def mul_by_sparse_factor(poly: IntPolynomial | Sequence[int], m: int, times: int = 1,
                         budget: int | None = None) -> IntPolynomial:
    """Return poly * (1 - q^m)^times."""
    if m < 1 or times < 1:
        raise InvalidSpecError("need m >= 1 and times >= 1")
    coeffs = poly.coeffs if isinstance(poly, IntPolynomial) else tuple(poly)
    if not coeffs:
        return IntPolynomial()
    top = len(coeffs) - 1
    _check_budget(top + m * times + 1, budget)
    buf = list(coeffs) + [0] * (m * times)
    for _ in range(times):
        _sub_shifted(buf, m, top)
        top += m
    return IntPolynomial(tuple(buf))


def expand_product(spec: ProductSpec, budget: int | None = None) -> IntPolynomial:
    """Exact coefficient vector of T_{p,s,n}(q)."""
    _check_budget(spec.degree + 1, budget)
    return _expand_cached(spec)


@lru_cache(maxsize=32)
def _expand_cached(spec: ProductSpec) -> IntPolynomial:
    buf = [0] * (spec.degree + 1)
    buf[0] = 1
    top = 0
    for m in spec.exponents():
        for _ in range(spec.s):
            _sub_shifted(buf, m, top)
            top += m
    return IntPolynomial(tuple(buf))


def eval_at_one(poly: IntPolynomial) -> int:
    """Sum of all coefficients."""
    return sum(poly.coeffs)
