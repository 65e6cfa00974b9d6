"""Residue-class structure of T_{p,s,n}: the p-part split, sums over
arithmetic progressions, the named Borwein polynomials, and the Andrews
recursions for the first conjecture.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidSpecError
from .polycore import IntPolynomial, ProductSpec, expand_product

BORWEIN_NAMES = {
    (3, 1): ("A", "B", "C"),
    (3, 2): ("alpha", "beta", "gamma"),
    (5, 1): ("nu", "phi", "chi", "psi", "omega"),
}


@dataclass(frozen=True)
class ResidueSplit:
    """parts[j] has coefficient t_{pm+j} at index m, for j = 0..p-1."""

    spec: ProductSpec
    parts: tuple[IntPolynomial, ...]

    def reassemble(self) -> IntPolynomial:
        p = self.spec.p
        out = [0] * (self.spec.degree + 1)
        for j, part in enumerate(self.parts):
            for m, c in enumerate(part.coeffs):
                out[p * m + j] = c
        return IntPolynomial(tuple(out))


@dataclass(frozen=True)
class ProgressionQuery:
    """Indices congruent to d modulo a, where p divides a = p*ell."""

    p: int
    a: int
    d: int
    j: int = field(init=False)

    def __post_init__(self):
        if self.a < 1 or self.a % self.p:
            raise InvalidSpecError(f"modulus a={self.a} must be a positive multiple of p={self.p}")
        if not 0 <= self.d < self.a:
            raise InvalidSpecError(f"residue d={self.d} outside [0, {self.a})")
        object.__setattr__(self, "j", self.d % self.p)

    @classmethod
    def from_ell(cls, p: int, ell: int, d: int) -> ProgressionQuery:
        return cls(p, p * ell, d)

    @property
    def ell(self) -> int:
        return self.a // self.p


def split_residues(poly: IntPolynomial, spec: ProductSpec) -> ResidueSplit:
    if poly.degree != spec.degree:
        raise InvalidSpecError(f"polynomial degree {poly.degree} != deg T = {spec.degree}")
    p = spec.p
    return ResidueSplit(spec, tuple(IntPolynomial(poly.coeffs[j::p]) for j in range(p)))


def direct_progression_sum(poly: IntPolynomial, query: ProgressionQuery) -> int:
    return sum(poly.coeffs[query.d::query.a])


def m_direct(spec: ProductSpec, b: int, poly: IntPolynomial | None = None,
             budget: int | None = None) -> int:
    """M_{p,s,n}(b): sum of t_i over i = b (mod N_p)."""
    N = spec.modulus
    if not 0 <= b < N:
        raise InvalidSpecError(f"b={b} outside [0, {N})")
    if poly is None:
        poly = expand_product(spec, budget)
    return sum(poly.coeffs[b::N])


def m_direct_all(spec: ProductSpec, poly: IntPolynomial | None = None,
                 budget: int | None = None) -> list[int]:
    if poly is None:
        poly = expand_product(spec, budget)
    return [m_direct(spec, b, poly) for b in range(spec.modulus)]


def extract_borwein_polynomials(split: ResidueSplit) -> dict[str, IntPolynomial]:
    """Named polynomials of the Borwein decompositions, minus signs absorbed.

    Indexing follows T: the split of T_{p,s,n} is the product over
    j = 1..n+1 in the conjectures' own indexing.
    """
    key = (split.spec.p, split.spec.s)
    names = BORWEIN_NAMES.get(key)
    if names is None:
        raise InvalidSpecError(f"no named Borwein polynomials for (p, s) = {key}")
    return {name: (part if i == 0 else -part)
            for i, (name, part) in enumerate(zip(names, split.parts))}


def borwein_polynomials(p: int, s: int, n: int, budget: int | None = None) -> dict[str, IntPolynomial]:
    spec = ProductSpec(p, s, n)
    return extract_borwein_polynomials(split_residues(expand_product(spec, budget), spec))


def negative_coefficients(named: dict[str, IntPolynomial]) -> list[tuple[str, int, int]]:
    """(name, index, value) for every negative coefficient."""
    return [(name, i, c) for name, poly in named.items() for i, c in enumerate(poly.coeffs) if c < 0]


# -- Andrews recursions --------------------------------------------------------


def andrews_abc(m: int) -> dict[str, IntPolynomial]:
    """A_m, B_m, C_m with the conjecture's own index m >= 0.

    m = 0 is the empty product (A_0 = 1, B_0 = C_0 = 0); m >= 1 comes from
    the split of T_{3,1,m-1}.
    """
    if m == 0:
        return {"A": IntPolynomial((1,)), "B": IntPolynomial(), "C": IntPolynomial()}
    return borwein_polynomials(3, 1, m - 1)


def _mono(k: int) -> IntPolynomial:
    return IntPolynomial((0,) * k + (1,))


def andrews_rhs(m: int, prev: dict[str, IntPolynomial]) -> dict[str, IntPolynomial]:
    """Right-hand sides of the three recursions, built from index m-1."""
    A, B, C = prev["A"], prev["B"], prev["C"]
    one_plus = IntPolynomial((1,)) + _mono(2 * m - 1)
    return {
        "A": one_plus * A + B.shift(m) + C.shift(m),
        "B": A.shift(m - 1) + one_plus * B - C.shift(m),
        "C": A.shift(m - 1) - B.shift(m - 1) + one_plus * C,
    }


@dataclass
class RecursionResult:
    n: int
    ok: bool
    failures: list[tuple[str, int, int, int]] = field(default_factory=list)
    """(name, index, expected, actual) at the first differing coefficient."""


def check_andrews_step(m: int, prev: dict[str, IntPolynomial],
                       cur: dict[str, IntPolynomial]) -> RecursionResult:
    rhs = andrews_rhs(m, prev)
    failures = []
    for name in ("A", "B", "C"):
        want, got = rhs[name], cur[name]
        if want == got:
            continue
        length = max(len(want), len(got))
        idx = next(i for i in range(length) if want[i] != got[i])
        failures.append((name, idx, want[idx], got[idx]))
    return RecursionResult(m, not failures, failures)


def check_andrews_recursions(n_max: int) -> list[RecursionResult]:
    if n_max < 1:
        raise InvalidSpecError("n_max must be >= 1")
    results = []
    prev = andrews_abc(0)
    for m in range(1, n_max + 1):
        cur = andrews_abc(m)
        results.append(check_andrews_step(m, prev, cur))
        prev = cur
    return results
