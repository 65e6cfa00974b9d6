"""Characters of Z_{N_p}, the Li-Wan sieve quantities, and the exact
character-sum evaluation of M_{p,s,n}(b).

Throughout, G = Z_{N_p} and D_p is the set of residues not divisible by p.
A character is psi_x(y) = exp(2 pi i x y / N); it has order N / gcd(x, N).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from sympy import divisors, mobius, totient

from . import cyclotomic
from .errors import BudgetExceededError, InvalidSpecError, VerificationError
from .polycore import ProductSpec

ENUMERATION_BUDGET = 10**7


def _require_odd_prime(spec: ProductSpec) -> None:
    if spec.p == 2:
        raise InvalidSpecError("the character sieve needs an odd prime p")


def _require_residue(spec: ProductSpec, b: int) -> None:
    if not 0 <= b < spec.modulus:
        raise InvalidSpecError(f"b={b} outside [0, {spec.modulus})")


# -- characters ---------------------------------------------------------------


@dataclass(frozen=True)
class CharacterFnSpec:
    """The character y -> exp(2 pi i x y / N) of Z_N."""

    N: int
    x: int

    def __post_init__(self):
        if self.N < 1 or not 0 <= self.x < self.N:
            raise InvalidSpecError(f"character index {self.x} outside [0, {self.N})")

    @property
    def order(self) -> int:
        return self.N // math.gcd(self.x, self.N)

    @property
    def is_trivial(self) -> bool:
        return self.x == 0

    def power(self, i: int) -> CharacterFnSpec:
        return CharacterFnSpec(self.N, (self.x * i) % self.N)


@dataclass(frozen=True)
class CharClass:
    """All characters of one exact order d, aggregated for a residue b."""

    d: int
    weight: int
    count: int


def char_classes(spec: ProductSpec, b: int) -> list[CharClass]:
    """One class per divisor d of N_p, weighted by the Ramanujan sum c_d(b)."""
    return [CharClass(d, ramanujan_sum(d, b), int(totient(d))) for d in divisors(spec.modulus)]


def s_D(spec: ProductSpec, charspec: CharacterFnSpec) -> int:
    """sum over a in D_p of psi(a); depends only on the order of psi."""
    if charspec.N != spec.modulus:
        raise InvalidSpecError(f"character modulus {charspec.N} != N_p = {spec.modulus}")
    return _s_D_by_order(spec, charspec.order)


def _s_D_by_order(spec: ProductSpec, order: int) -> int:
    if order == 1:
        return spec.size_d
    if order == spec.p:
        return -(spec.modulus // spec.p)
    return 0


# -- Ramanujan sums -------------------------------------------------------------


@lru_cache(maxsize=None)
def ramanujan_sum(d: int, b: int) -> int:
    """c_d(b) = mu(d/g) phi(d) / phi(d/g) with g = gcd(d, b)."""
    if d < 1:
        raise InvalidSpecError("Ramanujan sum needs d >= 1")
    g = math.gcd(d, b)
    q = d // g
    return int(mobius(q)) * int(totient(d)) // int(totient(q))


def ramanujan_sum_direct(d: int, b: int) -> int:
    """c_d(b) by exact summation of primitive d-th roots of unity."""
    return cyclotomic.exponential_sum_exact(d, b)


# -- cycle types and Z_k ------------------------------------------------------


@dataclass(frozen=True)
class CycleType:
    """Cycle type (1^c_1, 2^c_2, ..., k^c_k) of a permutation in S_k."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise InvalidSpecError("cycle multiplicities must be nonnegative")

    @property
    def k(self) -> int:
        return sum(i * c for i, c in enumerate(self.counts, start=1))

    @property
    def num_cycles(self) -> int:
        return sum(self.counts)

    @property
    def sign(self) -> int:
        return -1 if (self.k - self.num_cycles) % 2 else 1


def integer_partitions(k: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of k as nonincreasing tuples."""
    if largest is None:
        largest = k
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in integer_partitions(k - first, first):
            yield (first,) + rest


def cycle_types(k: int) -> Iterator[CycleType]:
    for part in integer_partitions(k):
        counts = [0] * k
        for size in part:
            counts[size - 1] += 1
        yield CycleType(tuple(counts))


def cycle_count(ct: CycleType) -> int:
    """Number of permutations of S_k with the given cycle type."""
    denom = 1
    for i, c in enumerate(ct.counts, start=1):
        denom *= i**c * math.factorial(c)
    return math.factorial(ct.k) // denom


def z_poly(k: int, t: Sequence[int]) -> int:
    """Z_k(t_1..t_k) = sum over cycle types of N(c) * prod t_i^c_i."""
    if len(t) < k:
        raise InvalidSpecError(f"z_poly needs {k} arguments, got {len(t)}")
    total = 0
    for ct in cycle_types(k):
        term = cycle_count(ct)
        for ti, c in zip(t, ct.counts):
            if c:
                term *= ti**c
        total += term
    return total


# -- F_psi on distinct-coordinate tuples ----------------------------------------


def binomial_series(step: int, power: int, length: int) -> list[int]:
    """First ``length`` coefficients of (1 - u^step)^power, any integer power."""
    out = [0] * length
    for j in range((length - 1) // step + 1):
        if power >= 0:
            if j > power:
                break
            c = (-1) ** j * math.comb(power, j)
        else:
            c = math.comb(-power + j - 1, j)
        out[j * step] = c
    return out


def _convolve(a: Sequence[int], b: Sequence[int], length: int) -> list[int]:
    out = [0] * length
    for i, x in enumerate(a[:length]):
        if x:
            for j, y in enumerate(b[: length - i]):
                out[i + j] += x * y
    return out


def _f_psi_series(spec: ProductSpec, order: int, length: int) -> list[int]:
    """Series whose u^k coefficient times (-1)^k k! is F_psi for psi of this order."""
    p, N = spec.p, spec.modulus
    if order % p:
        return binomial_series(order, spec.size_d // order, length)
    m = N // order
    return _convolve(binomial_series(order, m, length), binomial_series(order // p, -m, length), length)


def f_psi_closed(spec: ProductSpec, order: int, k: int) -> int:
    """F_psi over distinct k-tuples of D_p, for any character psi of the given order."""
    _require_odd_prime(spec)
    if order < 1 or spec.modulus % order:
        raise InvalidSpecError(f"order {order} does not divide N_p = {spec.modulus}")
    if not 0 <= k <= spec.size_d:
        raise InvalidSpecError(f"k={k} outside [0, {spec.size_d}]")
    coeff = _f_psi_series(spec, order, k + 1)[k]
    return (-1) ** k * math.factorial(k) * coeff


def f_psi_cycle_index(spec: ProductSpec, x: int, k: int) -> int:
    """F_psi as (-1)^k Z_k(-s_D(psi), ..., -s_D(psi^k))."""
    _require_odd_prime(spec)
    psi = CharacterFnSpec(spec.modulus, x)
    t = [-s_D(spec, psi.power(i)) for i in range(1, k + 1)]
    return (-1) ** k * z_poly(k, t)


def f_psi_bruteforce(spec: ProductSpec, x: int, k: int, budget: int = ENUMERATION_BUDGET):
    """F_psi by exhaustive enumeration of distinct-coordinate k-tuples.

    The sum is accumulated exactly in Z[zeta_N].  Returns an int when the
    value is rational (always, in practice), otherwise a complex float.
    """
    _require_odd_prime(spec)
    N = spec.modulus
    psi = CharacterFnSpec(N, x)
    D = spec.exponents()
    if len(D) ** k > budget:
        raise BudgetExceededError(f"|D_p|^k = {len(D) ** k} tuples exceed {budget}")
    vec = [0] * N
    for tup in itertools.permutations(D, k):
        vec[(psi.x * sum(tup)) % N] += 1
    value = cyclotomic.to_integer(vec, N)
    if value is None:
        return cyclotomic.to_complex(vec, N)
    # Galois trace route: sum_r vec[r] c_N(r) = phi(N) * value for rational values.
    trace = sum(c * ramanujan_sum(N, r) for r, c in enumerate(vec) if c)
    if trace != value * int(totient(N)):
        raise VerificationError(f"trace {trace} disagrees with reduced value {value}")
    return value


# -- brute-force combinatorial oracles -----------------------------------------


def m_fixed_sizes_bruteforce(spec: ProductSpec, sizes: Sequence[int], b: int,
                             budget: int = ENUMERATION_BUDGET) -> int:
    """#{(V_1..V_s) : V_i subset of D_p, |V_i| = k_i, total sum = b mod N_p}."""
    _require_odd_prime(spec)
    _require_residue(spec, b)
    if len(sizes) != spec.s:
        raise InvalidSpecError(f"expected {spec.s} sizes, got {len(sizes)}")
    D = spec.exponents()
    work = math.prod(math.comb(len(D), k) for k in sizes)
    if work > budget:
        raise BudgetExceededError(f"{work} subset tuples exceed {budget}")
    N = spec.modulus
    sums = [[sum(c) % N for c in itertools.combinations(D, k)] for k in sizes]
    return sum(1 for combo in itertools.product(*sums) if sum(combo) % N == b)


def m_from_fixed_sizes(spec: ProductSpec, b: int, budget: int = ENUMERATION_BUDGET) -> int:
    """sum over (k_1..k_s) of (-1)^(k_1+..+k_s) M(k_1..k_s; b)."""
    total = 0
    for sizes in itertools.product(range(spec.size_d + 1), repeat=spec.s):
        total += (-1) ** sum(sizes) * m_fixed_sizes_bruteforce(spec, sizes, b, budget)
    return total


def _subset_sum_parity(D: Sequence[int]) -> list[tuple[int, int]]:
    out = []
    for mask in range(1 << len(D)):
        total = 0
        size = 0
        for i, a in enumerate(D):
            if mask >> i & 1:
                total += a
                size += 1
        out.append((total, size & 1))
    return out


def partition_parity_vector(spec: ProductSpec, budget: int = ENUMERATION_BUDGET) -> list[int]:
    """C_e(j) - C_o(j) for every j, by enumerating s-tuples of subsets of D_p."""
    D = spec.exponents()
    work = 2 ** (len(D) * spec.s)
    if work > budget:
        raise BudgetExceededError(f"{work} subset tuples exceed {budget}")
    single = _subset_sum_parity(D)
    out = [0] * (spec.degree + 1)
    for combo in itertools.product(single, repeat=spec.s):
        j = sum(c[0] for c in combo)
        odd = sum(c[1] for c in combo) & 1
        out[j] += -1 if odd else 1
    return out


def partition_parity_oracle(spec: ProductSpec, j: int, budget: int = ENUMERATION_BUDGET) -> int:
    """t_j as (#even-size) - (#odd-size) subset tuples with element sum j."""
    if j < 0 or j > spec.degree:
        return 0
    return _parity_cached(spec, budget)[j]


@lru_cache(maxsize=16)
def _parity_cached(spec: ProductSpec, budget: int) -> tuple[int, ...]:
    return tuple(partition_parity_vector(spec, budget))


# -- exact evaluation of M(b) -------------------------------------------------


def m_charsum_terms(spec: ProductSpec, b: int) -> list[tuple[int, int, int]]:
    """(d, c_d(b), p^(s N_p / d)) for each divisor d of N_p with p | d.

    Only these orders survive: T vanishes at every other root of unity of
    order dividing N_p, and T(zeta_d) = p^(N_p/d) when p | d.
    """
    p, N = spec.p, spec.modulus
    return [(d, ramanujan_sum(d, b), p ** (spec.s * N // d)) for d in divisors(N) if d % p == 0]


def m_charsum_exact(spec: ProductSpec, b: int) -> int:
    """M_{p,s,n}(b) = (1/N_p) sum_{d | N_p, p | d} c_d(b) p^(s N_p / d)."""
    _require_odd_prime(spec)
    _require_residue(spec, b)
    total = sum(c * w for _, c, w in m_charsum_terms(spec, b))
    q, r = divmod(total, spec.modulus)
    if r:
        raise VerificationError(f"character sum {total} not divisible by N_p = {spec.modulus}")
    return q


def alternating_binomial_check(size_d: int) -> bool:
    return sum((-1) ** k * math.comb(size_d, k) for k in range(size_d + 1)) == 0


def p_term_vanishing_check(spec: ProductSpec, order: int) -> bool:
    """Coefficients of (1-u^o)^((p-1)N_p/(p o)) up to u^|D_p| sum to zero."""
    _require_odd_prime(spec)
    if order <= 1 or spec.modulus % order or order % spec.p == 0:
        raise InvalidSpecError(f"order {order} must divide N_p, exceed 1 and be prime to p")
    power = (spec.p - 1) * spec.modulus // (spec.p * order)
    return sum(binomial_series(order, power, spec.size_d + 1)) == 0
