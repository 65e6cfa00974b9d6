"""Main terms, error bounds and sign claims for M_{p,s,n}(b), checked over
grids of (p, s, n, b) with two independent evaluations of M.

All comparisons are exact: rationals for the main term and integer
squaring wherever p^(s(n+1)/2) is irrational.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .charsieve import m_charsum_exact
from .errors import InvalidSpecError, VerificationError
from .polycore import ProductSpec, expand_product
from .progression import m_direct_all

log = logging.getLogger(__name__)

# (p, s) pairs whose sign pattern holds for every n >= 1, not only past the threshold.
ALL_N_SIGN_FAMILIES = {(3, 1), (3, 2), (5, 1)}


def sigma(spec: ProductSpec, b: int) -> int:
    """Main-term numerator: (p-1) p^(s(n+1)-1) if p | b, else -p^(s(n+1)-1)."""
    base = spec.p ** (spec.s * (spec.n + 1) - 1)
    return (spec.p - 1) * base if b % spec.p == 0 else -base


def main_term(spec: ProductSpec, b: int) -> Fraction:
    if not 0 <= b < spec.modulus:
        raise InvalidSpecError(f"b={b} outside [0, {spec.modulus})")
    return Fraction(sigma(spec, b), spec.n + 1)


def error_bound_holds(spec: ProductSpec, b: int, m_value: int) -> bool:
    """|M - main term| <= p^(s(n+1)/2), compared after clearing n+1 and squaring."""
    k = spec.n + 1
    diff = k * m_value - sigma(spec, b)
    return diff * diff <= k * k * spec.p ** (spec.s * k)


def _threshold_holds(p: int, s: int, n: int, divisible: bool) -> bool:
    # c p^(s(n+1)/2 - 1) > n+1  <=>  c^2 p^(s(n+1)) > p^2 (n+1)^2, both sides positive
    c = p - 1 if divisible else 1
    return c * c * p ** (s * (n + 1)) > p * p * (n + 1) ** 2


def sign_threshold(p: int, s: int, divisible: bool, n_cap: int = 10_000) -> int:
    """Smallest n >= 1 with c p^(s(n+1)/2-1) > n+1 (c = p-1 if p | b else 1)."""
    if p < 3 or s < 1:
        raise InvalidSpecError("sign threshold needs an odd prime p and s >= 1")
    ProductSpec(p, s, 0)
    for n in range(1, n_cap + 1):
        if _threshold_holds(p, s, n, divisible):
            return n
    raise InvalidSpecError(f"no threshold below n = {n_cap}")


def expected_sign(spec: ProductSpec, b: int) -> int:
    return 1 if b % spec.p == 0 else -1


def sign_claim_applies(spec: ProductSpec, b: int) -> bool:
    """Whether a proved sign statement covers this (p, s, n, b)."""
    if spec.n < 1:
        return False
    if (spec.p, spec.s) in ALL_N_SIGN_FAMILIES:
        return True
    return spec.n >= sign_threshold(spec.p, spec.s, b % spec.p == 0)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass
class VerificationRow:
    p: int
    s: int
    n: int
    b: int
    m_value: int
    m_charsum: int | None
    main_term: Fraction
    residue_class: int
    sign_expected: int
    sign_observed: int
    within_bound: bool
    sign_claimed: bool

    @property
    def sign_ok(self) -> bool | None:
        if not self.sign_claimed:
            return None
        return self.sign_observed == self.sign_expected

    @property
    def bound(self) -> float:
        return self.p ** (self.s * (self.n + 1) / 2)

    @property
    def bound_is_integer(self) -> bool:
        return self.s * (self.n + 1) % 2 == 0

    def as_record(self) -> dict:
        """Flat record in the CSV column order; big integers as strings."""
        return {
            "p": self.p,
            "s": self.s,
            "n": self.n,
            "b": self.b,
            "m_direct": str(self.m_value),
            "m_charsum": "" if self.m_charsum is None else str(self.m_charsum),
            "main_num": str(self.main_term.numerator),
            "main_den": str(self.main_term.denominator),
            "bound_ok": self.within_bound,
            "sign_ok": self.sign_ok,
        }


CSV_FIELDS = ["p", "s", "n", "b", "m_direct", "m_charsum", "main_num", "main_den", "bound_ok", "sign_ok"]


def verify_cell(p: int, s: int, n: int, use_charsum: bool = True,
                budget: int | None = None) -> list[VerificationRow]:
    """Rows for every b in [0, N_p) at one (p, s, n)."""
    spec = ProductSpec(p, s, n)
    direct = m_direct_all(spec, expand_product(spec, budget))
    use_charsum = use_charsum and p >= 3
    rows = []
    for b, m in enumerate(direct):
        alt = None
        if use_charsum:
            alt = m_charsum_exact(spec, b)
            if alt != m:
                raise VerificationError(f"M{(p, s, n)}({b}): direct {m} != character sum {alt}")
        rows.append(VerificationRow(
            p=p, s=s, n=n, b=b,
            m_value=m,
            m_charsum=alt,
            main_term=main_term(spec, b),
            residue_class=b % p,
            sign_expected=expected_sign(spec, b),
            sign_observed=_sign(m),
            within_bound=error_bound_holds(spec, b, m),
            sign_claimed=p >= 3 and sign_claim_applies(spec, b),
        ))
    return rows


def _cell(args):
    return verify_cell(*args)


def verify_grid(ps: Iterable[int], ss: Iterable[int], n_max: int, n_min: int = 0,
                use_charsum: bool = True, threads: int = 1,
                budget: int | None = None) -> list[VerificationRow]:
    """Verification rows over the grid, in (p, s, n, b) order.

    Any disagreement between direct and character-sum evaluation raises.
    Bound and sign outcomes are recorded in the rows; see :func:`failures`.
    """
    cells = [(p, s, n, use_charsum, budget)
             for p in sorted(set(ps)) for s in sorted(set(ss)) for n in range(n_min, n_max + 1)]
    if threads > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_cell, cells))
    else:
        chunks = [_cell(c) for c in cells]
    rows = [row for chunk in chunks for row in chunk]
    log.debug("verified %d rows over %d cells", len(rows), len(cells))
    return rows


def failures(rows: Sequence[VerificationRow]) -> list[VerificationRow]:
    return [r for r in rows if not r.within_bound or r.sign_ok is False]


def ratio_trend(p: int, s: int, b: int, n_max: int, n_min: int = 1,
                budget: int | None = None) -> list[tuple[int, Fraction]]:
    """(n, M(b) / main term) for each n where b is a valid residue."""
    out = []
    for n in range(n_min, n_max + 1):
        spec = ProductSpec(p, s, n)
        if b >= spec.modulus:
            continue
        m = m_direct_all(spec, expand_product(spec, budget))[b]
        out.append((n, Fraction(m) / main_term(spec, b)))
    return out


def row_dict(row: VerificationRow) -> dict:
    d = asdict(row)
    d["main_term"] = str(row.main_term)
    d["sign_ok"] = row.sign_ok
    return d
