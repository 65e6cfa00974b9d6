"""Exact arithmetic in Z[zeta_N], elements stored as residue-count vectors.

A vector ``c`` of length N stands for sum_r c[r] * zeta_N**r.  The
representation is not unique; :func:`reduce_mod_cyclotomic` gives the
canonical one (remainder modulo the N-th cyclotomic polynomial).
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache
from typing import Sequence

from sympy import Poly, cyclotomic_poly, symbols

_x = symbols("x")


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(n, _x), _x).all_coeffs()))


def reduce_mod_cyclotomic(vec: Sequence[int], n: int) -> tuple[int, ...]:
    """Canonical coordinates of sum vec[r] zeta_n^r in the power basis."""
    phi = cyclotomic_coeffs(n)
    deg = len(phi) - 1
    c = list(vec)
    # Phi_n is monic, so long division stays in the integers.
    for i in range(len(c) - 1, deg - 1, -1):
        lead = c[i]
        if lead:
            lo = i - deg
            c[lo:i + 1] = [a - lead * f for a, f in zip(c[lo:i + 1], phi)]
    return tuple(c[:deg] + [0] * (deg - len(c)))


def to_integer(vec: Sequence[int], n: int) -> int | None:
    """The rational integer represented by ``vec``, or None if irrational."""
    red = reduce_mod_cyclotomic(vec, n)
    if any(red[1:]):
        return None
    return red[0]


def to_complex(vec: Sequence[int], n: int) -> complex:
    return sum(c * cmath.exp(2j * cmath.pi * r / n) for r, c in enumerate(vec) if c)


def exponential_sum_exact(d: int, b: int) -> int:
    """sum over x coprime to d of zeta_d^(x*b), evaluated in Z[zeta_d]."""
    vec = [0] * d
    for x in range(1, d + 1):
        if math.gcd(x, d) == 1:
            vec[(x * b) % d] += 1
    return _reduce_to_int(tuple(vec), d)


@lru_cache(maxsize=4096)
def _reduce_to_int(vec: tuple[int, ...], d: int) -> int:
    value = to_integer(vec, d)
    if value is None:
        raise ArithmeticError(f"exponential sum mod {d} is not rational")
    return value
