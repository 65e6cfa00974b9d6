"""Exact expansion and progression sums for Borwein-type products.

The central object is

    T_{p,s,n}(q) = prod_{j=0..n} prod_{k=1..p-1} (1 - q^(pj+k))^s

together with the sums M_{p,s,n}(b) of its coefficients over the residue
class b modulo N_p = p(n+1).
"""

from .errors import (
    BorweinError,
    BudgetExceededError,
    InvalidSpecError,
    VerificationError,
)
from .polycore import IntPolynomial, ProductSpec, eval_at_one, expand_product, mul_by_sparse_factor

__all__ = [
    "BorweinError",
    "BudgetExceededError",
    "InvalidSpecError",
    "IntPolynomial",
    "ProductSpec",
    "VerificationError",
    "eval_at_one",
    "expand_product",
    "mul_by_sparse_factor",
]

__version__ = "0.1.0"
