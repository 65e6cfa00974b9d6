"""Acceptance criteria, each checked at its stated tolerance.

Run alone with ``pytest tests/test_acceptance.py -s`` to see the summary and
the reported trend table.
"""

import csv
import math
import time
from fractions import Fraction

import pytest
from sympy import divisors

from borwein_sums import ProductSpec, expand_product
from borwein_sums.charsieve import (
    CharacterFnSpec,
    alternating_binomial_check,
    f_psi_bruteforce,
    f_psi_closed,
    m_charsum_exact,
    p_term_vanishing_check,
    partition_parity_oracle,
)
from borwein_sums.progression import borwein_polynomials, check_andrews_recursions, m_direct_all
from borwein_sums.spectral import borw1_check, borw2_check, supnorm_sample, sum_abs_coeff
from borwein_sums.theorems import error_bound_holds, main_term, sign_threshold, verify_cell

criterion = pytest.mark.criterion

GRID = ([ProductSpec(p, s, n) for p in (3, 5) for s in (1, 2) for n in range(7)]
        + [ProductSpec(7, 1, n) for n in range(5)])
SIEVE_SPECS = [ProductSpec(p, 1, n) for p in (3, 5, 7, 11) for n in range(4) if p * (n + 1) <= 12]


@criterion(1, "character-sum formula equals direct expansion on the grid")
def test_oracle_equivalence():
    start = time.perf_counter()
    mismatches = []
    for spec in GRID:
        direct = m_direct_all(spec)
        for b in range(spec.modulus):
            if m_charsum_exact(spec, b) != direct[b]:
                mismatches.append((spec, b))
    assert mismatches == []
    assert time.perf_counter() - start < 30


@criterion(2, "error bound around the main term holds on the grid")
def test_error_bound():
    bad = [(spec, b) for spec in GRID for b, m in enumerate(m_direct_all(spec))
           if not error_bound_holds(spec, b, m)]
    assert bad == []


@criterion(3, "worked instance (3,1,1)")
def test_worked_instance():
    spec = ProductSpec(3, 1, 1)
    assert expand_product(spec).as_list() == [1, -1, -1, 1, -1, 0, 2, 0, -1, 1, -1, -1, 1]
    assert [m_charsum_exact(spec, b) for b in range(3)] == [4, -1, -2]
    assert m_direct_all(spec)[:3] == [4, -1, -2]
    assert main_term(spec, 0) == 3
    assert verify_cell(3, 1, 1)[0].bound == 3
    assert error_bound_holds(spec, 0, 6) and not error_bound_holds(spec, 0, 7)


@pytest.mark.parametrize("n", range(1, 7))
@criterion(4, "sign theorems for (3,1), (3,2), (5,1), 1 <= n <= 6")
def test_sign_theorems(n):
    m31 = m_direct_all(ProductSpec(3, 1, n))
    assert all(m < 0 for b, m in enumerate(m31) if b % 3)
    m32 = m_direct_all(ProductSpec(3, 2, n))
    assert all((m > 0) == (b % 3 == 0) and m != 0 for b, m in enumerate(m32))
    m51 = m_direct_all(ProductSpec(5, 1, n))
    assert all((m > 0) == (b % 5 == 0) and m != 0 for b, m in enumerate(m51))


@criterion(5, "sign thresholds 4 for p=3 and 3 for p=5")
def test_thresholds():
    assert sign_threshold(3, 1, divisible=False) == 4
    assert sign_threshold(5, 1, divisible=False) == 3


@criterion(6, "sieve identities on specs with N_p <= 12")
def test_sieve_identities():
    start = time.perf_counter()
    for spec in SIEVE_SPECS:
        N = spec.modulus
        for x in range(N):
            order = CharacterFnSpec(N, x).order
            for k in range(min(4, spec.size_d) + 1):
                assert f_psi_closed(spec, order, k) == f_psi_bruteforce(spec, x, k), (spec, x, k)
        for d in divisors(N):
            if d > 1 and d % spec.p:
                assert p_term_vanishing_check(spec, d), (spec, d)
    assert all(alternating_binomial_check(k) for k in range(1, 65))
    assert time.perf_counter() - start < 10


@pytest.mark.parametrize("spec", [ProductSpec(3, 1, n) for n in range(4)]
                         + [ProductSpec(5, 1, n) for n in range(2)], ids=str)
@criterion(7, "partition-parity oracle reproduces every coefficient")
def test_partition_parity(spec):
    start = time.perf_counter()
    t = expand_product(spec)
    assert [partition_parity_oracle(spec, j) for j in range(spec.degree + 1)] == t.as_list()
    assert time.perf_counter() - start < 60


@criterion(8, "Andrews recursions for 1 <= n <= 8")
def test_andrews_recursions():
    results = check_andrews_recursions(8)
    assert [r.n for r in results] == list(range(1, 9))
    assert all(r.ok for r in results), [r for r in results if not r.ok]


@pytest.mark.parametrize("n", range(13))
@criterion(9, "A_n, B_n, C_n have nonnegative coefficients for n <= 12")
def test_first_conjecture(n):
    named = borwein_polynomials(3, 1, n)
    assert all(c >= 0 for poly in named.values() for c in poly.coeffs)


@pytest.mark.parametrize("n", range(11))
@criterion(10, "spectral: power law, l1 bound, max-coefficient inequality")
def test_spectral_power_law(n):
    one, two = ProductSpec(3, 1, n), ProductSpec(3, 2, n)
    samples = 4 * two.degree
    a = supnorm_sample(one, samples, refine=False).value
    b = supnorm_sample(two, samples, refine=False).value
    assert math.isclose(b, a * a, rel_tol=1e-9)
    for spec in (one, two):
        assert Fraction(supnorm_sample(spec).value) <= sum_abs_coeff(expand_product(spec))


@criterion(10, "spectral: power law, l1 bound, max-coefficient inequality")
def test_spectral_borw2():
    for row in borw2_check(17, 1, range(4)):
        assert row.max_abs_coeff >= Fraction(row.supnorm) / (row.degree + 1)


@criterion(10, "spectral: power law, l1 bound, max-coefficient inequality")
def test_spectral_trend_table(tmp_path):
    # r_n = log_3 max|t| / (n+1) is reported, not asserted
    start = time.perf_counter()
    rows = borw1_check(3, 1, range(31))
    path = tmp_path / "trend_p3.csv"
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "max_abs_coeff", "r_n", "supnorm_estimate", "samples"])
        for r in rows:
            writer.writerow([r.n, r.max_abs_coeff, f"{r.log_ratio:.6f}", repr(r.supnorm), r.samples])
    print("\n" + path.read_text())
    assert all(r.ok for r in rows)
    assert time.perf_counter() - start < 120
