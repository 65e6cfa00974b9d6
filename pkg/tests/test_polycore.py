import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from borwein_sums import (
    BudgetExceededError,
    IntPolynomial,
    InvalidSpecError,
    ProductSpec,
    eval_at_one,
    expand_product,
    mul_by_sparse_factor,
)
from oracles import naive_product

T311 = [1, -1, -1, 1, -1, 0, 2, 0, -1, 1, -1, -1, 1]


def test_product_spec_constants():
    spec = ProductSpec(3, 1, 1)
    assert (spec.modulus, spec.size_d, spec.degree) == (6, 4, 12)
    assert spec.exponents() == [1, 2, 4, 5]
    big = ProductSpec(13, 7, 10**6)
    assert big.degree == 13 * 12 * 7 * (10**6 + 1) ** 2 // 2


@pytest.mark.parametrize("args", [(4, 1, 1), (1, 1, 1), (3, 0, 1), (3, 1, -1)])
def test_product_spec_rejects(args):
    with pytest.raises(InvalidSpecError):
        ProductSpec(*args)


def test_expand_examples():
    assert expand_product(ProductSpec(3, 1, 0)).as_list() == [1, -1, -1, 1]
    t = expand_product(ProductSpec(3, 1, 1))
    assert t.degree == 12 and len(t) == 13
    assert t.as_list() == T311


def test_mul_by_sparse_factor_examples():
    assert mul_by_sparse_factor(IntPolynomial((1,)), 1, 1).as_list() == [1, -1]
    assert mul_by_sparse_factor(IntPolynomial((1, -1)), 2, 1).as_list() == [1, -1, -1, 1]
    assert mul_by_sparse_factor(IntPolynomial((1,)), 2, 2).as_list() == [1, 0, -2, 0, 1]


def test_mul_by_sparse_factor_rejects_bad_exponent():
    with pytest.raises(InvalidSpecError):
        mul_by_sparse_factor([1], 0)


def test_eval_at_one_examples():
    assert eval_at_one(expand_product(ProductSpec(3, 1, 1))) == 0
    assert eval_at_one(IntPolynomial((1, -1))) == 0
    assert eval_at_one(IntPolynomial((1, 0, -2, 0, 1))) == 0


def test_canonical_zero():
    assert IntPolynomial((0, 0)).coeffs == ()
    assert IntPolynomial().degree == -1
    assert IntPolynomial((1, 2, 0)).coeffs == (1, 2)


def test_budget():
    with pytest.raises(BudgetExceededError):
        expand_product(ProductSpec(3, 1, 5), budget=10)
    with pytest.raises(BudgetExceededError):
        mul_by_sparse_factor([1], 50, budget=10)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("BORWEIN_BUDGET", "12")
    with pytest.raises(BudgetExceededError):
        expand_product(ProductSpec(3, 1, 1))
    monkeypatch.setenv("BORWEIN_BUDGET", "13")
    assert expand_product(ProductSpec(3, 1, 1)).degree == 12


GRID = [ProductSpec(p, s, n) for p in (2, 3, 5, 7) for s in (1, 2, 3) for n in range(5)]


@pytest.mark.parametrize("spec", GRID, ids=str)
def test_structural_invariants(spec):
    t = expand_product(spec)
    assert t.degree == spec.degree
    assert t[0] == 1
    assert t[spec.degree] == spec.leading_sign
    assert eval_at_one(t) == 0
    d = spec.degree
    assert all(t[d - i] == spec.leading_sign * t[i] for i in range(d + 1))


TINY = [spec for spec in GRID if spec.degree <= 64]


@pytest.mark.parametrize("spec", TINY, ids=str)
def test_matches_naive_convolution(spec):
    assert expand_product(spec).as_list() == naive_product(spec.exponents(), spec.s)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(3, 1, 3), (5, 1, 2), (3, 2, 2), (7, 1, 1)]), st.randoms(use_true_random=False))
def test_order_independence(args, rnd):
    spec = ProductSpec(*args)
    factors = [m for m in spec.exponents() for _ in range(spec.s)]
    rnd.shuffle(factors)
    poly = IntPolynomial((1,))
    for m in factors:
        poly = mul_by_sparse_factor(poly, m)
    assert poly == expand_product(spec)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=12), st.integers(1, 6), st.integers(1, 3))
def test_mul_by_sparse_factor_matches_convolution(coeffs, m, times):
    expected = list(coeffs)
    for _ in range(times):
        expected = [a - b for a, b in zip(expected + [0] * m, [0] * m + expected)]
    assert mul_by_sparse_factor(coeffs, m, times) == IntPolynomial(tuple(expected))


def test_large_coefficients_stay_exact():
    # exceeds 64-bit range; compare against the palindrome and T(1) = 0
    spec = ProductSpec(3, 3, 30)
    t = expand_product(spec)
    assert max(abs(c) for c in t) > 2**63
    assert eval_at_one(t) == 0
    assert t[spec.degree - 17] == spec.leading_sign * t[17]


def test_polynomial_arithmetic():
    a = IntPolynomial((1, 1))
    b = IntPolynomial((1, -1))
    assert (a * b).as_list() == [1, 0, -1]
    assert (a + b).as_list() == [2]
    assert (a - a).coeffs == ()
    assert a.shift(2).as_list() == [0, 0, 1, 1]
