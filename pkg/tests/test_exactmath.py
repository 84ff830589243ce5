import random
from fractions import Fraction

import pytest

from curvealex.exactmath import (
    INF,
    DimensionError,
    NotDivisibleError,
    expand_truncated,
    mp_exact_div,
    mp_mul,
    ord_lead,
    up_mul,
    up_normal,
)
from corpus import semigroup_closure


def test_ord_lead_reads_smallest_exponent():
    assert ord_lead({3: Fraction(1), 5: Fraction(2)}) == (3, 1)


def test_ord_lead_zero_polynomial_is_infinite():
    assert ord_lead({}) == (INF, None)


def test_ord_lead_orders_add_under_multiplication():
    p = up_mul({2: Fraction(1)}, {3: Fraction(1)})
    assert ord_lead(p) == (5, 1)


def test_mp_mul_difference_of_squares():
    a = {(0, 0): 1, (1, 1): -1}
    b = {(0, 0): 1, (1, 1): 1}
    assert mp_mul(a, b) == {(0, 0): 1, (2, 2): -1}


def test_mp_mul_identity():
    a = {(2, 0): 3, (0, 1): -1}
    assert mp_mul(a, {(0, 0): 1}) == a


def test_mp_mul_univariate_embedding():
    a = {(0,): 1, (1,): -1}
    b = {(0,): 1, (1,): 1, (2,): 1}
    assert mp_mul(a, b) == {(0,): 1, (3,): -1}


def test_mp_mul_rejects_mixed_arity():
    with pytest.raises(DimensionError):
        mp_mul({(1,): 1}, {(1, 0): 1})


def test_mp_exact_div_difference_of_squares():
    num = {(0, 0): 1, (2, 2): -1}
    den = {(0, 0): 1, (1, 1): -1}
    assert mp_exact_div(num, den) == {(0, 0): 1, (1, 1): 1}


def test_mp_exact_div_sign_flip():
    num = {(0, 0): 1, (1, 1): -1}
    den = {(1, 1): 1, (0, 0): -1}
    assert mp_exact_div(num, den) == {(0, 0): -1}


def test_mp_exact_div_nonzero_remainder_raises():
    with pytest.raises(NotDivisibleError):
        mp_exact_div({(0, 0): 1, (1, 0): 1}, {(0, 0): 1, (0, 1): -1})


def test_expand_truncated_semigroup_2_3():
    # oracle: enumerate the numerical semigroup <2, 3> up to 6
    members = semigroup_closure([2, 3], 6)
    expected = {(v,): 1 for v in members}
    got = expand_truncated(1, [((6,), 1)], [((2,), 1), ((3,), 1)], 6)
    assert got == expected


def test_expand_truncated_empty_product_is_one():
    assert expand_truncated(2, [], [], 5) == {(0, 0): 1}


def test_expand_truncated_geometric_series():
    got = expand_truncated(1, [], [((1,), 1)], 3)
    assert got == {(0,): 1, (1,): 1, (2,): 1, (3,): 1}


def test_expand_truncated_rejects_zero_direction():
    with pytest.raises(ValueError):
        expand_truncated(2, [((0, 0), 1)], [], 4)


def _random_unipoly(rng, nonzero=False):
    terms = {e: Fraction(rng.randint(-4, 4), rng.randint(1, 4))
             for e in rng.sample(range(7), rng.randint(0, 5))}
    p = up_normal(terms)
    if nonzero and not p:
        p = {rng.randint(0, 6): Fraction(1)}
    return p


def _random_multipoly(rng, r, nonzero=False):
    p = {}
    for _ in range(rng.randint(0, 5)):
        e = tuple(rng.randint(0, 3) for _ in range(r))
        c = rng.randint(-5, 5)
        if c:
            p[e] = p.get(e, 0) + c
    p = {e: c for e, c in p.items() if c}
    if nonzero and not p:
        p = {tuple(rng.randint(0, 3) for _ in range(r)): 1}
    return p


def test_ord_lead_multiplicative_on_random_polynomials():
    rng = random.Random(7)
    for _ in range(200):
        p = _random_unipoly(rng)
        q = _random_unipoly(rng)
        op, lp = ord_lead(p)
        oq, lq = ord_lead(q)
        opq, lpq = ord_lead(up_mul(p, q))
        assert opq == op + oq
        if lp is not None and lq is not None:
            assert lpq == lp * lq


def test_exact_division_round_trip_on_random_polynomials():
    rng = random.Random(11)
    for _ in range(200):
        r = rng.choice([1, 2, 3])
        a = _random_multipoly(rng, r)
        b = _random_multipoly(rng, r, nonzero=True)
        assert mp_exact_div(mp_mul(a, b), b) == a


def test_expand_truncated_cancels_matching_factors():
    rng = random.Random(13)
    for _ in range(50):
        r = rng.choice([1, 2])
        factors = []
        for _ in range(rng.randint(1, 3)):
            m = tuple(rng.randint(0, 3) for _ in range(r))
            if any(m):
                factors.append((m, rng.randint(1, 2)))
        if not factors:
            continue
        bound = rng.randint(1, 8)
        got = expand_truncated(r, factors, factors, bound)
        assert got == {(0,) * r: 1}
