"""Closed-form orbit cohomology, including the independent unit-group
cross-check at weight 1.

At weight 1 the degree-1 group of the reduced complex for F_p[x]/x^e is
the relative unit group 1 + (x), which a few lines of direct polynomial
arithmetic can enumerate; no shared code with the closed forms."""

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trcalc.drw import TruncationParams
from trcalc.padic import MultiIndex, PAdicFraction
from trcalc.syntomic import (
    AlphaBounds,
    Orbit,
    enumerate_alphas,
    enumerate_orbits,
    h1_syntomic_orbit,
    h_other_degrees,
    kernel_generator,
    s_function,
)

EMPTY = MultiIndex()


def _alpha(**entries) -> MultiIndex:
    return MultiIndex.from_dict(
        {slot: PAdicFraction(num, pexp) for slot, (num, pexp) in entries.items()}
    )


def test_s_function_examples():
    assert s_function(TruncationParams(3, 2, 1), 1) == 1
    assert s_function(TruncationParams(2, 2, 1), 1) == 2
    assert s_function(TruncationParams(2, 3, 1), 5) == 0


def test_s_function_alpha_lowers():
    params = TruncationParams(2, 3, 2)
    assert s_function(params, 1) == 3
    assert s_function(params, 1, _alpha(t=(1, 0))) == 1


def test_h1_syntomic_orbit_examples():
    assert h1_syntomic_orbit(TruncationParams(3, 2, 1), Orbit(1)).module.h == 1
    assert h1_syntomic_orbit(TruncationParams(2, 3, 1), Orbit(1)).module.h == 2
    assert h1_syntomic_orbit(TruncationParams(3, 2, 1), Orbit(2)).module.h == 0


def test_orbit_validation():
    with pytest.raises(ValueError):
        Orbit(3).validate(3)
    with pytest.raises(ValueError):
        Orbit(0).validate(2)


def test_kernel_generator_examples():
    assert kernel_generator(TruncationParams(3, 2, 1), Orbit(1)) == (0,)
    assert kernel_generator(TruncationParams(2, 2, 1), Orbit(1)) == (0, 0)
    assert kernel_generator(TruncationParams(2, 3, 2), Orbit(1)) == (0, 0, 1)


def test_kernel_generator_rejects_trivial():
    with pytest.raises(ValueError):
        kernel_generator(TruncationParams(2, 3, 1), Orbit(5))


def test_enumerate_orbits_examples():
    got = [(sm.orbit.m, sm.module.h) for sm in enumerate_orbits(TruncationParams(3, 2, 1))]
    assert got == [(1, 1)]
    got = [(sm.orbit.m, sm.module.h) for sm in enumerate_orbits(TruncationParams(2, 3, 2))]
    assert got == [(1, 3), (5, 1)]
    got = [(sm.orbit.m, sm.module.h) for sm in enumerate_orbits(TruncationParams(3, 2, 2))]
    assert got == [(1, 2)]


def test_enumerate_alphas_window():
    bounds = AlphaBounds(("t",), 3, 1)
    alphas = list(enumerate_alphas(bounds, 2))
    # zero plus num in {1, 3} (odd) times pexp in {0, 1}
    assert len(alphas) == 5
    assert EMPTY in alphas


def test_h_other_degrees():
    rep = h_other_degrees(TruncationParams(3, 2, 1))
    assert rep.reduced_h0 == "0"
    assert "0" in rep.higher


# -- independent weight-1 oracle: unit groups of F_p[x]/x^e ---------------


def _poly_mul_mod(a, b, e, p):
    out = [0] * e
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if i + j < e:
                    out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _unit_group_orders(p, e):
    """Multiset of element orders of 1 + (x) inside (F_p[x]/x^e)^*."""
    group = []
    for coeffs in itertools.product(range(p), repeat=e - 1):
        group.append([1, *coeffs])
    one = [1] + [0] * (e - 1)
    orders = []
    for g in group:
        acc, order = g, 1
        while acc != one:
            acc = _poly_mul_mod(acc, g, e, p)
            order += 1
        orders.append(order)
    return sorted(orders)


def _orders_of_abelian_p_group(exponents, p):
    """Element orders of a direct sum of Z/p^h, h in exponents."""
    orders = []
    for combo in itertools.product(*[range(p**h) for h in exponents]):
        order = 1
        for val, h in zip(combo, exponents):
            if val:
                ordv = p**h // math.gcd(val, p**h)
                order = order * ordv // math.gcd(order, ordv)
        orders.append(order)
    return sorted(orders)


@pytest.mark.parametrize(
    "p,e",
    [(3, 2), (2, 3), (2, 4), (3, 3), (5, 2), (2, 5), (3, 4), (5, 3), (7, 2)],
)
def test_weight1_matches_unit_group(p, e):
    summands = enumerate_orbits(TruncationParams(p, e, 1))
    exponents = sorted((sm.module.h for sm in summands), reverse=True)
    assert _unit_group_orders(p, e) == _orders_of_abelian_p_group(exponents, p)


def test_k1_exact_values():
    # K_1(F_3[x]/x^2, (x)) = Z/3 and K_1(F_2[x]/x^3, (x)) = Z/4
    assert [sm.module.h for sm in enumerate_orbits(TruncationParams(3, 2, 1))] == [1]
    assert [sm.module.h for sm in enumerate_orbits(TruncationParams(2, 3, 1))] == [2]


# -- randomized property suites -------------------------------------------

GRID_PARAMS = st.tuples(
    st.sampled_from([2, 3, 5]), st.integers(2, 12), st.integers(0, 5), st.integers(1, 40)
)


@settings(max_examples=300)
@given(GRID_PARAMS)
def test_s_monotone_in_e(args):
    p, e, i, m = args
    if m % p == 0:
        m += 1
    a = s_function(TruncationParams(p, e, i), m)
    b = s_function(TruncationParams(p, e + 1, i), m)
    assert b >= a


@settings(max_examples=300)
@given(GRID_PARAMS, st.integers(0, 6), st.integers(0, 3))
def test_s_antitone_in_alpha(args, num, pexp):
    p, e, i, m = args
    if m % p == 0:
        m += 1
    alpha = MultiIndex.from_dict({"t": PAdicFraction.make(num, pexp, p)})
    params = TruncationParams(p, e, i)
    assert s_function(params, m, alpha) <= s_function(params, m)


@settings(max_examples=300)
@given(GRID_PARAMS)
def test_h_is_s_or_zero(args):
    p, e, i, m = args
    if m % p == 0 or e % p == 0:
        return
    sm = h1_syntomic_orbit(TruncationParams(p, e, i), Orbit(m))
    assert sm.module.h == (0 if m % e == 0 else sm.s)


@settings(max_examples=200)
@given(st.sampled_from([2, 3, 5]), st.integers(2, 9), st.integers(0, 5))
def test_total_exponent_identity(p, e, i):
    if e % p == 0:
        return
    total = sum(sm.module.h for sm in enumerate_orbits(TruncationParams(p, e, i)))
    assert total == i * (e - 1)
