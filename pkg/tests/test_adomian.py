import numpy as np
import pytest

from admbvp.adomian import NonlinearTerm, adomian_sequence, oracle_adomian
from admbvp.series import PowerSeries

M = 10


def _one(m=M):
    return PowerSeries([1.0], m)


def _random_components(rng, count, m=M):
    return tuple(PowerSeries(rng.uniform(-1.0, 1.0, size=m)) for _ in range(count))


def test_square_closed_forms():
    rng = np.random.default_rng(5)
    u0, u1, u2 = _random_components(rng, 3)
    term = NonlinearTerm(monomials=((1.0, 2, 0),), x_weight=_one())
    a = adomian_sequence((u0, u1, u2), term)
    np.testing.assert_array_equal(a[0].coeffs, (u0 * u0).coeffs)
    np.testing.assert_array_equal(a[1].coeffs, (2.0 * (u0 * u1)).coeffs)
    np.testing.assert_array_equal(a[2].coeffs, (2.0 * (u0 * u2) + u1 * u1).coeffs)


def test_u_du_closed_forms():
    rng = np.random.default_rng(6)
    u0, u1 = _random_components(rng, 2)
    term = NonlinearTerm(monomials=((1.0, 1, 1),), x_weight=_one())
    a = adomian_sequence((u0, u1), term)
    d0, d1 = u0.differentiate(), u1.differentiate()
    np.testing.assert_array_equal(a[0].coeffs, (u0 * d0).coeffs)
    np.testing.assert_array_equal(a[1].coeffs, (u0 * d1 + u1 * d0).coeffs)


def test_triangularity():
    # grade k never sees components past index k
    rng = np.random.default_rng(7)
    comps = _random_components(rng, 4)
    term = NonlinearTerm(monomials=((1.0, 2, 1),), x_weight=_one())
    full = adomian_sequence(comps, term)
    for k in range(4):
        partial = adomian_sequence(comps[: k + 1], term)
        np.testing.assert_array_equal(full[k].coeffs, partial[k].coeffs)


def test_consistency_sum_for_square():
    # the first n+1 polynomials collect every product pair of grade <= n
    rng = np.random.default_rng(8)
    comps = _random_components(rng, 4)
    term = NonlinearTerm(monomials=((1.0, 2, 0),), x_weight=_one())
    total = None
    for a in adomian_sequence(comps, term):
        total = a if total is None else total + a
    brute = PowerSeries([0.0], M)
    for i in range(4):
        for j in range(4):
            if i + j <= 3:
                brute = brute + comps[i] * comps[j]
    np.testing.assert_allclose(total.coeffs, brute.coeffs, rtol=1e-12, atol=1e-14)


def test_linearity_in_term():
    rng = np.random.default_rng(9)
    comps = _random_components(rng, 3)
    w = PowerSeries(rng.uniform(-1.0, 1.0, size=M))
    combined = NonlinearTerm(monomials=((2.0, 2, 0), (-3.0, 1, 1)), x_weight=w)
    square = NonlinearTerm(monomials=((2.0, 2, 0),), x_weight=w)
    cross = NonlinearTerm(monomials=((-3.0, 1, 1),), x_weight=w)
    whole = adomian_sequence(comps, combined)
    parts = [
        a + b
        for a, b in zip(
            adomian_sequence(comps, square), adomian_sequence(comps, cross)
        )
    ]
    for got, want in zip(whole, parts):
        np.testing.assert_allclose(got.coeffs, want.coeffs, rtol=1e-12, atol=1e-15)


def test_x_weight_flag():
    rng = np.random.default_rng(10)
    comps = _random_components(rng, 2)
    w = PowerSeries(rng.uniform(-1.0, 1.0, size=M))
    term = NonlinearTerm(monomials=((1.0, 2, 0),), x_weight=w)
    bare = adomian_sequence(comps, term, apply_x_weight=False)
    weighted = adomian_sequence(comps, term, apply_x_weight=True)
    for b, wd in zip(bare, weighted):
        np.testing.assert_array_equal((b * w).coeffs, wd.coeffs)


def test_single_component_gives_plain_nonlinearity():
    rng = np.random.default_rng(12)
    (u0,) = _random_components(rng, 1)
    term = NonlinearTerm(monomials=((1.0, 3, 0),), x_weight=_one())
    (a0,) = adomian_sequence((u0,), term)
    np.testing.assert_allclose(
        a0.coeffs, (u0 * u0 * u0).coeffs, rtol=1e-13, atol=1e-15
    )


def test_oracle_agreement_spot():
    rng = np.random.default_rng(13)
    comps = _random_components(rng, 4)
    term = NonlinearTerm(monomials=((1.5, 2, 1),), x_weight=_one())
    for fast, slow in zip(adomian_sequence(comps, term), oracle_adomian(comps, term)):
        np.testing.assert_allclose(fast.coeffs, slow.coeffs, rtol=0.0, atol=1e-12)


def test_monomial_validation():
    with pytest.raises(ValueError):
        NonlinearTerm(monomials=(), x_weight=_one())
    with pytest.raises(ValueError):
        NonlinearTerm(monomials=((1.0, 0, 0),), x_weight=_one())
    with pytest.raises(ValueError):
        NonlinearTerm(monomials=((1.0, -1, 1),), x_weight=_one())
    with pytest.raises(ValueError):
        NonlinearTerm(monomials=((float("nan"), 1, 0),), x_weight=_one())


def test_component_order_mismatch_rejected():
    term = NonlinearTerm(monomials=((1.0, 2, 0),), x_weight=_one(8))
    with pytest.raises(ValueError):
        adomian_sequence((PowerSeries([1.0], 8), PowerSeries([1.0], 9)), term)
    with pytest.raises(ValueError):
        adomian_sequence((PowerSeries([1.0], 9),), term)
    with pytest.raises(ValueError):
        adomian_sequence((), term)
