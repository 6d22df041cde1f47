import pytest

from wittsym import rings
from wittsym.rings import (
    ExpansionOrderError,
    NotAUnitError,
    RingDescriptor,
    RingElement,
    RingError,
    RingMismatchError,
)


def test_f2_one_plus_one():
    F = rings.prime_field(2)
    assert (F(1) + F(1)).is_zero()


def test_f4_x_squared():
    F4 = rings.finite_field(2, 2, (1, 1, 1))
    x = F4.gen()
    assert x * x == F4([1, 1])


def test_laurent_distributivity():
    L = rings.laurent(3)
    t = L.gen()
    assert (rings.invert(t) + L.one()) * t == L.one() + t


def test_field_inverse():
    F5 = rings.prime_field(5)
    assert rings.invert(F5(2)) == F5(3)


def test_monomial_inverse_exact():
    L = rings.laurent(2)
    assert rings.invert(L.gen() ** 3) == L.monomial(1, -3)


def test_series_inverse_to_order():
    L = rings.laurent(2)
    t = L.gen()
    inv = rings.invert(L.one() + t, 3)
    assert inv.element == L({0: 1, 1: 1, 2: 1, 3: 1})
    with pytest.raises(ExpansionOrderError):
        inv.coefficient(4)


def test_non_monomial_inverse_needs_order():
    L = rings.laurent(2)
    with pytest.raises(NotAUnitError):
        rings.invert(L.one() + L.gen())
    with pytest.raises(NotAUnitError):
        rings.invert(L.zero())


def test_frobenius_power_examples():
    F4 = rings.finite_field(2, 2)
    x = F4.gen()
    assert rings.frobenius_power(x, 1) == x + F4.one()
    F3 = rings.prime_field(3)
    assert all(rings.frobenius_power(c, 1) == c for c in F3.elements())
    L = rings.laurent(2)
    t = L.gen()
    assert rings.frobenius_power(t + L.one(), 1) == t * t + L.one()


def test_trace_examples():
    F4 = rings.finite_field(2, 2)
    F2 = rings.prime_field(2)
    assert rings.trace_to_prime(F4.gen()) == F2(1)
    assert rings.trace_to_prime(F4.one()) == F2(0)
    F5 = rings.prime_field(5)
    assert rings.trace_to_prime(F5(3)) == F5(3)


def test_teichmuller_lift_examples():
    F2, F3 = rings.prime_field(2), rings.prime_field(3)
    for N in (1, 3, 5):
        assert rings.teichmuller_lift_coeff(F2(1), N) == rings.lift_ring(2, 1, N)(1)
    assert rings.teichmuller_lift_coeff(F3(2), 2) == rings.lift_ring(3, 1, 2)(8)
    assert rings.teichmuller_lift_coeff(F3(0), 2).is_zero()


@pytest.mark.parametrize("p,f,N", [(2, 2, 4), (3, 2, 3), (5, 1, 3)])
def test_teichmuller_lift_is_fixed_by_q_power(p, f, N):
    F = rings.finite_field(p, f)
    for c in F.elements():
        w = rings.teichmuller_lift_coeff(c, N)
        assert w ** F.q == w
        assert rings.reduce_mod_p(w) == c


def test_residue_examples():
    L = rings.laurent(2)
    t = L.gen()
    view = rings.LaurentSeriesView(rings.invert(t), 5)
    assert rings.residue(view) == L.base().one()
    assert rings.residue(rings.LaurentSeriesView(t * t + L.one(), 5)).is_zero()
    LL = rings.laurent(3).lift(2)
    x = LL({-2: 1, -1: 3})
    assert rings.residue(rings.LaurentSeriesView(x, 0)) == LL.base()(3)


def test_dlog_examples():
    L = rings.laurent(2)
    t = L.gen()
    assert rings.dlog_series(t, 4).element == rings.invert(t)
    assert rings.dlog_series(L.one(), 4).element.is_zero()
    assert rings.dlog_series(L.one() + t, 2).element == L({0: 1, 1: 1, 2: 1})


def test_descriptor_validation():
    with pytest.raises(RingError):
        RingDescriptor("prime-field", 4, 1, (0, 1), None)
    with pytest.raises(RingError):
        rings.finite_field(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2
    with pytest.raises(RingError):
        RingDescriptor("lift-ring", 2, 1, (0, 1), None)


def test_mixed_rings_raise():
    with pytest.raises(RingMismatchError):
        rings.prime_field(2)(1) + rings.prime_field(3)(1)


def test_element_json_round_trip():
    L = rings.laurent(2, 2)
    x = L({-1: [1, 1], 2: 1})
    assert RingElement.from_json(x.to_json()) == x
    D = rings.laurent(3)
    assert RingDescriptor.from_json(D.to_json()) == D


def test_lift_reduction_round_trip():
    L = rings.laurent(3, 2)
    x = L({-2: [1, 2], 0: [0, 1], 3: 2})
    lifted = rings.teichmuller_lift_laurent(x, 4)
    assert rings.reduce_mod_p(lifted) == x
    assert rings.reduce_mod_p(rings.naive_lift(x, 4)) == x


def test_divide_by_p_power():
    LL = rings.laurent(2).lift(4)
    x = LL({-1: 4, 2: 12})
    assert rings.divide_by_p_power(x, 2) == LL({-1: 1, 2: 3})
    assert rings.divide_by_p_power(x, 3) is None
    Z = rings.integers(3)
    assert rings.p_adic_valuation(Z(18)) == 2
