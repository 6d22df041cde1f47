import pytest

from wittsym import rings
from wittsym.covectors import Covector, cov_add, cov_F, cov_neg, cov_V, psi, teich_at, zero_covector
from wittsym.sampling import Sampler
from wittsym.witt import V_trunc, WittError, WittVector, frobenius_W, teichmuller

K = rings.laurent(2)
t = K.gen()


def test_psi_compatible_with_v():
    c = t + K.one()
    z = K.zero()
    assert psi(WittVector(2, 2, K, (z, c))) == psi(WittVector(2, 1, K, (c,)))
    assert psi(WittVector(2, 1, K, (c,))).window == (c,)


def test_psi_of_zero_and_untrimmed_window():
    assert psi(WittVector.zero(K, 3)) == zero_covector(K)
    a, b, c = t, K.one(), t * t
    assert psi(WittVector(2, 3, K, (a, b, c))).window == (a, b, c)


def test_entries_and_positions():
    x = teich_at(t, -2)
    assert x.window == (t, K.zero(), K.zero())
    assert x.entry(-2) == t and x.entry(-7).is_zero() and x.entry(0).is_zero()
    with pytest.raises(IndexError):
        x.entry(1)


def test_shift_drops_index_zero():
    a1, a0 = t, K.one()
    assert cov_V(Covector(2, K, (a1, a0))) == Covector(2, K, (a1,))
    assert cov_F(zero_covector(K)) == zero_covector(K)


@pytest.mark.parametrize("p,f,n", [(2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 2)])
def test_group_law_matches_witt_addition(p, f, n):
    S = Sampler(rings.laurent(p, f), seed=21)
    for _ in range(100):
        a, b = S.witt(n), S.witt(n)
        x = psi(a)
        assert cov_add(psi(a), psi(b)) == psi(a + b)
        assert cov_add(x, zero_covector(x.ring)) == x
        assert cov_add(x, cov_neg(x)).is_zero()
        assert cov_V(psi(a)) == psi(V_trunc(a))
        assert cov_F(psi(a)) == psi(frobenius_W(a))


def test_lift_length_independence():
    S = Sampler(rings.laurent(2), seed=22)
    for _ in range(30):
        x, y = S.covector(2), S.covector(2)
        assert cov_add(x, y) == cov_add(x, y, pad=2)


def test_lift_and_json():
    x = Covector(2, K, (t, K.one()))
    assert x.lift(3) == WittVector(2, 3, K, (K.zero(), t, K.one()))
    with pytest.raises(WittError):
        x.lift(1)
    assert Covector.from_json(x.to_json()) == x


def test_characteristic_zero_rejected():
    Z = rings.integers(2)
    with pytest.raises(WittError):
        Covector(2, Z, (Z(1),))
