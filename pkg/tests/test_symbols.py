import pytest

from wittsym import rings, symbols
from wittsym.covectors import psi
from wittsym.sampling import Sampler
from wittsym.symbols import (
    PrecisionPolicy,
    RouteDisagreement,
    SymbolError,
    SymbolValue,
    asw_symbol,
    asw_symbol_inf,
    asw_symbol_shift_check,
    classical_residue_symbol,
    pairing_inf,
    pairing_mn,
    pairing_n,
    trace_to_prime_W,
    wp_solve,
)
from wittsym.witt import V_trunc, WittVector, artin_schreier, frobenius_W, scale_teich, teichmuller


def laurent(p, f=1):
    K = rings.laurent(p, f)
    return K, K.gen()


# -- frozen values derived by hand from ghost residues ---------------------------------


def test_hand_value_p2_n2():
    # ghosts (t^-1, t^-2) against 1/(1+t): residues (1, -1) -> Witt (1, -1) -> (1, 1) -> 1 + 2 = 3
    K, t = laurent(2)
    a = teichmuller(rings.invert(t), 2)
    assert asw_symbol(a, K.one() + t) == SymbolValue(2, 2, 3)
    assert asw_symbol(teichmuller(rings.invert(t * t), 2), K.one() + t) == SymbolValue(2, 2, 3)


def test_hand_value_p3_n2():
    # ghosts (t^-1, t^-3): residues (1, 1) -> Witt (1, 0) -> 1
    K, t = laurent(3)
    assert asw_symbol(teichmuller(rings.invert(t), 2), K.one() + t) == SymbolValue(3, 2, 1)


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2)])
def test_anchor(p, n):
    K, t = laurent(p)
    assert asw_symbol(teichmuller(K.one(), n), t) == SymbolValue(p, n, 1)


def test_anchor_over_f4_is_degree():
    K, t = laurent(2, 2)
    assert asw_symbol(teichmuller(K.one(), 2), t) == SymbolValue(2, 2, 2)


def test_covector_anchor():
    K, t = laurent(3)
    for n in (1, 2, 3):
        assert asw_symbol_inf(psi(teichmuller(K.one(), n)), t) == SymbolValue(3, n, 1)
    assert asw_symbol_inf(psi(WittVector.zero(K, 2)), t).is_zero()


# -- identities on seeded samples -----------------------------------------------------------


@pytest.mark.parametrize("p,f,n", [(2, 1, 3), (3, 1, 2), (2, 2, 2)])
def test_vanishing_identities(p, f, n):
    S = Sampler(rings.laurent(p, f), seed=5)
    for _ in range(20):
        a, b = S.witt(n), S.nonzero()
        assert asw_symbol(artin_schreier(a), b).is_zero()
        assert asw_symbol(a, b ** (p**n)).is_zero()
        assert asw_symbol(teichmuller(b, n), b).is_zero()
        assert asw_symbol(frobenius_W(a), b) == asw_symbol(a, b)
        assert asw_symbol(V_trunc(a), b) == p * asw_symbol(a, b)


def test_shift_check_agrees():
    S = Sampler(rings.laurent(2), seed=9)
    for _ in range(10):
        base, shifted = asw_symbol_shift_check(S.witt(2), S.nonzero())
        assert base == shifted


def test_n1_matches_classical_residue():
    S = Sampler(rings.laurent(3, 2), seed=1)
    for _ in range(50):
        a, b = S.witt(1), S.nonzero()
        assert asw_symbol(a, b) == classical_residue_symbol(a[0], b)


def test_slack_doubling_and_provenance():
    K, t = laurent(2)
    a = teichmuller(rings.invert(t), 3)
    prov = {}
    v = asw_symbol(a, K.one() + t, policy=PrecisionPolicy(2, 3), provenance=prov)
    assert prov["method"] == "ghost-residue" and prov["lift_precision"] >= 2 * 3 - 1
    assert v == asw_symbol(a, K.one() + t, policy=PrecisionPolicy(9, 0))
    with pytest.raises(ValueError):
        asw_symbol(a, t, policy=PrecisionPolicy(1, 0))


def test_symbol_input_errors():
    K, t = laurent(2)
    with pytest.raises(SymbolError):
        asw_symbol(teichmuller(K.one(), 2), K.zero())
    F = rings.prime_field(2)
    with pytest.raises(SymbolError):
        asw_symbol(teichmuller(F.one(), 2), F.one())


# -- Z/p^n values ---------------------------------------------------------------------------


def test_symbol_value_lives_in_q_mod_z():
    assert SymbolValue(2, 2, 1) == SymbolValue(2, 3, 2)
    assert SymbolValue(2, 3, 2).at_level(2) == SymbolValue(2, 2, 1)
    with pytest.raises(ValueError):
        SymbolValue(2, 3, 1).at_level(2)
    assert (SymbolValue(3, 1, 1) + SymbolValue(3, 2, 6)).value == 0
    assert SymbolValue(2, 2, 3).order() == 4
    assert (-SymbolValue(5, 2, 1)).value == 24


# -- pairings ---------------------------------------------------------------------------------


def test_pairing_zero_slots():
    K, t = laurent(2)
    S = Sampler(K, seed=2)
    a = S.witt(2)
    z = WittVector.zero(K, 2)
    assert pairing_n(a, z).is_zero() and pairing_n(z, a).is_zero()


def test_pairing_with_teichmuller_right_slot():
    S = Sampler(rings.laurent(3), seed=4)
    for _ in range(10):
        a, b = S.witt(2), S.nonzero()
        assert pairing_n(a, teichmuller(b, 2)) == asw_symbol(scale_teich(a, b), b)


def test_pairing_order_four_witness():
    K, t = laurent(2)
    v = pairing_n(teichmuller(rings.invert(t), 2), teichmuller(t, 2))
    assert v == SymbolValue(2, 2, 1) and v.order() == 4


def test_pairing_mn_diagonal_and_skew():
    S = Sampler(rings.laurent(2), seed=8)
    for _ in range(10):
        a, b = S.witt(2), S.witt(2)
        assert pairing_mn(a, b) == pairing_n(a, b)
        c = S.witt(3)
        assert pairing_mn(a, c) == -pairing_mn(c, a)


def test_pairing_mn_frobenius_lowers_level():
    S = Sampler(rings.laurent(2), seed=10)
    for _ in range(10):
        a, b = S.witt(2), S.witt(3)
        short = WittVector(2, 2, b.ring, b.coords[:2])
        assert pairing_mn(frobenius_W(a), b) == pairing_mn(a, short)


def test_pairing_mn_routes_must_agree(monkeypatch):
    S = Sampler(rings.laurent(2), seed=12)
    a, b = S.witt(2), S.witt(3)
    while pairing_mn(a, b).is_zero():
        a = S.witt(2)
    monkeypatch.setattr(symbols, "pairing_mn_direct", lambda *args, **kw: SymbolValue(2, 2, 0))
    with pytest.raises(RouteDisagreement):
        pairing_mn(a, b)


def test_pairing_inf_zero_and_padding():
    K, t = laurent(2)
    S = Sampler(K, seed=13)
    x, y = S.covector(2), S.covector(2)
    assert pairing_inf(psi(WittVector.zero(K, 1)), y).is_zero()
    assert pairing_inf(x, y) == pairing_inf(x, y, pad=1)
    assert pairing_inf(x, y) == -pairing_inf(y, x)


# -- Artin-Schreier solving --------------------------------------------------------------------


def test_wp_solve_examples():
    F2, F4 = rings.prime_field(2), rings.finite_field(2, 2)
    assert artin_schreier(wp_solve(WittVector.zero(F2, 2))).is_zero()
    assert wp_solve(teichmuller(F2.one(), 1)) is None
    x = wp_solve(teichmuller(F4.one(), 1))
    assert x == teichmuller(F4.gen(), 1)
    # exhaustive over W_2(F_4): solvable exactly when the Witt trace vanishes
    solvable = 0
    for c0 in F4.elements():
        for c1 in F4.elements():
            target = WittVector(2, 2, F4, (c0, c1))
            sol = wp_solve(target)
            if trace_to_prime_W(target).is_zero():
                assert sol is not None and artin_schreier(sol) == target
                solvable += 1
            else:
                assert sol is None
    assert solvable == 4  # the image of F - 1 has index |W_2(F_2)| = 4
