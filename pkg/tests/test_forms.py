import pytest

from wittsym import rings
from wittsym.forms import (
    RELATION_KINDS,
    FormalTensor,
    alpha_eval,
    cov_relation_check,
    d_term,
    dlog_term,
    extend_tensor,
    f_map,
    g_map,
    gen_F_V,
    gen_wp_teich,
    gn_equal,
    is_teich_form,
    mn_generators,
    reduce_to_teich,
    teich_rewrite_chain,
)
from wittsym.sampling import Sampler
from wittsym.symbols import SymbolValue, asw_symbol
from wittsym.witt import V_trunc, WittError, WittVector, frobenius_W, teichmuller

K2 = rings.laurent(2)
t2 = K2.gen()


def tensor(S, n, terms=3):
    return FormalTensor(n, S.ring, tuple((S.randint(-2, 2) or 1, S.witt(n), S.witt(n)) for _ in range(terms)))


def test_pruning_and_level_checks():
    a = teichmuller(t2, 2)
    assert len(FormalTensor(2, K2, ((0, a, a),))) == 0
    with pytest.raises(WittError):
        FormalTensor(2, K2, ((1, a, teichmuller(t2, 3)),))


def test_json_round_trip():
    S = Sampler(K2, seed=1)
    x = tensor(S, 2)
    y = FormalTensor.from_json(x.to_json())
    assert y.to_json() == x.to_json()


def test_anchor_through_dlog_term():
    for p in (2, 3):
        K = rings.laurent(p)
        for n in (1, 2):
            x = dlog_term(WittVector.one(K, n), K.gen())
            assert alpha_eval(x) == SymbolValue(p, n, 1)


def test_dlog_term_edge_cases():
    z = WittVector.zero(K2, 2)
    assert len(dlog_term(z, t2)) == 0
    a = teichmuller(t2 + K2.one(), 2)
    x = dlog_term(a, K2.one())
    assert x.terms == ((1, a, teichmuller(K2.one(), 2)),)
    assert alpha_eval(x).is_zero()


@pytest.mark.parametrize("p,f,n", [(2, 1, 3), (3, 1, 2), (2, 2, 2)])
def test_dlog_term_evaluates_to_symbol(p, f, n):
    S = Sampler(rings.laurent(p, f), seed=2)
    for _ in range(30):
        a, b = S.witt(n), S.nonzero()
        assert alpha_eval(dlog_term(a, b)) == asw_symbol(a, b)


def test_exact_forms_and_leibniz():
    S = Sampler(K2, seed=3)
    for _ in range(20):
        a, b = S.witt(2), S.witt(2)
        assert alpha_eval(d_term(a)).is_zero()
        assert alpha_eval(FormalTensor.single(a, b) + FormalTensor.single(b, a)).is_zero()


def test_generator_shapes():
    S = Sampler(K2, seed=4)
    a, b = S.witt(2), S.witt(2)
    g = gen_F_V(a, b)
    assert g.terms == ((1, frobenius_W(a), b), (-1, a, V_trunc(b)))
    w = gen_wp_teich(t2, t2 + K2.one(), 2)
    assert len(w) == 1 and alpha_eval(w).is_zero()


@pytest.mark.parametrize("kind", [k for k in RELATION_KINDS if not k.endswith("_cov")])
def test_relation_generators_vanish(kind):
    for p, f, n in [(2, 1, 2), (3, 1, 2), (2, 2, 2)]:
        S = Sampler(rings.laurent(p, f), seed=5)
        for g in mn_generators(kind, S, n, 12):
            assert alpha_eval(g).is_zero()


@pytest.mark.parametrize("kind", ["N_cov", "Nprime_cov"])
def test_covector_relations_vanish(kind):
    S = Sampler(rings.laurent(2), seed=6)
    report = cov_relation_check(kind, S, 12, 3)
    assert report["failures"] == []


def test_unknown_relation_kind():
    with pytest.raises(ValueError):
        list(mn_generators("Q_n", Sampler(K2), 2, 1))


def test_reduce_to_teich_fixed_point_and_shape():
    x = FormalTensor.single(teichmuller(t2, 2), teichmuller(t2 + K2.one(), 2))
    assert reduce_to_teich(x).terms == x.terms
    a, b = t2, rings.invert(t2) + K2.one()
    y = FormalTensor.single(V_trunc(teichmuller(a, 3), 1), V_trunc(teichmuller(b, 3), 2))
    r = reduce_to_teich(y)
    assert r.terms == ((1, teichmuller(a**4, 3), teichmuller(b**2, 3)),)
    assert gn_equal(y, r)


def test_reduce_to_teich_random():
    S = Sampler(rings.laurent(3), seed=7)
    for _ in range(20):
        x = tensor(S, 2)
        r = reduce_to_teich(x)
        assert is_teich_form(r) and gn_equal(x, r)


def test_rewrite_chain_steps_preserve_alpha():
    chain = teich_rewrite_chain(t2 + K2.one(), 2, rings.invert(t2), 1, 3)
    values = {alpha_eval(x) for x in chain}
    assert len(chain) == 4 and len(values) == 1


def test_f_and_g_maps():
    for p, n in ((2, 2), (3, 2)):
        S = Sampler(rings.laurent(p), seed=8)
        for _ in range(15):
            x = tensor(S, n)
            assert alpha_eval(f_map(x)) == alpha_eval(x)
            assert p * alpha_eval(extend_tensor(x, n + 1)) == alpha_eval(x)
            assert alpha_eval(g_map(x)) == p ** (n - 1) * alpha_eval(x)
    assert len(f_map(FormalTensor.empty(K2, 2))) == 0


def test_gn_equality_detects_anchor():
    S = Sampler(K2, seed=9)
    x = tensor(S, 2)
    assert gn_equal(x, x + gen_F_V(S.witt(2), S.witt(2)))
    assert not gn_equal(x, x + dlog_term(WittVector.one(K2, 2), t2))
