"""Seeded property suites.  Each suite checks one identity family on random witnesses."""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from . import rings
from .config import check_budget, max_n
from .covectors import cov_add, cov_F, cov_neg, cov_V, psi, zero_covector
from .forms import (
    FormalTensor,
    alpha_eval,
    alpha_inf,
    cov_relation_check,
    d_term,
    dlog_term,
    extend_tensor,
    f_map,
    g_map,
    gen_F_V,
    gen_V_F,
    gen_wp_dlog,
    gen_wp_teich,
    gn_equal,
    is_teich_form,
    mn_generators,
    reduce_to_teich,
    teich_rewrite_chain,
)
from .rings import RingElement
from .sampling import Sampler
from .symbols import (
    PrecisionPolicy,
    SymbolValue,
    asw_symbol,
    asw_symbol_inf,
    asw_symbol_shift_check,
    classical_residue_symbol,
    pairing_inf,
    pairing_mn,
    pairing_mn_direct,
    pairing_mn_lift,
    pairing_n,
    symbol_sum,
    trace_to_prime_W,
    wp_solve,
)
from .witt import (
    V_ext,
    V_trunc,
    WittVector,
    artin_schreier,
    from_ghost,
    frobenius_W,
    ghost,
    int_to_witt,
    scalar_mul,
    scale_teich,
    teich_compose,
    teich_decompose,
    teichmuller,
    truncate,
    witt_add,
    witt_mul,
    witt_neg,
    witt_to_int,
)


class UnknownSuite(KeyError):
    pass


@dataclass(frozen=True)
class SuiteSpec:
    suite: str
    p: int = 2
    f: int = 1
    n: int = 2
    m: int | None = None
    samples: int = 100
    seed: int = 0
    ring: str = "laurent"
    slack: int | None = None


@dataclass
class SuiteReport:
    suite: str
    params: dict
    samples_run: int
    checks: int
    failures: list = field(default_factory=list)
    values: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self, with_time: bool = True) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        if not with_time:
            out.pop("wall_time")
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


@dataclass
class Context:
    spec: SuiteSpec
    sampler: Sampler
    policy: PrecisionPolicy
    values: dict

    @property
    def p(self):
        return self.spec.p

    @property
    def n(self):
        return self.spec.n

    @property
    def S(self):
        return self.sampler


@dataclass(frozen=True)
class Suite:
    id: str
    group: str
    description: str
    run: Callable
    exhaustive: bool = False
    ring_kinds: tuple = ("laurent",)
    extra_levels: int = 0


CATALOG: dict[str, Suite] = {}


def suite(id: str, group: str, description: str, *, exhaustive=False, ring_kinds=("laurent",), extra_levels=0):
    def deco(fn):
        CATALOG[id] = Suite(id, group, description, fn, exhaustive, ring_kinds, extra_levels)
        return fn

    return deco


def _js(x):
    return x.to_json() if hasattr(x, "to_json") else x


def _case(ok: bool, name: str, **witness):
    return ok, name, {k: _js(v) for k, v in witness.items()}


def _ring_for(spec: SuiteSpec):
    if spec.ring == "laurent":
        return rings.laurent(spec.p, spec.f)
    if spec.ring == "field":
        return rings.finite_field(spec.p, spec.f)
    if spec.ring == "integers":
        return rings.integers(spec.p)
    raise ValueError(f"unknown ring kind {spec.ring!r}")


# -- Witt ring suites ----------------------------------------------------------


@suite("witt-ring-axioms", "witt", "W_n(R) is a commutative ring: associativity, commutativity, distributivity, 0, 1 and additive inverses",
       ring_kinds=("field", "laurent"))
def _witt_axioms(c: Context):
    a, b, d = (c.S.witt(c.n) for _ in range(3))
    R = a.ring
    zero, one = WittVector.zero(R, c.n), WittVector.one(R, c.n)
    ab = a * b
    yield _case((a + b) + d == a + (b + d), "add-assoc", a=a, b=b, c=d)
    yield _case(a + b == b + a, "add-comm", a=a, b=b)
    yield _case(ab * d == a * (b * d), "mul-assoc", a=a, b=b, c=d)
    yield _case(ab == b * a, "mul-comm", a=a, b=b)
    yield _case(a * (b + d) == ab + a * d, "distrib", a=a, b=b, c=d)
    yield _case(a + zero == a and a * one == a, "neutral", a=a)
    yield _case((a + witt_neg(a)).is_zero(), "inverse", a=a)


@suite("witt-fv-vf-p", "witt", "F V = V F = multiplication by p on W_n(R) in characteristic p",
       ring_kinds=("field", "laurent"))
def _witt_fv(c: Context):
    a = c.S.witt(c.n)
    pa = scalar_mul(c.p, a)
    yield _case(frobenius_W(V_trunc(a)) == pa, "FV", a=a)
    yield _case(V_trunc(frobenius_W(a)) == pa, "VF", a=a)


@suite("witt-v-product", "witt", "(V^k a)(V^l b) = V^(k+l)(F^l a F^k b) and (V^k a) b = V^k(a F^k b) for k + l < n",
       ring_kinds=("field", "laurent"))
def _witt_vprod(c: Context):
    n = c.n
    a, b = c.S.witt(n), c.S.witt(n)
    k = c.S.randint(0, n - 1)
    l = c.S.randint(0, n - 1 - k)
    lhs = V_trunc(a, k) * V_trunc(b, l)
    rhs = V_trunc(frobenius_W(a, l) * frobenius_W(b, k), k + l)
    yield _case(lhs == rhs, "VkVl", a=a, b=b, k=k, l=l)
    yield _case(V_trunc(a, k) * b == V_trunc(a * frobenius_W(b, k), k), "Vk-b", a=a, b=b, k=k)


@suite("witt-ghost-morphism", "witt", "the ghost map is a ring morphism over Z", ring_kinds=("integers",))
def _witt_ghost(c: Context):
    a, b = c.S.witt(c.n), c.S.witt(c.n)
    ga, gb = ghost(a), ghost(b)
    yield _case(ghost(a + b).entries == tuple(x + y for x, y in zip(ga, gb)), "sum", a=a, b=b)
    yield _case(ghost(a - b).entries == tuple(x - y for x, y in zip(ga, gb)), "difference", a=a, b=b)
    yield _case(ghost(a * b).entries == tuple(x * y for x, y in zip(ga, gb)), "product", a=a, b=b)


@suite("witt-ghost-roundtrip", "witt", "from_ghost(ghost(a)) = a over Z", ring_kinds=("integers",))
def _witt_roundtrip(c: Context):
    a = c.S.witt(c.n)
    yield _case(from_ghost(ghost(a)) == a, "roundtrip", a=a)


@suite("witt-frobenius-ghost", "witt", "outside characteristic p, w_i(F a) = w_(i+1)(a) when a_n = 0 is appended",
       ring_kinds=("integers",))
def _witt_frob_ghost(c: Context):
    a = c.S.witt(c.n)
    ext = WittVector(a.p, a.n + 1, a.ring, a.coords + (a.ring.zero(),))
    yield _case(ghost(frobenius_W(a)).entries == ghost(ext).entries[1:], "shift", a=a)


@suite("witt-wp-kernel", "witt", "F - 1 vanishes on all of W_n(F_p) and is additive (exhaustive)", exhaustive=True,
       ring_kinds=("field",))
def _witt_wp_kernel(c: Context):
    F = rings.prime_field(c.p)
    vecs = [WittVector(c.p, c.n, F, tuple(F(v) for v in digits)) for digits in _digits(c.p, c.n)]
    for a in vecs:
        yield _case(artin_schreier(a).is_zero(), "kernel", a=a)
    for a in vecs[:: max(1, len(vecs) // 8)]:
        for b in vecs:
            yield _case(artin_schreier(a + b) == artin_schreier(a) + artin_schreier(b), "additive", a=a, b=b)


@suite("witt-zpn-iso", "witt", "m -> m*1 is a group isomorphism Z/p^n -> W_n(F_p) (exhaustive)", exhaustive=True,
       ring_kinds=("field",))
def _witt_zpn(c: Context):
    p, n = c.p, c.n
    F = rings.prime_field(p)
    one = WittVector.one(F, n)
    acc = WittVector.zero(F, n)
    seen = set()
    for m in range(p**n):
        ghost_route = int_to_witt(m, p, n)
        yield _case(acc == ghost_route, "repeated-addition", m=m, vector=acc)
        yield _case(witt_to_int(acc) == m, "teichmuller-digits", m=m, vector=acc)
        seen.add(acc)
        acc = acc + one
    yield _case(acc.is_zero(), "order", m=p**n)
    yield _case(len(seen) == p**n, "bijective", size=len(seen))


@suite("witt-teich-decompose", "witt", "a = sum V^i [x_i] for the peeled-off x_i", ring_kinds=("field", "laurent"))
def _witt_decompose(c: Context):
    a = c.S.witt(c.n)
    xs = teich_decompose(a)
    yield _case(teich_compose(xs) == a, "roundtrip", a=a)
    yield _case(xs == a.coords, "coordinates", a=a)


@suite("witt-scale-teich", "witt", "a [b] computed coordinatewise equals a * [b]", ring_kinds=("field", "laurent"))
def _witt_scale(c: Context):
    a, b = c.S.witt(c.n), c.S.element()
    yield _case(scale_teich(a, b) == a * teichmuller(b, c.n), "scale", a=a, b=b)


@suite("witt-truncation", "witt", "truncation W_n -> W_m is a ring morphism", ring_kinds=("field", "laurent"))
def _witt_trunc(c: Context):
    a, b = c.S.witt(c.n), c.S.witt(c.n)
    m = c.S.randint(1, c.n)
    yield _case(truncate(a + b, m) == truncate(a, m) + truncate(b, m), "sum", a=a, b=b, m=m)
    yield _case(truncate(a * b, m) == truncate(a, m) * truncate(b, m), "product", a=a, b=b, m=m)


# -- covectors -------------------------------------------------------------------


@suite("cov-group", "covectors", "CW(K) is an abelian group; sums do not depend on the lift length")
def _cov_group(c: Context):
    x, y, z = (c.S.covector(c.n) for _ in range(3))
    yield _case(cov_add(cov_add(x, y), z) == cov_add(x, cov_add(y, z)), "assoc", x=x, y=y, z=z)
    yield _case(cov_add(x, y) == cov_add(y, x), "comm", x=x, y=y)
    yield _case(cov_add(x, zero_covector(x.ring)) == x, "neutral", x=x)
    yield _case(cov_add(x, cov_neg(x)).is_zero(), "inverse", x=x)
    if max(x.length, y.length) + 2 <= max_n(c.p):
        yield _case(cov_add(x, y) == cov_add(x, y, pad=2), "lift-length", x=x, y=y)


@suite("cov-psi", "covectors", "psi_n commutes with addition, F and V, and psi_(n+1)(V a) = psi_n(a)")
def _cov_psi(c: Context):
    a, b = c.S.witt(c.n), c.S.witt(c.n)
    yield _case(cov_add(psi(a), psi(b)) == psi(a + b), "add", a=a, b=b)
    yield _case(cov_F(psi(a)) == psi(frobenius_W(a)), "F", a=a)
    yield _case(cov_V(psi(a)) == psi(V_trunc(a)), "V", a=a)
    yield _case(psi(V_ext(a)) == psi(a), "limit", a=a)


# -- the symbol -------------------------------------------------------------------


def _sym(c, a, b):
    return asw_symbol(a, b, policy=c.policy)


@suite("symbol-bilinear", "symbol", "[a + a', b) = [a, b) + [a', b) and [a, b b') = [a, b) + [a, b')")
def _sym_bilinear(c: Context):
    a, a2 = c.S.witt(c.n), c.S.witt(c.n)
    b, b2 = c.S.nonzero(), c.S.nonzero()
    s = _sym(c, a, b)
    yield _case(_sym(c, a + a2, b) == s + _sym(c, a2, b), "left", a=a, a2=a2, b=b)
    yield _case(_sym(c, a, b * b2) == s + _sym(c, a, b2), "right", a=a, b=b, b2=b2)


@suite("symbol-wp-vanishing", "symbol", "[F a - a, b) = 0")
def _sym_wp(c: Context):
    a, b = c.S.witt(c.n), c.S.nonzero()
    v = _sym(c, artin_schreier(a), b)
    yield _case(v.is_zero(), "wp", a=a, b=b, value=v)


@suite("symbol-pn-power", "symbol", "[a, b^(p^n)) = 0")
def _sym_pn(c: Context):
    a, b = c.S.witt(c.n), c.S.nonzero()
    v = _sym(c, a, b ** (c.p**c.n))
    yield _case(v.is_zero(), "power", a=a, b=b, value=v)


@suite("symbol-frobenius", "symbol", "[F a, b) = [a, b)")
def _sym_frob(c: Context):
    a, b = c.S.witt(c.n), c.S.nonzero()
    yield _case(_sym(c, frobenius_W(a), b) == _sym(c, a, b), "F", a=a, b=b)


@suite("symbol-v-shift", "symbol", "[V a, b) at level n+1 equals [a, b) at level n, with the truncation law p^(n-k)[a,b)_(p^n) = [a|k, b)_(p^k)",
       extra_levels=1)
def _sym_vshift(c: Context):
    a, b = c.S.witt(c.n), c.S.nonzero()
    try:
        base, shifted = asw_symbol_shift_check(a, b, c.policy)
    except AssertionError as exc:
        yield _case(False, "truncation", a=a, b=b, error=str(exc))
        return
    yield _case(base == shifted, "shift", a=a, b=b, level_n=base, level_n1=shifted)


@suite("symbol-v-scaling", "symbol", "[V a, b) = p [a, b) with the truncated V on W_n")
def _sym_vscale(c: Context):
    a, b = c.S.witt(c.n), c.S.nonzero()
    yield _case(_sym(c, V_trunc(a), b) == c.p * _sym(c, a, b), "scale", a=a, b=b)


@suite("symbol-unramified", "symbol", "[a, b) = 0 for integral a and a unit b")
def _sym_unram(c: Context):
    a, b = c.S.witt(c.n, "integral"), c.S.unit()
    v = _sym(c, a, b)
    yield _case(v.is_zero(), "unramified", a=a, b=b, value=v)


@suite("symbol-tk-vanishing", "symbol", "[a, t) = 0 for a with coordinates in t F_q[t]")
def _sym_tk(c: Context):
    a = c.S.witt(c.n, "t")
    t = a.ring.gen()
    v = _sym(c, a, t)
    yield _case(v.is_zero(), "tk", a=a, value=v)


@suite("symbol-teich-self", "symbol", "[[b], b) = 0 for every nonzero b")
def _sym_teich_self(c: Context):
    b = c.S.nonzero()
    v = _sym(c, teichmuller(b, c.n), b)
    yield _case(v.is_zero(), "teich-self", b=b, value=v)


@suite("symbol-residue-n1", "symbol", "at n = 1 the symbol equals Tr Res(a db/b) computed in characteristic p")
def _sym_n1(c: Context):
    a, b = c.S.witt(1), c.S.nonzero()
    lhs, rhs = _sym(c, a, b), classical_residue_symbol(a[0], b)
    yield _case(lhs == rhs, "residue", a=a, b=b, ghost_residue=lhs, classical=rhs)


@suite("symbol-slack-independence", "symbol", "the symbol does not depend on the lift precision")
def _sym_slack(c: Context):
    a, b = c.S.witt(c.n), c.S.nonzero()
    lo = asw_symbol(a, b, policy=PrecisionPolicy(c.n - 1 if c.n > 1 else 1, 3))
    hi = asw_symbol(a, b, policy=PrecisionPolicy(2 * c.n + 1, 0))
    yield _case(lo == hi, "slack", a=a, b=b, low=lo, high=hi)


@suite("symbol-covector", "symbol", "the covector symbol vanishes on F - 1 images and p^n-th powers, ignores padding, and sends [1] in W_n to f/p^n")
def _sym_cov(c: Context):
    x = c.S.covector(c.n)
    b = c.S.nonzero()
    wp_x = psi(artin_schreier(x.lift(max(x.length, 1))))
    yield _case(asw_symbol_inf(wp_x, b, policy=c.policy).is_zero(), "wp", x=x, b=b)
    v = asw_symbol_inf(x, b ** (c.p**x.length), policy=c.policy)
    yield _case(v.is_zero(), "power", x=x, b=b, value=v)
    if x.length < c.n:
        yield _case(asw_symbol_inf(x, b, pad=1, policy=c.policy) == asw_symbol_inf(x, b, policy=c.policy),
                    "padding", x=x, b=b)
    R = x.ring
    one = psi(teichmuller(R.one(), c.n))
    anchor = asw_symbol_inf(one, R.gen(), policy=c.policy)
    yield _case(anchor == SymbolValue(c.p, c.n, R.f), "anchor", value=anchor)


@suite("anchor-normalization", "anchor", "[[1], t) = 1 in Z/p^n over F_p((t)) (f in general: the degree of the residue field)")
def _anchor(c: Context):
    R = rings.laurent(c.p, c.spec.f)
    v = _sym(c, teichmuller(R.one(), c.n), R.gen())
    c.values["anchor"] = v.to_json()
    yield _case(v == SymbolValue(c.p, c.n, c.spec.f), "anchor", value=v)


@suite("anchor-order", "anchor", "the pairing attains an element of order p^n")
def _anchor_order(c: Context):
    R = c.S.ring
    t = R.gen()
    unit = next(x for x in R.base().elements() if not rings.trace_to_prime(x).is_zero())
    a = teichmuller(R.monomial(unit, -1), c.n)
    b = teichmuller(t, c.n)
    v = pairing_n(a, b, c.policy)
    c.values["order_witness"] = {"a": a.to_json(), "b": b.to_json(), "value": v.to_json(), "order": v.order()}
    yield _case(v.order() == c.p**c.n, "order", a=a, b=b, value=v)


@suite("wp-solve", "symbol", "solutions of F x - x = target over F_q exist exactly when the Witt trace of target vanishes", ring_kinds=("field",))
def _wp_solve(c: Context):
    target = c.S.witt(c.n)
    x = wp_solve(target)
    tr = trace_to_prime_W(target)
    if x is None:
        yield _case(not tr.is_zero(), "obstruction", target=target)
    else:
        yield _case(artin_schreier(x) == target, "solution", target=target, x=x)


# -- pairings ---------------------------------------------------------------------


def _pn(c, a, b):
    return pairing_n(a, b, c.policy)


def _small(c: Context, n: int) -> WittVector:
    """Witt vectors with exponents in [-1, 1]; used under high Frobenius powers."""
    R = c.S.ring
    return WittVector(R.p, n, R, tuple(c.S.element(-1, 1) for _ in range(n)))


@suite("pairing-frobenius-n-invariance", "pairing", "((a + F^n c, b + F^n d)) = ((a, b))")
def _pair_i(c: Context):
    a, b = c.S.witt(c.n), c.S.witt(c.n)
    x, y = _small(c, c.n), _small(c, c.n)
    lhs = _pn(c, a + frobenius_W(x, c.n), b + frobenius_W(y, c.n))
    yield _case(lhs == _pn(c, a, b), "invariance", a=a, b=b, c=x, d=y)


@suite("pairing-bilinear", "pairing", "((a, b)) is additive in each slot")
def _pair_ii(c: Context):
    a, a2, b, b2 = (c.S.witt(c.n) for _ in range(4))
    s = _pn(c, a, b)
    yield _case(_pn(c, a + a2, b) == s + _pn(c, a2, b), "left", a=a, a2=a2, b=b)
    yield _case(_pn(c, a, b + b2) == s + _pn(c, a, b2), "right", a=a, b=b, b2=b2)


@suite("pairing-skew", "pairing", "((a, b)) = -((b, a))")
def _pair_iii(c: Context):
    a, b = c.S.witt(c.n), c.S.witt(c.n)
    yield _case(_pn(c, a, b) == -_pn(c, b, a), "skew", a=a, b=b)


@suite("pairing-cyclic", "pairing", "((a, bc)) + ((b, ac)) + ((c, ab)) = 0")
def _pair_iv(c: Context):
    a, b, d = (c.S.witt(c.n) for _ in range(3))
    v = _pn(c, a, b * d) + _pn(c, b, a * d) + _pn(c, d, a * b)
    yield _case(v.is_zero(), "cyclic", a=a, b=b, c=d, value=v)


@suite("pairing-expansion", "pairing", "((a, b)) = sum_(i,j) [[a_i^(p^j) b_j^(p^i)], b_j^(p^i))")
def _pair_expand(c: Context):
    a, b = c.S.witt(c.n), c.S.witt(c.n)
    p, n = c.p, c.n
    terms = []
    for i in range(n):
        for j in range(n):
            x = rings.frobenius_power(a[i], j) * rings.frobenius_power(b[j], i)
            if b[j].is_zero():
                continue
            terms.append(_sym(c, teichmuller(x, n), rings.frobenius_power(b[j], i)))
    yield _case(_pn(c, a, b) == symbol_sum(terms, p, n), "expansion", a=a, b=b)


@suite("pairing-teich-formula", "pairing", "((V^k [a], V^l [b])) = [[a^(p^l) b^(p^k)], b^(p^k))")
def _pair_teich(c: Context):
    n = c.n
    x, y = c.S.element(), c.S.nonzero()
    k, l = c.S.randint(0, n - 1), c.S.randint(0, n - 1)
    lhs = _pn(c, V_trunc(teichmuller(x, n), k), V_trunc(teichmuller(y, n), l))
    yk = rings.frobenius_power(y, k)
    rhs = _sym(c, teichmuller(rings.frobenius_power(x, l) * yk, n), yk)
    yield _case(lhs == rhs, "teich", a=x, b=y, k=k, l=l)


@suite("fv-adjoint", "pairing", "((F a, b)) = ((a, V b)) and ((V a, b)) = ((a, F b))")
def _pair_adj(c: Context):
    a, b = c.S.witt(c.n), c.S.witt(c.n)
    yield _case(_pn(c, frobenius_W(a), b) == _pn(c, a, V_trunc(b)), "F-V", a=a, b=b)
    yield _case(_pn(c, V_trunc(a), b) == _pn(c, a, frobenius_W(b)), "V-F", a=a, b=b)


@suite("pairing-level-shift", "pairing", "((a, b)) at level n equals ((V a, V b)) at level n+1", extra_levels=1)
def _pair_shift(c: Context):
    a, b = c.S.witt(c.n), c.S.witt(c.n)
    yield _case(_pn(c, a, b) == _pn(c, V_ext(a), V_ext(b)), "shift", a=a, b=b)


@suite("pairing-level-scaling", "pairing", "((a|k, b|k)) at level k equals p^(n-k) ((a, b)) at level n")
def _pair_scale(c: Context):
    a, b = c.S.witt(c.n), c.S.witt(c.n)
    full = _pn(c, a, b)
    for k in range(1, c.n):
        short = _pn(c, truncate(a, k), truncate(b, k))
        yield _case(short == c.p ** (c.n - k) * full, "scaling", a=a, b=b, k=k)


@suite("pairing-alternating", "pairing", "((a, a)) = 0, including p = 2")
def _pair_alt(c: Context):
    a = c.S.witt(c.n)
    v = _pn(c, a, a)
    yield _case(v.is_zero(), "alternating", a=a, value=v)


def _mn_lengths(c: Context):
    top = max_n(c.p)
    m = c.spec.m if c.spec.m is not None else c.S.randint(1, top)
    return m, c.n


@suite("pairing-mn-skew", "pairing", "((a, b))_(m,n) = -((b, a))_(n,m) with route agreement and p^min(m,n)-torsion")
def _pair_mn_skew(c: Context):
    m, n = _mn_lengths(c)
    a, b = c.S.witt(m), c.S.witt(n)
    yield _case(pairing_mn(a, b, c.policy) == -pairing_mn(b, a, c.policy), "skew", a=a, b=b)


@suite("pairing-mn-bilinear", "pairing", "((a, b))_(m,n) is bilinear and invariant under a -> a + F^n c, b -> b + F^m d")
def _pair_mn_bilin(c: Context):
    m, n = _mn_lengths(c)
    a, a2, b = c.S.witt(m), c.S.witt(m), c.S.witt(n)
    x, y = _small(c, m), _small(c, n)
    s = pairing_mn(a, b, c.policy)
    yield _case(pairing_mn(a + a2, b, c.policy) == s + pairing_mn(a2, b, c.policy), "bilinear", a=a, a2=a2, b=b)
    lhs = pairing_mn(a + frobenius_W(x, n), b + frobenius_W(y, m), c.policy)
    yield _case(lhs == s, "invariance", a=a, b=b, c=x, d=y)


@suite("pairing-mn-routes", "pairing", "the common-level and direct-sum evaluations of ((a, b))_(m,n) agree")
def _pair_mn_routes(c: Context):
    m, n = _mn_lengths(c)
    a, b = c.S.witt(m), c.S.witt(n)
    lifted = pairing_mn_lift(a, b, policy=c.policy)
    direct = pairing_mn_direct(a, b, policy=c.policy)
    yield _case(lifted == direct, "routes", a=a, b=b, common_level=lifted, direct=direct)
    k = min(m, n)
    yield _case((lifted * c.p**k).is_zero(), "torsion", a=a, b=b, value=lifted)
    if m == n:
        yield _case(lifted == _pn(c, a, b), "diagonal", a=a, b=b)


@suite("pairing-mn-fv", "pairing", "((F^i V^j a, F^k V^l b))_(m,n) = ((a, b))_(m-j-k, n-i-l) when both levels are positive, 0 otherwise")
def _pair_mn_fv(c: Context):
    m, n = _mn_lengths(c)
    a, b = c.S.witt(m), c.S.witt(n)
    i, j, k, l = (c.S.randint(0, 2) for _ in range(4))
    lhs = pairing_mn(frobenius_W(V_trunc(a, j), i), frobenius_W(V_trunc(b, l), k), c.policy)
    m2, n2 = m - j - k, n - i - l
    if m2 > 0 and n2 > 0:
        rhs = pairing_mn(truncate(a, m2), truncate(b, n2), c.policy)
    else:
        rhs = SymbolValue(c.p, 1, 0)
    yield _case(lhs == rhs, "case-split", a=a, b=b, i=i, j=j, k=k, l=l, lhs=lhs, rhs=rhs)


@suite("pairing-mn-teich-term", "pairing", "[F^(m+j) a F^n [b_j], b_j) at level m equals ((a, V^j [b_j]))_(m,n) and ((a, [b_j]))_(m,n-j)")
def _pair_mn_term(c: Context):
    m, n = _mn_lengths(c)
    a = c.S.witt(m)
    bj = c.S.nonzero()
    j = c.S.randint(0, n - 1)
    term = _sym(c, scale_teich(frobenius_W(a, m + j), rings.frobenius_power(bj, n)), bj)
    vj = V_trunc(teichmuller(bj, n), j)
    yield _case(term == pairing_mn(a, vj, c.policy), "term", a=a, b=bj, j=j)
    yield _case(term == pairing_mn(a, teichmuller(bj, n - j), c.policy), "shorter", a=a, b=bj, j=j)


@suite("pairing-inf", "pairing", "((x, y)) on covectors is independent of window padding and alternating")
def _pair_inf(c: Context):
    top = max_n(c.p)
    x, y = c.S.covector(max(1, top - 1)), c.S.covector(max(1, top - 1))
    base = pairing_inf(x, y, policy=c.policy)
    if max(x.length, y.length) < top:
        yield _case(base == pairing_inf(x, y, pad=1, policy=c.policy), "padding", x=x, y=y)
    yield _case(base == -pairing_inf(y, x, policy=c.policy), "antisymmetry", x=x, y=y)
    yield _case(pairing_inf(x, x, policy=c.policy).is_zero(), "alternating", x=x)


# -- forms ---------------------------------------------------------------------------


def _alpha(c, x):
    return alpha_eval(x, c.policy)


@suite("forms-kernel", "forms", "alpha vanishes on da, Fa db - a dVb, Va db - a dFb and (F-1)(a) dlog [b]")
def _forms_kernel(c: Context):
    a, b = c.S.witt(c.n), c.S.witt(c.n)
    y = c.S.nonzero()
    for name, x in (("d", d_term(a)), ("F-V", gen_F_V(a, b)), ("V-F", gen_V_F(a, b)), ("wp-dlog", gen_wp_dlog(a, y))):
        v = _alpha(c, x)
        yield _case(v.is_zero(), name, a=a, b=b, y=y, value=v)


@suite("forms-derivation", "forms", "alpha(a db + b da) = 0 and alpha(F^n(1) da) = 0")
def _forms_deriv(c: Context):
    a, b = c.S.witt(c.n), c.S.witt(c.n)
    x = FormalTensor.single(a, b) + FormalTensor.single(b, a)
    yield _case(_alpha(c, x).is_zero(), "leibniz", a=a, b=b)
    one = WittVector.one(a.ring, c.n)
    yield _case(_alpha(c, FormalTensor.single(frobenius_W(one, c.n), a)).is_zero(), "Fn", a=a)


@suite("forms-dlog-symbol", "forms", "alpha(a dlog [b]) = [a, b)")
def _forms_dlog(c: Context):
    a, b = c.S.witt(c.n), c.S.nonzero()
    yield _case(_alpha(c, dlog_term(a, b)) == _sym(c, a, b), "dlog", a=a, b=b)


def _relation_suite(kind):
    def run(c: Context):
        for g in mn_generators(kind, c.S, c.n, 3):
            v = _alpha(c, g)
            yield _case(v.is_zero(), kind, tensor=g, value=v)

    return run


for _kind, _id in (("M_n'", "forms-relations-Mprime"), ("M_n", "forms-relations-M"), ("N_n'", "forms-relations-Nprime"), ("N_n", "forms-relations-N")):
    suite(_id, "forms", f"alpha vanishes on sampled generators of kind {_kind}")(_relation_suite(_kind))


def _cov_relation_suite(kind):
    def run(c: Context):
        report = cov_relation_check(kind, c.S, 3, c.n, c.policy)
        for f in report["failures"]:
            yield _case(False, kind, **f)
        yield _case(not report["failures"], kind)

    return run


suite("forms-relations-Ncov", "forms", "the covector pairing vanishes on a(x)b + b(x)a, Fa(x)b - a(x)Vb and the three-term Teichmueller relation")(
    _cov_relation_suite("N_cov"))
suite("forms-relations-Nprime-cov", "forms", "the covector pairing vanishes on a(x)a, Fa(x)b - a(x)Vb and the three-term Teichmueller relation")(
    _cov_relation_suite("Nprime_cov"))


def _sample_tensor(c: Context, n: int) -> FormalTensor:
    R = c.S.ring
    terms = tuple((c.S.randint(-3, 3) or 1, c.S.witt(n), c.S.witt(n)) for _ in range(c.S.randint(1, 3)))
    return FormalTensor(n, R, terms)


@suite("forms-f-map", "forms", "alpha_n(V(x)V x) = alpha_(n-1)(x) = p alpha_n(zero-extended x)", extra_levels=1)
def _forms_f(c: Context):
    x = _sample_tensor(c, c.n)
    lower = _alpha(c, x)
    yield _case(_alpha(c, f_map(x)) == lower, "f-map", tensor=x)
    yield _case(c.p * _alpha(c, extend_tensor(x, c.n + 1)) == lower, "zero-extension", tensor=x)


@suite("forms-g-map", "forms", "alpha_1(g x) = p^(n-1) alpha_n(x); g kills p x and tensors with both slots in V W")
def _forms_g(c: Context):
    x = _sample_tensor(c, c.n)
    yield _case(_alpha(c, g_map(x)) == c.p ** (c.n - 1) * _alpha(c, x), "scaling", tensor=x)
    if c.n > 1:
        a, b = c.S.witt(c.n), c.S.witt(c.n)
        vv = FormalTensor.single(V_trunc(a), V_trunc(b))
        yield _case(_alpha(c, g_map(vv)).is_zero(), "V-slots", a=a, b=b)
        px = FormalTensor(c.n, x.ring, tuple((k, scalar_mul(c.p, l), r) for k, l, r in x.terms))
        yield _case(_alpha(c, g_map(px)).is_zero(), "kernel", tensor=x)


@suite("forms-reduce-teich", "forms", "reduction to [x](x)[y] terms preserves alpha")
def _forms_reduce(c: Context):
    x = _sample_tensor(c, c.n)
    r = reduce_to_teich(x)
    yield _case(is_teich_form(r), "shape", tensor=x)
    yield _case(gn_equal(x, r, c.policy), "alpha", tensor=x)


@suite("forms-rewrite-steps", "forms", "each single rewrite Va(x)b -> a(x)Fb and a(x)Vb -> Fa(x)b preserves alpha")
def _forms_steps(c: Context):
    n = c.n
    x, y = c.S.nonzero(), c.S.nonzero()
    k, l = c.S.randint(0, n - 1), c.S.randint(0, n - 1)
    chain = teich_rewrite_chain(x, k, y, l, n)
    vals = [_alpha(c, t) for t in chain]
    for i in range(1, len(vals)):
        yield _case(vals[i] == vals[i - 1], "step", a=x, b=y, k=k, l=l, index=i)


@suite("forms-vv-wp", "forms", "(V(x)V) of wp([a])[b]^-1 (x) [b] evaluates to 0 one level up", extra_levels=1)
def _forms_vv(c: Context):
    g = gen_wp_teich(c.S.element(), c.S.nonzero(), c.n)
    yield _case(_alpha(c, f_map(g)).is_zero(), "vv", tensor=g)


@suite("forms-gn-equal", "forms", "x equals x + (M_n generator) in G_n and differs from x + [1] dlog [t]")
def _forms_gn(c: Context):
    x = _sample_tensor(c, c.n)
    g = next(mn_generators("M_n", c.S, c.n, 1))
    yield _case(gn_equal(x, x + g, c.policy), "generator", tensor=x)
    R = x.ring
    anchor = dlog_term(WittVector.one(R, c.n), R.gen())
    if R.f % c.p**c.n:
        yield _case(not gn_equal(x, x + anchor, c.policy), "anchor", tensor=x)


# -- runner ------------------------------------------------------------------------------


def _digits(p, n):
    return itertools.product(range(p), repeat=n)


def catalog() -> list[Suite]:
    return [CATALOG[k] for k in sorted(CATALOG)]


def run_suite(spec: SuiteSpec) -> SuiteReport:
    if spec.suite not in CATALOG:
        raise UnknownSuite(spec.suite)
    s = CATALOG[spec.suite]
    ring_kind = spec.ring if spec.ring in s.ring_kinds else s.ring_kinds[0]
    spec = SuiteSpec(**{**asdict(spec), "ring": ring_kind})
    check_budget(spec.p, spec.n + s.extra_levels, spec.f)
    if spec.m is not None:
        check_budget(spec.p, spec.m, spec.f)
    if ring_kind == "integers" and spec.f != 1:
        raise ValueError("integer suites take f = 1")
    sampler = Sampler(_ring_for(spec), spec.seed)
    policy = PrecisionPolicy(spec.slack, 3)
    ctx = Context(spec, sampler, policy, {})
    t0 = time.perf_counter()
    failures, checks = [], 0
    rounds = 1 if s.exhaustive else spec.samples
    for i in range(rounds):
        for ok, name, witness in s.run(ctx):
            checks += 1
            if not ok:
                failures.append({"sample": i, "check": name, "witness": witness})
    return SuiteReport(
        suite=spec.suite,
        params=asdict(spec),
        samples_run=rounds,
        checks=checks,
        failures=failures,
        values=ctx.values,
        wall_time=round(time.perf_counter() - t0, 6),
    )
