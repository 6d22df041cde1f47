"""Formal tensors in W_n(K) (x) W_n(K), relation generators and the map alpha.

A term (c, a, b) stands for c * (a (x) b), i.e. c * a db in Omega^1(W_n(K)).
Equality in the quotient G_n is decided semantically: x == y iff
alpha(x - y) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import rings
from .covectors import Covector, cov_F, cov_V, psi, teich_at
from .rings import RingDescriptor, RingElement
from .sampling import Sampler
from .symbols import (
    DEFAULT_POLICY,
    SymbolValue,
    pairing_inf,
    pairing_n,
    symbol_zero,
)
from .witt import (
    V_ext,
    V_trunc,
    WittError,
    extend_by_zero,
    WittVector,
    artin_schreier,
    frobenius_W,
    scale_teich,
    teich_decompose,
    teichmuller,
    truncate,
    witt_mul,
)

RELATION_KINDS = ("M_n'", "M_n", "N_n'", "N_n", "N_cov", "Nprime_cov")


@dataclass(frozen=True)
class FormalTensor:
    n: int
    ring: RingDescriptor
    terms: tuple

    def __post_init__(self):
        kept = []
        for c, left, right in self.terms:
            if c == 0:
                continue
            for v in (left, right):
                if v.n != self.n or v.ring != self.ring:
                    raise WittError(f"term slot {v!r} is not in W_{self.n}({self.ring})")
            kept.append((int(c), left, right))
        object.__setattr__(self, "terms", tuple(kept))

    @classmethod
    def single(cls, left: WittVector, right: WittVector, c: int = 1) -> FormalTensor:
        return cls(left.n, left.ring, ((c, left, right),))

    @classmethod
    def empty(cls, ring: RingDescriptor, n: int) -> FormalTensor:
        return cls(n, ring, ())

    def _check(self, other):
        if (self.n, self.ring) != (other.n, other.ring):
            raise WittError("tensors of different level or ring")

    def __add__(self, other: FormalTensor) -> FormalTensor:
        self._check(other)
        return FormalTensor(self.n, self.ring, self.terms + other.terms)

    def __neg__(self) -> FormalTensor:
        return FormalTensor(self.n, self.ring, tuple((-c, a, b) for c, a, b in self.terms))

    def __sub__(self, other: FormalTensor) -> FormalTensor:
        return self + (-other)

    def __rmul__(self, k: int) -> FormalTensor:
        return FormalTensor(self.n, self.ring, tuple((k * c, a, b) for c, a, b in self.terms))

    def __len__(self):
        return len(self.terms)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "ring": self.ring.to_json(),
            "terms": [{"c": c, "left": a.to_json(), "right": b.to_json()} for c, a, b in self.terms],
        }

    @staticmethod
    def from_json(obj: dict) -> FormalTensor:
        ring = RingDescriptor.from_json(obj["ring"])
        n = int(obj["n"])
        terms = []
        for t in obj.get("terms", []):
            sides = []
            for side in ("left", "right"):
                w = dict(t[side])
                w.setdefault("ring", obj["ring"])
                w.setdefault("p", ring.p)
                w.setdefault("n", n)
                sides.append(WittVector.from_json(w))
            terms.append((int(t.get("c", 1)), sides[0], sides[1]))
        return FormalTensor(n, ring, tuple(terms))


@dataclass(frozen=True)
class CovectorTensor:
    ring: RingDescriptor
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((int(c), a, b) for c, a, b in self.terms if c))

    def __add__(self, other: CovectorTensor) -> CovectorTensor:
        return CovectorTensor(self.ring, self.terms + other.terms)

    def __neg__(self) -> CovectorTensor:
        return CovectorTensor(self.ring, tuple((-c, a, b) for c, a, b in self.terms))

    def __sub__(self, other: CovectorTensor) -> CovectorTensor:
        return self + (-other)


# -- evaluation --------------------------------------------------------------


def alpha_eval(x: FormalTensor, policy=DEFAULT_POLICY) -> SymbolValue:
    """sum c * ((left, right))_{p^n}."""
    acc = symbol_zero(x.ring.p, x.n)
    for c, a, b in x.terms:
        acc = acc + c * pairing_n(a, b, policy)
    return acc


def alpha_inf(x: CovectorTensor, policy=DEFAULT_POLICY) -> SymbolValue:
    acc = symbol_zero(x.ring.p, 1)
    for c, a, b in x.terms:
        acc = acc + c * pairing_inf(a, b, policy=policy)
    return acc


def gn_equal(x: FormalTensor, y: FormalTensor, policy=DEFAULT_POLICY) -> bool:
    """Equality in G_n, decided through alpha."""
    return alpha_eval(x - y, policy).is_zero()


# -- building blocks ----------------------------------------------------------


def inverse_for(b: RingElement, a: WittVector) -> RingElement:
    """A Laurent polynomial standing in for b^-1 next to a.

    Monomials are inverted exactly.  Otherwise the series inverse is cut at an
    order where a[b^-1 b] - a has all coordinates in t F_q[[t]]; such vectors
    lie in the image of F - 1, so every symbol sees the exact inverse.
    """
    if b.is_zero():
        raise ZeroDivisionError("b must be nonzero")
    if len(b.support()) == 1:
        return rings.invert(b)
    vmin = min([c.valuation() for c in a.coords if not c.is_zero()] + [0])
    # coordinate i of a*([u]-1) has valuation >= p^i * vmin + v(u - 1)
    needed = 1 - a.p ** (a.n - 1) * vmin
    order = needed - 1 - b.valuation()
    return rings.invert(b, order).element


def dlog_term(a: WittVector, b: RingElement) -> FormalTensor:
    """a dlog [b] = a [b]^-1 (x) [b]."""
    if b.is_zero():
        raise ZeroDivisionError("dlog of zero")
    if a.is_zero():
        return FormalTensor.empty(a.ring, a.n)
    return FormalTensor.single(scale_teich(a, inverse_for(b, a)), teichmuller(b, a.n))


def d_term(a: WittVector) -> FormalTensor:
    """da = 1 (x) a."""
    return FormalTensor.single(WittVector.one(a.ring, a.n), a)


def f_map(x: FormalTensor) -> FormalTensor:
    """V (x) V from level n-1 to level n (extending Verschiebung)."""
    return FormalTensor(x.n + 1, x.ring, tuple((c, V_ext(a), V_ext(b)) for c, a, b in x.terms))


def g_map(x: FormalTensor) -> FormalTensor:
    """Truncation to level 1 in both slots."""
    return FormalTensor(1, x.ring, tuple((c, truncate(a, 1), truncate(b, 1)) for c, a, b in x.terms))


def extend_tensor(x: FormalTensor, m: int) -> FormalTensor:
    """Zero-extension of both slots to level m (a lift along truncation)."""
    return FormalTensor(m, x.ring, tuple((c, extend_by_zero(a, m), extend_by_zero(b, m)) for c, a, b in x.terms))


def teich_rewrite_chain(x: RingElement, k: int, y: RingElement, l: int, n: int) -> list[FormalTensor]:
    """Single-rule rewrites from V^k[x] (x) V^l[y] to [x^(p^l)] (x) [y^(p^k)].

    Each step applies Va (x) b = a (x) Fb (k times) and then
    a (x) Vb = Fa (x) b (l times).
    """
    left, right = x, y
    lk, ll = k, l
    chain = [_vt(left, lk, right, ll, n)]
    while lk:
        lk -= 1
        right = rings.frobenius_power(right, 1)
        chain.append(_vt(left, lk, right, ll, n))
    while ll:
        ll -= 1
        left = rings.frobenius_power(left, 1)
        chain.append(_vt(left, lk, right, ll, n))
    return chain


def _vt(x, k, y, l, n):
    return FormalTensor.single(V_trunc(teichmuller(x, n), k), V_trunc(teichmuller(y, n), l))


def reduce_to_teich(x: FormalTensor) -> FormalTensor:
    """Rewrite every term as a combination of [x] (x) [y]."""
    out = []
    n = x.n
    for c, a, b in x.terms:
        xs = teich_decompose(a)
        ys = teich_decompose(b)
        for k, xk in enumerate(xs):
            if xk.is_zero():
                continue
            for l, yl in enumerate(ys):
                if yl.is_zero():
                    continue
                left = teichmuller(rings.frobenius_power(xk, l), n)
                right = teichmuller(rings.frobenius_power(yl, k), n)
                out.append((c, left, right))
    return FormalTensor(n, x.ring, tuple(out))


def is_teich_form(x: FormalTensor) -> bool:
    return all(
        all(c.is_zero() for c in v.coords[1:]) for _, a, b in x.terms for v in (a, b)
    )


# -- relation generators ------------------------------------------------------


def gen_F_V(a: WittVector, b: WittVector) -> FormalTensor:
    """Fa (x) b - a (x) Vb."""
    return FormalTensor.single(frobenius_W(a), b) - FormalTensor.single(a, V_trunc(b))


def gen_V_F(a: WittVector, b: WittVector) -> FormalTensor:
    """Va (x) b - a (x) Fb."""
    return FormalTensor.single(V_trunc(a), b) - FormalTensor.single(a, frobenius_W(b))


def gen_leibniz(a: WittVector, b: WittVector, c: WittVector) -> FormalTensor:
    """a (x) bc - ab (x) c - ac (x) b."""
    return (
        FormalTensor.single(a, witt_mul(b, c))
        - FormalTensor.single(witt_mul(a, b), c)
        - FormalTensor.single(witt_mul(a, c), b)
    )


def gen_wp_teich(x: RingElement, b: RingElement, n: int) -> FormalTensor:
    """wp([x]) [b]^-1 (x) [b]."""
    return dlog_term(artin_schreier(teichmuller(x, n)), b)


def gen_wp_dlog(a: WittVector, b: RingElement) -> FormalTensor:
    """wp(a) dlog [b]."""
    return dlog_term(artin_schreier(a), b)


def cov_single(a: Covector, b: Covector, c: int = 1) -> CovectorTensor:
    return CovectorTensor(a.ring, ((c, a, b),))


def cov_gen_symmetric(a: Covector, b: Covector) -> CovectorTensor:
    return cov_single(a, b) + cov_single(b, a)


def cov_gen_F_V(a: Covector, b: Covector) -> CovectorTensor:
    return cov_single(cov_F(a), b) - cov_single(a, cov_V(b))


def cov_gen_teich_leibniz(a: RingElement, b: RingElement, c: RingElement, l: int) -> CovectorTensor:
    """[a]_l (x) [bc]_l + [b]_l (x) [ac]_l + [c]_l (x) [ab]_l."""
    return (
        cov_single(teich_at(a, l), teich_at(b * c, l))
        + cov_single(teich_at(b, l), teich_at(a * c, l))
        + cov_single(teich_at(c, l), teich_at(a * b, l))
    )


def cov_gen_square(a: Covector) -> CovectorTensor:
    return cov_single(a, a)


def mn_generators(kind: str, sampler: Sampler, n: int, count: int, max_len: int | None = None):
    """Yield ``count`` relation generators of the given kind.

    Kinds ending in ``_cov`` yield :class:`CovectorTensor` values with windows
    of length at most ``max_len`` (default n); the others yield
    :class:`FormalTensor` values at level n.
    """
    if kind not in RELATION_KINDS:
        raise ValueError(f"unknown relation kind {kind!r}; choose from {RELATION_KINDS}")
    S = sampler
    max_len = n if max_len is None else max_len
    for i in range(count):
        if kind == "M_n'":
            yield gen_F_V(S.witt(n), S.witt(n))
        elif kind == "M_n":
            if i % 2 == 0:
                yield gen_F_V(S.witt(n), S.witt(n))
            else:
                yield gen_wp_teich(S.element(), S.nonzero(), n)
        elif kind == "N_n'":
            if i % 2 == 0:
                yield gen_leibniz(S.witt(n), S.witt(n), S.witt(n))
            else:
                yield gen_F_V(S.witt(n), S.witt(n))
        elif kind == "N_n":
            r = i % 3
            if r == 0:
                yield gen_leibniz(S.witt(n), S.witt(n), S.witt(n))
            elif r == 1:
                yield gen_F_V(S.witt(n), S.witt(n))
            else:
                yield gen_wp_teich(S.element(), S.nonzero(), n)
        elif kind == "N_cov":
            r = i % 3
            if r == 0:
                yield cov_gen_symmetric(S.covector(max_len), S.covector(max_len))
            elif r == 1:
                yield cov_gen_F_V(S.covector(max_len), S.covector(max_len))
            else:
                l = -S.randint(0, max_len - 1)
                yield cov_gen_teich_leibniz(S.element(), S.element(), S.element(), l)
        else:  # Nprime_cov: the wedge relations plus a (x) a
            r = i % 3
            if r == 0:
                yield cov_gen_square(S.covector(max_len))
            elif r == 1:
                yield cov_gen_F_V(S.covector(max_len), S.covector(max_len))
            else:
                l = -S.randint(0, max_len - 1)
                yield cov_gen_teich_leibniz(S.element(), S.element(), S.element(), l)


def cov_relation_check(kind: str, sampler: Sampler, samples: int, max_len: int, policy=DEFAULT_POLICY) -> dict:
    """Evaluate sampled covector generators; every one must map to 0."""
    if kind not in ("N_cov", "Nprime_cov"):
        raise ValueError("cov_relation_check takes N_cov or Nprime_cov")
    failures = []
    for i, g in enumerate(mn_generators(kind, sampler, max_len, samples, max_len)):
        v = alpha_inf(g, policy)
        if not v.is_zero():
            failures.append({"index": i, "value": repr(v), "terms": _cov_terms_json(g)})
    return {"kind": kind, "samples": samples, "failures": failures}


def _cov_terms_json(g: CovectorTensor):
    return [{"c": c, "left": a.to_json(), "right": b.to_json()} for c, a, b in g.terms]


def psi_tensor(x: FormalTensor) -> CovectorTensor:
    return CovectorTensor(x.ring, tuple((c, psi(a), psi(b)) for c, a, b in x.terms))
