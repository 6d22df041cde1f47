"""The Artin-Schreier-Witt symbol over K = F_q((t)) and the pairings built from it.

Symbol values live in W_n(F_p) = Z/p^n, represented by :class:`SymbolValue`.
Values of different levels are compared as elements of Q/Z through
``value / p^n``, which is how the Brauer group p-torsion nests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import rings
from .config import check_budget
from .covectors import Covector
from .polys import IntegralityError
from .rings import RingDescriptor, RingElement
from .witt import (
    V_ext,
    WittError,
    WittVector,
    artin_schreier,
    frobenius_W,
    from_ghost,
    scale_teich,
    teichmuller,
    witt_add,
    witt_reduce_mod_p,
    witt_sub,
    witt_to_int,
)


class SymbolError(ValueError):
    """Bad symbol input (b = 0, wrong ring)."""


class RouteDisagreement(AssertionError):
    """Two independent evaluations of the same pairing differ."""


@dataclass(frozen=True)
class SymbolValue:
    """An element of Z/p^n, read as value/p^n in Q/Z for comparisons."""

    p: int
    n: int
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p**self.n)

    @property
    def modulus(self) -> int:
        return self.p**self.n

    def fraction(self) -> Fraction:
        return Fraction(self.value, self.modulus)

    def order(self) -> int:
        return self.fraction().denominator

    def is_zero(self) -> bool:
        return self.value == 0

    def at_level(self, k: int) -> SymbolValue:
        """The same element of Q/Z written at level k; needs p^k-torsion."""
        fr = self.fraction() * self.p**k
        if fr.denominator != 1:
            raise ValueError(f"{self} is not {self.p}^{k}-torsion")
        return SymbolValue(self.p, k, int(fr))

    def _lift(self, other):
        if isinstance(other, int):
            return SymbolValue(self.p, self.n, other)
        if isinstance(other, SymbolValue) and other.p == self.p:
            return other
        return None

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.modulus
        if not isinstance(other, SymbolValue):
            return NotImplemented
        return self.p == other.p and self.fraction() == other.fraction()

    def __hash__(self):
        return hash((self.p, self.fraction()))

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(self.n, o.n)
        total = (self.fraction() + o.fraction()) * self.p**n
        return SymbolValue(self.p, n, int(total))

    __radd__ = __add__

    def __neg__(self):
        return SymbolValue(self.p, self.n, -self.value)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return SymbolValue(self.p, self.n, self.value * k)

    __rmul__ = __mul__

    def __repr__(self):
        return f"{self.value} mod {self.modulus}"

    def to_json(self) -> dict:
        return {"value": self.value, "modulus": self.modulus}


def symbol_zero(p: int, n: int) -> SymbolValue:
    return SymbolValue(p, n, 0)


def symbol_sum(values, p: int, n: int) -> SymbolValue:
    acc = symbol_zero(p, n)
    for v in values:
        acc = acc + v
    return acc


@dataclass(frozen=True)
class PrecisionPolicy:
    """Lift precision N = n + slack; slack doubles on an integrality failure."""

    initial_slack: int | None = None
    max_doublings: int = 3

    def slacks(self, n: int):
        s = self.initial_slack if self.initial_slack is not None else n
        if s < n - 1:
            raise ValueError(f"initial slack {s} is below n-1={n - 1}")
        for _ in range(self.max_doublings + 1):
            yield s
            s = max(2 * s, 1)


DEFAULT_POLICY = PrecisionPolicy()


# -- the ghost-residue evaluation ---------------------------------------------


def _polar_ghost(ops, coords, p: int, i: int):
    """w_i of the lifted coordinates, keeping only exponents <= 0."""
    acc = ops.zero
    for j in range(i + 1):
        x = coords[j]
        if ops.is_zero(x):
            continue
        e = p ** (i - j)
        val = x[0]
        if val * e > 0:
            continue
        powered = ops.shift(_unit_pow(ops, x, e), val * e)
        if j:
            pv, parr = powered
            powered = ops.normalize(pv, parr * (p**j % ops.mod))
        acc = ops.add(acc, powered)
    return acc


def _unit_pow(ops, x, e):
    """(x / t^val)**e modulo t^(1 - val*e)."""
    val, arr = x
    top = -val * e
    u = ops.truncate((0, arr), top)
    result = ops.one
    base = u
    while e:
        if e & 1:
            result = ops.truncate(ops.mul(result, base), top)
        e >>= 1
        if e:
            base = ops.truncate(ops.mul(base, base), top)
    return result


def _dense(x, lo: int, hi: int, f: int, dtype):
    """Coefficient rows for exponents lo..hi (inclusive), zero padded."""
    out = np.zeros((hi - lo + 1, f), dtype=dtype)
    val, arr = x
    if len(arr) == 0 or hi < lo:
        return out
    a = max(lo, val)
    b = min(hi, val + len(arr) - 1)
    if a <= b:
        out[a - lo : b - lo + 1] = arr[a - val : b - val + 1]
    return out


def _residue_pair(ops, w, d):
    """Res(w * d) where w has exponents <= 0 and d is a series starting at t^-1."""
    lift = ops.base
    if ops.is_zero(w):
        return lift.zero
    wv, W = w
    hi = wv + len(W) - 1
    # coefficient of t^k in w pairs with t^(-1-k) in d
    D = _dense(d, -1 - hi, -1 - wv, ops.f, ops.dtype)[::-1]
    m = ops.mod
    if ops.dtype is object or (m - 1) ** 2 * len(W) >= rings._INT64_SAFE:
        Wo, Do = W.astype(object), D.astype(object)
    else:
        Wo, Do = W, D
    S = (Wo.T @ Do) % m
    if ops.f == 1:
        return (int(S[0, 0]),)
    acc = lift.zero
    for u in range(ops.f):
        for v in range(ops.f):
            c = int(S[u, v])
            if c:
                acc = lift.add(acc, lift.mul(_basis(lift, u + v), lift.coerce(c)))
    return acc


def _basis(lift, k):
    """x^k in the lift ring."""
    x = lift.coerce([0, 1] + [0] * (lift.f - 2)) if lift.f > 1 else lift.one
    return lift.pow(x, k)


def _ghost_residue(a: WittVector, b: RingElement, n: int, N: int) -> WittVector:
    """rho in W_n(F_q) before the trace, at lift precision N."""
    K = a.ring
    LL = K.lift(N)
    ops = LL.ops
    A = [rings.teichmuller_lift_laurent(c, N).payload for c in a.coords[:n]]
    B = rings.teichmuller_lift_laurent(b, N)
    ghosts = [_polar_ghost(ops, A, a.p, i) for i in range(n)]
    order = max([-g[0] - 1 for g in ghosts if not ops.is_zero(g)] + [0])
    dl = rings.dlog_series(B, order).element.payload
    res = [RingElement(LL.base(), _residue_pair(ops, g, dl), LL.base().ops) for g in ghosts]
    rho = from_ghost(tuple(res), LL.base(), a.p)
    return witt_reduce_mod_p(rho)


def trace_to_prime_W(x: WittVector) -> WittVector:
    """sum_{i<f} F^i x, landing in W_n(F_p)."""
    K = x.ring
    if K.kind == "prime-field":
        return x
    acc = x
    cur = x
    for _ in range(K.f - 1):
        cur = frobenius_W(cur)
        acc = witt_add(acc, cur)
    Fp = rings.prime_field(K.p)
    coords = []
    for c in acc.coords:
        if c.payload >= K.p:
            raise ArithmeticError("trace left W_n(F_p)")
        coords.append(Fp(c.payload))
    return WittVector(x.p, x.n, Fp, tuple(coords))


def _check_inputs(a: WittVector, b: RingElement):
    K = a.ring
    if K.kind != "laurent-poly":
        raise SymbolError(f"symbols are evaluated over F_q((t)), got {K}")
    if not isinstance(b, RingElement) or b.ring != K:
        raise SymbolError("b must be a Laurent polynomial over the same field")
    if b.is_zero():
        raise SymbolError("b must be nonzero")


def asw_symbol(
    a: WittVector,
    b: RingElement,
    n: int | None = None,
    policy: PrecisionPolicy = DEFAULT_POLICY,
    provenance: dict | None = None,
) -> SymbolValue:
    """[a, b)_{p^n} by the ghost-residue algorithm."""
    n = a.n if n is None else n
    if n != a.n:
        raise SymbolError(f"a has length {a.n}, level {n} requested")
    _check_inputs(a, b)
    K = a.ring
    check_budget(K.p, n, K.f)
    if a.is_zero():
        return symbol_zero(K.p, n)
    last = None
    tried = []
    for slack in policy.slacks(n):
        N = n + slack
        tried.append(N)
        try:
            rho = _ghost_residue(a, b, n, N)
        except IntegralityError as exc:
            last = exc
            continue
        value = witt_to_int(trace_to_prime_W(rho))
        if provenance is not None:
            provenance.update(
                {"method": "ghost-residue", "lift_precision": N, "slack": slack, "attempts": tried}
            )
        return SymbolValue(K.p, n, value)
    raise IntegralityError(last.index if last else -1, f"ghost solve not integral at precisions {tried}")


def classical_residue_symbol(a0: RingElement, b: RingElement) -> SymbolValue:
    """Tr Res(a0 * db/b), computed entirely in characteristic p."""
    K = a0.ring
    if b.is_zero():
        raise SymbolError("b must be nonzero")
    if a0.is_zero():
        return symbol_zero(K.p, 1)
    order = max(-a0.valuation() - 1, 0)
    d = rings.dlog_series(b, order)
    r = d.mul_poly(a0).coefficient(-1)
    return SymbolValue(K.p, 1, rings.trace_to_prime(r).payload)


def asw_symbol_shift_check(a: WittVector, b: RingElement, policy: PrecisionPolicy = DEFAULT_POLICY):
    """([a,b)_{p^n}, [Va,b)_{p^{n+1}}), after checking the truncation law.

    The truncation law p^{n-k}[a,b)_{p^n} = [(a_0..a_{k-1}),b)_{p^k} is
    checked for every 1 <= k < n; a violation raises AssertionError.
    """
    base = asw_symbol(a, b, policy=policy)
    shifted = asw_symbol(V_ext(a), b, policy=policy)
    for k in range(1, a.n):
        short = asw_symbol(WittVector(a.p, k, a.ring, a.coords[:k]), b, policy=policy)
        if base * a.p ** (a.n - k) != short:
            raise AssertionError(f"truncation law fails at level {k}: {base} vs {short}")
    return base, shifted


# -- pairings ---------------------------------------------------------------


def pairing_n(a: WittVector, b: WittVector, policy: PrecisionPolicy = DEFAULT_POLICY) -> SymbolValue:
    """((a, b))_{p^n} = sum_j [F^j a [b_j], b_j)_{p^n}, skipping b_j = 0."""
    if (a.n, a.ring) != (b.n, b.ring):
        raise WittError("pairing_n needs two vectors of the same length and ring")
    n = a.n
    acc = symbol_zero(a.p, n)
    for j, bj in enumerate(b.coords):
        if bj.is_zero():
            continue
        acc = acc + asw_symbol(scale_teich(frobenius_W(a, j), bj), bj, policy=policy)
    return acc


def pairing_mn_lift(a: WittVector, b: WittVector, l: int | None = None, policy=DEFAULT_POLICY) -> SymbolValue:
    """((V^{l-m} a, V^{l-n} b))_{p^l}."""
    m, n = a.n, b.n
    l = max(m, n) if l is None else l
    if l < max(m, n):
        raise WittError("common level must be >= m, n")
    return pairing_n(V_ext(a, l - m), V_ext(b, l - n), policy)


def pairing_mn_direct(a: WittVector, b: WittVector, policy=DEFAULT_POLICY) -> SymbolValue:
    """sum_j [F^{m+j} a * F^n [b_j], b_j)_{p^m}.

    The common factor F^k, k = min(m+j, n), is dropped from the left slot;
    the symbol is F-invariant, and this keeps exponents small.
    """
    m, n = a.n, b.n
    acc = symbol_zero(a.p, m)
    for j, bj in enumerate(b.coords):
        if bj.is_zero():
            continue
        k = min(m + j, n)
        left = scale_teich(frobenius_W(a, m + j - k), rings.frobenius_power(bj, n - k))
        acc = acc + asw_symbol(left, bj, policy=policy)
    return acc


def pairing_mn(a: WittVector, b: WittVector, policy: PrecisionPolicy = DEFAULT_POLICY, provenance=None) -> SymbolValue:
    """((a, b))_{p^m,p^n} at level min(m, n), computed by two routes that must agree."""
    if a.ring != b.ring:
        raise WittError("pairing_mn needs a common ring")
    check_budget(a.p, max(a.n, b.n), a.ring.f)
    lifted = pairing_mn_lift(a, b, policy=policy)
    direct = pairing_mn_direct(a, b, policy=policy)
    if lifted != direct:
        raise RouteDisagreement(f"common-level route gives {lifted}, direct sum gives {direct}")
    k = min(a.n, b.n)
    try:
        out = lifted.at_level(k)
    except ValueError as exc:
        raise RouteDisagreement(f"{lifted} is not {a.p}^{k}-torsion") from exc
    if provenance is not None:
        provenance.update({"routes": ["common-level", "direct-sum"], "level": k})
    return out


def pairing_inf(x: Covector, y: Covector, pad: int = 0, policy=DEFAULT_POLICY) -> SymbolValue:
    """((x, y))_{p^inf} via the minimal windows (optionally padded by ``pad``)."""
    if x.ring != y.ring:
        raise WittError("covectors over different rings")
    if x.is_zero() or y.is_zero():
        return symbol_zero(x.p, 1)
    return pairing_mn(x.lift(x.length + pad), y.lift(y.length + pad), policy)


def asw_symbol_inf(x: Covector, b: RingElement, pad: int = 0, policy=DEFAULT_POLICY) -> SymbolValue:
    if x.is_zero():
        return symbol_zero(x.p, 1)
    return asw_symbol(x.lift(x.length + pad), b, policy=policy)


# -- Artin-Schreier solving over F_q ------------------------------------------


def wp_solve(target: WittVector) -> WittVector | None:
    """x with F(x) - x = target over a finite field, or None when none exists."""
    K = target.ring
    if K.kind not in ("prime-field", "finite-field"):
        raise WittError("wp_solve works over finite fields")
    n = target.n
    if n == 0:
        return target
    c = target.coords[0]
    root = None
    for x in K.elements():
        if rings.frobenius_power(x, 1) - x == c:
            root = x
            break
    if root is None:
        return None
    head = teichmuller(root, n)
    rest = witt_sub(target, artin_schreier(head))
    if not rest.coords[0].is_zero():
        raise ArithmeticError("level-0 peel-off failed")
    if n == 1:
        return head
    tail = wp_solve(WittVector(K.p, n - 1, K, rest.coords[1:]))
    if tail is None:
        return None
    return witt_add(head, V_ext(tail))
