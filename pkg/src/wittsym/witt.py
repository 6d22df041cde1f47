"""Truncated p-typical Witt vectors W_n(R) over the rings of :mod:`wittsym.rings`."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import rings
from .polys import IntegralityError, Poly, reduce_poly, universal_polys
from .rings import RingDescriptor, RingElement


class WittError(ValueError):
    """Shape mismatch or an operation outside a map's domain."""


class PrecisionError(ArithmeticError):
    """A lift ring does not carry enough p-adic digits for the requested solve."""


@dataclass(frozen=True, eq=False)
class WittVector:
    p: int
    n: int
    ring: RingDescriptor
    coords: tuple

    def __post_init__(self):
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if self.n < 0 or len(coords) != self.n:
            raise WittError(f"expected {self.n} coordinates, got {len(coords)}")
        if self.ring.p != self.p:
            raise WittError(f"ring characteristic prime {self.ring.p} differs from p={self.p}")
        for c in coords:
            if not isinstance(c, RingElement) or c.ring != self.ring:
                raise WittError(f"coordinate {c!r} is not in {self.ring}")

    @classmethod
    def of(cls, ring: RingDescriptor, values) -> WittVector:
        return cls(ring.p, len(values), ring, tuple(ring(v) for v in values))

    @classmethod
    def zero(cls, ring: RingDescriptor, n: int) -> WittVector:
        z = ring.zero()
        return cls(ring.p, n, ring, (z,) * n)

    @classmethod
    def one(cls, ring: RingDescriptor, n: int) -> WittVector:
        return teichmuller(ring.one(), n)

    def __getitem__(self, i):
        return self.coords[i]

    def __len__(self):
        return self.n

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, WittVector):
            return NotImplemented
        return (self.p, self.n, self.ring, self.coords) == (other.p, other.n, other.ring, other.coords)

    def __hash__(self):
        return hash((self.p, self.n, self.ring, self.coords))

    def __add__(self, other):
        return witt_add(self, other)

    def __sub__(self, other):
        return witt_add(self, witt_neg(other))

    def __neg__(self):
        return witt_neg(self)

    def __mul__(self, other):
        if isinstance(other, int):
            return scalar_mul(other, self)
        return witt_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return scalar_mul(other, self)
        return NotImplemented

    def __repr__(self):
        return "(" + ", ".join(repr(c) for c in self.coords) + ")"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "ring": self.ring.to_json(),
            "coords": [c.to_json()["coeffs"] for c in self.coords],
        }

    @staticmethod
    def from_json(obj: dict) -> WittVector:
        ring = RingDescriptor.from_json(obj["ring"])
        coords = []
        for c in obj["coords"]:
            if isinstance(c, dict) and "coeffs" in c:
                coords.append(RingElement.from_json(c))
                continue
            if isinstance(c, dict):
                coords.append(RingElement.from_json({"ring": ring.to_json(), "coeffs": c}))
            else:
                coords.append(ring(c))
        n = int(obj.get("n", len(coords)))
        p = int(obj.get("p", ring.p))
        return WittVector(p, n, ring, tuple(coords))


@dataclass(frozen=True)
class GhostVector:
    ring: RingDescriptor
    entries: tuple

    def __getitem__(self, i):
        return self.entries[i]

    def __len__(self):
        return len(self.entries)


# -- polynomial evaluation -------------------------------------------------


def _coeff_modulus(ring: RingDescriptor) -> int | None:
    if ring.char_p:
        return ring.p
    if ring.is_lift:
        return ring.p**ring.N
    return None


@lru_cache(maxsize=None)
def _compiled(p: int, n: int, which: str, modulus: int | None):
    """Polynomials of one kind as (coefficient, ((var, exp), ...)) lists."""
    ups = universal_polys(p, n)
    out = []
    for poly in getattr(ups, which):
        red = reduce_poly(poly, modulus)
        terms = []
        for mono, c in sorted(red.items()):
            terms.append((c, tuple((v, e) for v, e in enumerate(mono) if e)))
        out.append(tuple(terms))
    return tuple(out)


def _evaluate(compiled, values: list[RingElement], ring: RingDescriptor, count: int):
    powers: dict = {}
    zero = ring.zero()

    def power(v, e):
        key = (v, e)
        if key not in powers:
            x = values[v]
            powers[key] = x if e == 1 else x**e
        return powers[key]

    result = []
    for poly in compiled[:count]:
        acc = zero
        for c, factors in poly:
            if any(values[v].is_zero() for v, _ in factors):
                continue
            term = None
            for v, e in factors:
                x = power(v, e)
                term = x if term is None else term * x
            if term is None:
                term = ring.one()
            acc = acc + (term if c == 1 else term * c)
        result.append(acc)
    return tuple(result)


def _check_pair(a: WittVector, b: WittVector):
    if not isinstance(b, WittVector):
        raise WittError(f"expected a Witt vector, got {type(b).__name__}")
    if (a.p, a.n, a.ring) != (b.p, b.n, b.ring):
        raise WittError(f"shape mismatch: W_{a.n}({a.ring}) vs W_{b.n}({b.ring})")
    if a.n == 0:
        raise WittError("W_0 carries no arithmetic")


def witt_add(a: WittVector, b: WittVector) -> WittVector:
    _check_pair(a, b)
    if b.is_zero():
        return a
    if a.is_zero():
        return b
    comp = _compiled(a.p, a.n, "S", _coeff_modulus(a.ring))
    return WittVector(a.p, a.n, a.ring, _evaluate(comp, list(a.coords) + list(b.coords), a.ring, a.n))


def witt_mul(a: WittVector, b: WittVector) -> WittVector:
    _check_pair(a, b)
    comp = _compiled(a.p, a.n, "P", _coeff_modulus(a.ring))
    return WittVector(a.p, a.n, a.ring, _evaluate(comp, list(a.coords) + list(b.coords), a.ring, a.n))


def witt_neg(a: WittVector) -> WittVector:
    if a.n == 0:
        raise WittError("W_0 carries no arithmetic")
    comp = _compiled(a.p, a.n, "Neg", _coeff_modulus(a.ring))
    return WittVector(a.p, a.n, a.ring, _evaluate(comp, list(a.coords), a.ring, a.n))


def witt_sub(a: WittVector, b: WittVector) -> WittVector:
    return witt_add(a, witt_neg(b))


def scalar_mul(m: int, a: WittVector) -> WittVector:
    """m * a by double-and-add with the addition polynomials."""
    if m < 0:
        return scalar_mul(-m, witt_neg(a))
    acc = WittVector.zero(a.ring, a.n)
    base = a
    while m:
        if m & 1:
            acc = witt_add(acc, base)
        m >>= 1
        if m:
            base = witt_add(base, base)
    return acc


def witt_sum(vectors, ring: RingDescriptor, n: int) -> WittVector:
    acc = WittVector.zero(ring, n)
    for v in vectors:
        acc = witt_add(acc, v)
    return acc


# -- ghost map ---------------------------------------------------------------


def ghost_components(coords, p: int) -> tuple:
    """w_i = sum_{j<=i} p^j x_j^(p^(i-j)) for any ring (no faithfulness claim)."""
    out = []
    for i in range(len(coords)):
        acc = None
        for j in range(i + 1):
            x = coords[j]
            term = (x ** (p ** (i - j))) * (p**j) if not x.is_zero() else x
            acc = term if acc is None else acc + term
        out.append(acc)
    return tuple(out)


def ghost(a: WittVector) -> GhostVector:
    if a.ring.char_p:
        raise WittError("the ghost map is not faithful in characteristic p")
    return GhostVector(a.ring, ghost_components(a.coords, a.p))


def from_ghost(g: GhostVector | tuple | list, ring: RingDescriptor | None = None, p: int | None = None) -> WittVector:
    """Solve w(a) = g coordinate by coordinate.

    Over a lift ring at precision N the i-th step divides by p^i, so the
    output is returned at precision N - (n - 1) and N >= 2n - 1 is required.
    """
    entries = tuple(g.entries if isinstance(g, GhostVector) else g)
    if ring is None:
        ring = g.ring if isinstance(g, GhostVector) else entries[0].ring
    p = ring.p if p is None else p
    n = len(entries)
    if ring.char_p:
        raise WittError("from_ghost needs a torsion-free or lift ring")
    if ring.is_lift and ring.N < 2 * n - 1:
        raise PrecisionError(f"precision N={ring.N} is below 2n-1={2 * n - 1} for n={n}")
    coords: list[RingElement] = []
    for i in range(n):
        rest = ring(entries[i]) if not isinstance(entries[i], RingElement) else entries[i]
        for j, x in enumerate(coords):
            if not x.is_zero():
                rest = rest - (x ** (p ** (i - j))) * (p**j)
        q = rings.divide_by_p_power(rest, i)
        if q is None:
            raise IntegralityError(i)
        coords.append(q)
    if ring.is_lift:
        out_ring = ring.lift(ring.N - (n - 1))
        coords = [change_precision(c, out_ring) for c in coords]
        ring = out_ring
    return WittVector(p, n, ring, tuple(coords))


def change_precision(x: RingElement, target: RingDescriptor) -> RingElement:
    """Reduce a lift-kind element to a lower precision of the same shape."""
    if x.ring == target:
        return x
    if not (x.ring.is_lift and target.is_lift and target.N <= x.ring.N):
        raise WittError(f"cannot move {x.ring} to {target}")
    m = target.p**target.N
    if x.ring.is_laurent:
        ops = target.ops
        val, arr = x.payload
        if len(arr) == 0:
            return target.zero()
        return RingElement(target, ops.normalize(val, (arr % m).astype(ops.dtype)), ops)
    return target(list(x.payload))


def witt_reduce_mod_p(a: WittVector) -> WittVector:
    ring = a.ring.reduction()
    return WittVector(a.p, a.n, ring, tuple(rings.reduce_mod_p(c) for c in a.coords))


# -- operators ---------------------------------------------------------------


def frobenius_W(a: WittVector, k: int = 1) -> WittVector:
    """F^k.  Outside characteristic p the Frobenius polynomials are used with X_n = 0."""
    if k == 0 or a.n == 0:
        return a
    if a.ring.char_p:
        return WittVector(a.p, a.n, a.ring, tuple(rings.frobenius_power(c, k) for c in a.coords))
    comp = _compiled(a.p, a.n, "Fr", _coeff_modulus(a.ring))
    for _ in range(k):
        vals = list(a.coords) + [a.ring.zero()]
        a = WittVector(a.p, a.n, a.ring, _evaluate(comp, vals, a.ring, a.n))
    return a


def verschiebung(a: WittVector, m: int | None = None) -> WittVector:
    """V to W_{n+1} (m = n+1) or the truncated V on W_n (m = n)."""
    if m is None:
        raise WittError("pick the target length explicitly: n+1 (extending) or n (truncated)")
    z = a.ring.zero()
    if m == a.n + 1:
        return WittVector(a.p, m, a.ring, (z,) + a.coords)
    if m == a.n:
        return WittVector(a.p, m, a.ring, ((z,) + a.coords)[:m]) if m else a
    raise WittError(f"V maps W_{a.n} to W_{a.n} or W_{a.n + 1}, not W_{m}")


def V_ext(a: WittVector, k: int = 1) -> WittVector:
    for _ in range(k):
        a = verschiebung(a, a.n + 1)
    return a


def V_trunc(a: WittVector, k: int = 1) -> WittVector:
    for _ in range(k):
        a = verschiebung(a, a.n)
    return a


def teichmuller(c: RingElement, n: int) -> WittVector:
    z = c.ring.zero()
    return WittVector(c.ring.p, n, c.ring, (c,) + (z,) * (n - 1))


def scale_teich(a: WittVector, b: RingElement) -> WittVector:
    """a[b] = (a_0 b, a_1 b^p, a_2 b^(p^2), ...)."""
    if b.ring != a.ring:
        raise WittError(f"{b.ring} vs {a.ring}")
    out = []
    bp = b
    for i, x in enumerate(a.coords):
        if i:
            bp = rings.frobenius_power(bp, 1) if a.ring.char_p else bp**a.p
        out.append(x * bp)
    return WittVector(a.p, a.n, a.ring, tuple(out))


def artin_schreier(a: WittVector) -> WittVector:
    if not a.ring.char_p:
        raise WittError("the Artin-Schreier map is defined in characteristic p")
    return witt_sub(frobenius_W(a), a)


def truncate(a: WittVector, m: int) -> WittVector:
    if not 0 <= m <= a.n:
        raise WittError(f"truncation length {m} outside [0, {a.n}]")
    return WittVector(a.p, m, a.ring, a.coords[:m])


def extend_by_zero(a: WittVector, m: int) -> WittVector:
    """(a_0, ..., a_{n-1}, 0, ..., 0) in W_m.  Not a ring map; used to pick lifts."""
    if m < a.n:
        raise WittError("extension must not shorten")
    z = a.ring.zero()
    return WittVector(a.p, m, a.ring, a.coords + (z,) * (m - a.n))


def teich_decompose(a: WittVector) -> tuple:
    """x_0..x_{n-1} with a = sum V^i [x_i], by repeated peel-off of [x_0]."""
    xs = []
    cur = a
    for i in range(a.n):
        x = cur.coords[0]
        xs.append(x)
        if i == a.n - 1:
            break
        rest = witt_sub(cur, teichmuller(x, cur.n))
        if not rest.coords[0].is_zero():
            raise ArithmeticError("peel-off left a nonzero first coordinate")
        cur = WittVector(a.p, cur.n - 1, a.ring, rest.coords[1:])
    return tuple(xs)


def teich_compose(xs, n: int | None = None) -> WittVector:
    """sum V^i [x_i] in W_n, computed with the addition polynomials."""
    xs = tuple(xs)
    n = len(xs) if n is None else n
    ring = xs[0].ring
    acc = WittVector.zero(ring, n)
    for i, x in enumerate(xs[:n]):
        acc = witt_add(acc, V_trunc(teichmuller(x, n), i))
    return acc


# -- W_n(F_p) and Z/p^n ------------------------------------------------------


def witt_to_int(a: WittVector) -> int:
    """W_n(F_p) -> Z/p^n via sum p^i tau(a_i), tau the Teichmueller lift."""
    if a.ring.kind != "prime-field":
        raise WittError("integer conversion needs prime-field coordinates")
    n, p = a.n, a.p
    L = rings.lift_ring(p, 1, n)
    table = rings.teichmuller_table(L)
    return sum(p**i * table[c.payload][0] for i, c in enumerate(a.coords)) % p**n


def int_to_witt(m: int, p: int, n: int) -> WittVector:
    """m * 1 in W_n(F_p), via the ghost vector (m, ..., m) over Z."""
    m %= p**n
    a = from_ghost(tuple(rings.integers(p)(m) for _ in range(n)), rings.integers(p), p)
    F = rings.prime_field(p)
    return WittVector(p, n, F, tuple(F(c.payload) for c in a.coords))
