"""Exact coefficient rings that sit under the Witt functor.

Seven kinds of ring are supported, all described by a hashable
:class:`RingDescriptor`:

* ``prime-field`` and ``finite-field``: F_q = F_p[x]/(M) with M monic
  irreducible of degree f.  Elements are stored as an integer index
  ``sum(c_k * p**k)`` of their coefficient vector; arithmetic goes through
  precomputed tables.
* ``laurent-poly``: Laurent polynomials over F_q in the variable t.
* ``lift-ring``: Z/p^N[x]/(M~) for an integer lift M~ of M, i.e. the Witt
  vectors of F_q of length N.  Elements are tuples of f residues.
* ``lift-laurent``: Laurent polynomials over a lift ring.
* ``integers`` and ``rationals``: torsion-free rings for ghost computations.

Laurent payloads are a pair ``(val, coeffs)`` with ``coeffs`` a read-only
integer array of shape ``(L, f)``; row ``i`` holds the coefficient of
``t**(val + i)`` in the power basis of the coefficient ring.  The first and
last rows are always nonzero, so equality is structural.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

KINDS = (
    "prime-field",
    "finite-field",
    "laurent-poly",
    "lift-ring",
    "lift-laurent",
    "integers",
    "rationals",
)
CHAR_P_KINDS = frozenset({"prime-field", "finite-field", "laurent-poly"})
LIFT_KINDS = frozenset({"lift-ring", "lift-laurent"})
LAURENT_KINDS = frozenset({"laurent-poly", "lift-laurent"})
TORSION_FREE_KINDS = frozenset({"integers", "rationals"})

# int64 convolutions stay exact while mod**2 * length stays below this
_INT64_SAFE = 2**62


class RingError(ValueError):
    """Invalid ring construction or an operation the ring does not support."""


class RingMismatchError(RingError):
    """Operands live in different rings."""


class NotAUnitError(ZeroDivisionError):
    """Inversion of a non-unit."""


class ExpansionOrderError(RingError):
    """A series coefficient was requested beyond its known expansion order."""


class LiftError(ArithmeticError):
    """Teichmueller iteration did not stabilise."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_rem(num: list[int], den: tuple[int, ...], p: int) -> list[int]:
    """Remainder of num by the monic polynomial den over F_p (low to high)."""
    num = [c % p for c in num]
    d = len(den) - 1
    for k in range(len(num) - 1, d - 1, -1):
        c = num[k]
        if c:
            for i in range(d + 1):
                num[k - d + i] = (num[k - d + i] - c * den[i]) % p
    return num[:d] if d > 0 else []


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Brute-force irreducibility over F_p: no monic factor of degree <= f/2."""
    f = len(modulus) - 1
    for d in range(1, f // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not any(_poly_rem(list(modulus), tail + (1,), p)):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, f: int) -> tuple[int, ...]:
    """The lexicographically first monic irreducible polynomial of degree f."""
    if f == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=f):
        m = tuple(reversed(tail)) + (1,)
        if m[0] and is_irreducible(m, p):
            return m
    raise RingError(f"no irreducible polynomial of degree {f} over F_{p}")


@dataclass(frozen=True)
class RingDescriptor:
    """Identifies one exact ring.  Instances are immutable and hashable."""

    kind: str
    p: int
    f: int = 1
    modulus: tuple[int, ...] = (0, 1)
    N: int | None = None
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))
        if self.kind not in KINDS:
            raise RingError(f"unknown ring kind {self.kind!r}")
        if not is_prime(self.p):
            raise RingError(f"p={self.p} is not prime")
        if self.f < 1:
            raise RingError("extension degree f must be >= 1")
        if self.kind in ("prime-field", "integers", "rationals") and self.f != 1:
            raise RingError(f"{self.kind} requires f=1")
        if len(self.modulus) != self.f + 1 or self.modulus[-1] != 1:
            raise RingError(f"modulus must be monic of degree {self.f}")
        if self.kind in LIFT_KINDS:
            if self.N is None or self.N < 1:
                raise RingError("lift kinds need a precision N >= 1")
            if any(c < 0 or c >= self.p**self.N for c in self.modulus):
                raise RingError("lift modulus coefficients must lie in [0, p^N)")
        elif self.N is not None:
            raise RingError(f"{self.kind} takes no precision N")
        reduced = tuple(c % self.p for c in self.modulus)
        if self.kind not in LIFT_KINDS and reduced != self.modulus:
            raise RingError("modulus coefficients must lie in [0, p)")
        if self.f > 1 and not _irreducible_cached(reduced, self.p):
            raise RingError(f"modulus {reduced} is reducible over F_{self.p}")
        object.__setattr__(
            self, "_hash", hash((self.kind, self.p, self.f, self.modulus, self.N))
        )

    def __hash__(self):
        return self._hash

    # -- structure ---------------------------------------------------------

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def char_p(self) -> bool:
        return self.kind in CHAR_P_KINDS

    @property
    def is_laurent(self) -> bool:
        return self.kind in LAURENT_KINDS

    @property
    def is_lift(self) -> bool:
        return self.kind in LIFT_KINDS

    @property
    def torsion_free(self) -> bool:
        return self.kind in TORSION_FREE_KINDS

    @property
    def characteristic(self) -> int:
        if self.char_p:
            return self.p
        if self.is_lift:
            return self.p**self.N
        return 0

    def base(self) -> RingDescriptor:
        """Coefficient ring of a Laurent ring; the ring itself otherwise."""
        if self.kind == "laurent-poly":
            return self.residue_field()
        if self.kind == "lift-laurent":
            return RingDescriptor("lift-ring", self.p, self.f, self.modulus, self.N)
        return self

    def residue_field(self) -> RingDescriptor:
        if self.kind in ("integers", "rationals"):
            return RingDescriptor("prime-field", self.p)
        reduced = tuple(c % self.p for c in self.modulus)
        kind = "prime-field" if self.f == 1 else "finite-field"
        return RingDescriptor(kind, self.p, self.f, reduced)

    def reduction(self) -> RingDescriptor:
        """Characteristic-p counterpart of a lift kind."""
        if self.kind == "lift-laurent":
            return laurent(self.p, self.f, tuple(c % self.p for c in self.modulus))
        if self.kind == "lift-ring":
            return self.residue_field()
        if self.char_p:
            return self
        raise RingError(f"{self.kind} has no reduction mod p")

    def lift(self, N: int) -> RingDescriptor:
        """Lift ring (or lift-Laurent ring) at precision N over this char-p ring."""
        if self.kind == "laurent-poly":
            return RingDescriptor("lift-laurent", self.p, self.f, self.modulus, N)
        if self.kind in ("prime-field", "finite-field"):
            return RingDescriptor("lift-ring", self.p, self.f, self.modulus, N)
        if self.is_lift:
            reduced = self.reduction()
            return reduced.lift(N)
        raise RingError(f"{self.kind} has no lift")

    # -- element construction ----------------------------------------------

    @property
    def ops(self):
        return _ops(self)

    def zero(self) -> RingElement:
        ops = self.ops
        return RingElement(self, ops.zero, ops)

    def one(self) -> RingElement:
        ops = self.ops
        return RingElement(self, ops.one, ops)

    def __call__(self, value=0) -> RingElement:
        """Coerce ``value`` into this ring.

        Accepted: ints (and Fractions for rationals), elements of this ring,
        coefficient lists ``[c_0, ..., c_{f-1}]`` for F_q and lift rings, and
        ``{exponent: coefficient}`` dicts for Laurent rings.
        """
        ops = self.ops
        if isinstance(value, RingElement):
            if value.ring != self:
                raise RingMismatchError(f"cannot coerce {value.ring} into {self}")
            return value
        return RingElement(self, ops.coerce(value), ops)

    def gen(self) -> RingElement:
        """x for F_q / lift rings (f > 1), t for Laurent rings."""
        if self.is_laurent:
            return self.monomial(self.base().one(), 1)
        if self.f > 1 and self.kind in ("finite-field", "lift-ring"):
            return self([0, 1] + [0] * (self.f - 2))
        raise RingError(f"{self.kind} with f=1 has no generator")

    def monomial(self, coeff, exp: int) -> RingElement:
        if not self.is_laurent:
            raise RingError("monomials live in Laurent rings")
        base = self.base()
        c = base(coeff)
        ops = self.ops
        return RingElement(self, ops.monomial(c.payload, exp), ops)

    def elements(self):
        """Iterate over all elements of a finite field."""
        if self.kind not in ("prime-field", "finite-field"):
            raise RingError("only finite fields are enumerable")
        ops = self.ops
        return (RingElement(self, i, ops) for i in range(self.q))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p,
            "f": self.f,
            "modulus": list(self.modulus),
            "N": self.N,
        }

    @classmethod
    def from_json(cls, obj: dict) -> RingDescriptor:
        kind = obj["kind"]
        p = int(obj["p"])
        f = int(obj.get("f", 1))
        modulus = obj.get("modulus")
        if modulus is None:
            modulus = default_modulus(p, f)
        N = obj.get("N")
        return cls(kind, p, f, tuple(modulus), None if N is None else int(N))

    def __str__(self):
        q = f"F_{self.q}"
        return {
            "prime-field": q,
            "finite-field": q,
            "laurent-poly": f"{q}((t))",
            "lift-ring": f"W_{self.N}({q})",
            "lift-laurent": f"W_{self.N}({q})((t))",
            "integers": "Z",
            "rationals": "Q",
        }[self.kind]


@lru_cache(maxsize=None)
def _irreducible_cached(modulus: tuple[int, ...], p: int) -> bool:
    return is_irreducible(modulus, p)


# -- descriptor shortcuts ---------------------------------------------------


def prime_field(p: int) -> RingDescriptor:
    return RingDescriptor("prime-field", p)


def finite_field(p: int, f: int = 1, modulus=None) -> RingDescriptor:
    if f == 1 and modulus is None:
        return prime_field(p)
    modulus = default_modulus(p, f) if modulus is None else tuple(modulus)
    return RingDescriptor("finite-field", p, f, modulus)


def laurent(p: int, f: int = 1, modulus=None) -> RingDescriptor:
    modulus = default_modulus(p, f) if modulus is None else tuple(modulus)
    return RingDescriptor("laurent-poly", p, f, modulus)


def lift_ring(p: int, f: int = 1, N: int = 1, modulus=None) -> RingDescriptor:
    modulus = default_modulus(p, f) if modulus is None else tuple(modulus)
    return RingDescriptor("lift-ring", p, f, modulus, N)


def integers(p: int) -> RingDescriptor:
    return RingDescriptor("integers", p)


def rationals(p: int) -> RingDescriptor:
    return RingDescriptor("rationals", p)


# -- elements ---------------------------------------------------------------


class RingElement:
    """An immutable element of the ring named by ``ring``."""

    __slots__ = ("ring", "payload", "_ops")

    def __init__(self, ring: RingDescriptor, payload, ops=None):
        self.ring = ring
        self.payload = payload
        self._ops = ops if ops is not None else ring.ops

    def _other(self, other) -> RingElement | None:
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring(other)
        return None

    def _wrap(self, payload) -> RingElement:
        return RingElement(self.ring, payload, self._ops)

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._wrap(self._ops.add(self.payload, o.payload))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._wrap(self._ops.sub(self.payload, o.payload))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._wrap(self._ops.sub(o.payload, self.payload))

    def __neg__(self):
        return self._wrap(self._ops.neg(self.payload))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._wrap(self._ops.mul(self.payload, o.payload))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return invert(self) ** (-e)
        return self._wrap(self._ops.pow(self.payload, e))

    def is_zero(self) -> bool:
        return self._ops.is_zero(self.payload)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self._ops.key(self.payload) == other._ops.key(
            other.payload
        )

    def __hash__(self):
        return hash((self.ring, self._ops.key(self.payload)))

    def __repr__(self):
        return self._ops.format(self.payload)

    # -- Laurent helpers ---------------------------------------------------

    def coefficient(self, exp: int = 0) -> RingElement:
        """Coefficient of t^exp (Laurent rings) as an element of the base ring."""
        base = self.ring.base()
        if not self.ring.is_laurent:
            if exp != 0:
                raise RingError("non-Laurent elements only have a constant coefficient")
            return self
        return RingElement(base, self._ops.coefficient(self.payload, exp), base.ops)

    def valuation(self) -> int:
        """t-adic valuation; rejects zero."""
        if not self.ring.is_laurent:
            raise RingError("valuation is defined on Laurent rings")
        if self.is_zero():
            raise RingError("zero has no valuation")
        return self.payload[0]

    def support(self) -> list[int]:
        if not self.ring.is_laurent:
            return [] if self.is_zero() else [0]
        val, arr = self.payload
        rows = np.nonzero(np.any(arr != 0, axis=1))[0]
        return [val + int(i) for i in rows]

    def terms(self) -> dict[int, RingElement]:
        return {e: self.coefficient(e) for e in self.support()}

    def to_json(self) -> dict:
        return {"ring": self.ring.to_json(), "coeffs": self._ops.to_coeffs(self.payload)}

    @staticmethod
    def from_json(obj: dict) -> RingElement:
        ring = RingDescriptor.from_json(obj["ring"])
        ops = ring.ops
        return RingElement(ring, ops.from_coeffs(obj.get("coeffs", {})), ops)


# -- ring implementations ----------------------------------------------------


class _FieldOps:
    """F_q with table arithmetic on integer indices."""

    def __init__(self, p: int, f: int, modulus: tuple[int, ...]):
        self.p, self.f, self.q = p, f, p**f
        self.modulus = modulus
        q = self.q
        self.vec = [tuple((i // p**k) % p for k in range(f)) for i in range(q)]
        self.zero, self.one = 0, 1
        self.add_t = [[self._index([(a + b) % p for a, b in zip(self.vec[i], self.vec[j])])
                       for j in range(q)] for i in range(q)]
        self.neg_t = [self._index([(-a) % p for a in self.vec[i]]) for i in range(q)]
        self.mul_t = [[self._mulvec(i, j) for j in range(q)] for i in range(q)]
        self.inv_t = [None] * q
        for i in range(1, q):
            for j in range(1, q):
                if self.mul_t[i][j] == 1:
                    self.inv_t[i] = j
                    break
        self.frob_t = [self.pow(i, p) for i in range(q)]

    def _index(self, v) -> int:
        return sum(int(c) * self.p**k for k, c in enumerate(v))

    def _mulvec(self, i: int, j: int) -> int:
        a, b = self.vec[i], self.vec[j]
        prod = [0] * (2 * self.f - 1)
        for s, x in enumerate(a):
            if x:
                for t, y in enumerate(b):
                    prod[s + t] += x * y
        return self._index(_poly_rem(prod, self.modulus, self.p) if self.f > 1 else [prod[0] % self.p])

    def coerce(self, value) -> int:
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, (list, tuple)):
            if len(value) > self.f:
                raise RingError(f"expected at most {self.f} coefficients")
            return self._index([int(c) % self.p for c in value])
        raise RingError(f"cannot coerce {value!r} into F_{self.q}")

    def add(self, a, b):
        return self.add_t[a][b]

    def sub(self, a, b):
        return self.add_t[a][self.neg_t[b]]

    def neg(self, a):
        return self.neg_t[a]

    def mul(self, a, b):
        return self.mul_t[a][b]

    def pow(self, a, e):
        r, base = 1, a
        while e:
            if e & 1:
                r = self.mul_t[r][base]
            e >>= 1
            if e:
                base = self.mul_t[base][base]
        return r

    def inv(self, a):
        if a == 0:
            raise NotAUnitError("0 is not invertible")
        return self.inv_t[a]

    def frob(self, a, k=1):
        for _ in range(k % self.f if self.f > 1 else 0):
            a = self.frob_t[a]
        return a

    def is_zero(self, a):
        return a == 0

    def key(self, a):
        return a

    def to_coeffs(self, a):
        return {} if a == 0 else {"0": list(self.vec[a])}

    def from_coeffs(self, coeffs):
        for e, v in coeffs.items():
            if int(e) != 0:
                raise RingError("field elements only carry exponent 0")
            return self.coerce(list(v))
        return 0

    def format(self, a):
        return _format_poly(self.vec[a], "x")


class _LiftOps:
    """Z/p^N[x]/(M) on tuples of residues."""

    def __init__(self, p: int, f: int, modulus: tuple[int, ...], N: int):
        self.p, self.f, self.N = p, f, N
        self.mod = p**N
        self.modulus = modulus
        self.zero = (0,) * f
        self.one = (1,) + (0,) * (f - 1)
        self.field = _ops(RingDescriptor(
            "prime-field" if f == 1 else "finite-field", p, f, tuple(c % p for c in modulus)))

    def coerce(self, value):
        if isinstance(value, int):
            return (value % self.mod,) + (0,) * (self.f - 1)
        if isinstance(value, (list, tuple)):
            if len(value) > self.f:
                raise RingError(f"expected at most {self.f} coefficients")
            v = [int(c) % self.mod for c in value]
            return tuple(v + [0] * (self.f - len(v)))
        raise RingError(f"cannot coerce {value!r} into a lift ring")

    def add(self, a, b):
        m = self.mod
        return tuple((x + y) % m for x, y in zip(a, b))

    def sub(self, a, b):
        m = self.mod
        return tuple((x - y) % m for x, y in zip(a, b))

    def neg(self, a):
        m = self.mod
        return tuple((-x) % m for x in a)

    def mul(self, a, b):
        f, m = self.f, self.mod
        if f == 1:
            return ((a[0] * b[0]) % m,)
        prod = [0] * (2 * f - 1)
        for s, x in enumerate(a):
            if x:
                for t, y in enumerate(b):
                    prod[s + t] += x * y
        mod_poly = self.modulus
        for k in range(2 * f - 2, f - 1, -1):
            c = prod[k] % m
            if c:
                for i in range(f):
                    prod[k - f + i] -= c * mod_poly[i]
        return tuple(c % m for c in prod[:f])

    def pow(self, a, e):
        r, base = self.one, a
        while e:
            if e & 1:
                r = self.mul(r, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return r

    def reduce(self, a) -> int:
        return self.field._index([c % self.p for c in a])

    def naive_lift(self, idx: int):
        return tuple(self.field.vec[idx])

    def is_unit(self, a):
        return self.reduce(a) != 0

    def inv(self, a):
        r = self.reduce(a)
        if r == 0:
            raise NotAUnitError(f"{a} is not a unit")
        y = self.naive_lift(self.field.inv(r))
        two = self.coerce(2)
        prec = 1
        while prec < self.N:
            y = self.mul(y, self.sub(two, self.mul(a, y)))
            prec *= 2
        return y

    def valuation_p(self, a) -> int | None:
        v = None
        for c in a:
            if c:
                k = 0
                while c % self.p == 0:
                    c //= self.p
                    k += 1
                v = k if v is None else min(v, k)
        return v

    def div_p_power(self, a, k):
        d = self.p**k
        if any(c % d for c in a):
            return None
        return tuple(c // d for c in a)

    def is_zero(self, a):
        return not any(a)

    def key(self, a):
        return a

    def to_coeffs(self, a):
        return {} if not any(a) else {"0": list(a)}

    def from_coeffs(self, coeffs):
        for e, v in coeffs.items():
            if int(e) != 0:
                raise RingError("lift-ring elements only carry exponent 0")
            return self.coerce(list(v))
        return self.zero

    def format(self, a):
        return _format_poly(a, "x")


class _IntegerOps:
    zero, one = 0, 1

    def __init__(self, p):
        self.p = p

    def coerce(self, value):
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise RingError(f"{value} is not an integer")
            return int(value)
        if isinstance(value, (list, tuple)) and len(value) == 1:
            value = value[0]
        if isinstance(value, int):
            return value
        raise RingError(f"cannot coerce {value!r} into Z")

    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)
    neg = staticmethod(lambda a: -a)
    mul = staticmethod(lambda a, b: a * b)
    pow = staticmethod(lambda a, e: a**e)
    is_zero = staticmethod(lambda a: a == 0)
    key = staticmethod(lambda a: a)

    def inv(self, a):
        if a not in (1, -1):
            raise NotAUnitError(f"{a} is not a unit in Z")
        return a

    def div_p_power(self, a, k):
        d = self.p**k
        return None if a % d else a // d

    def to_coeffs(self, a):
        return {} if a == 0 else {"0": [a]}

    def from_coeffs(self, coeffs):
        for _, v in coeffs.items():
            return self.coerce(v[0])
        return 0

    def format(self, a):
        return str(a)


class _RationalOps(_IntegerOps):
    zero, one = Fraction(0), Fraction(1)

    def coerce(self, value):
        if isinstance(value, (list, tuple)) and len(value) == 1:
            value = value[0]
        if isinstance(value, (int, Fraction, str)):
            return Fraction(value)
        raise RingError(f"cannot coerce {value!r} into Q")

    def inv(self, a):
        if a == 0:
            raise NotAUnitError("0 is not invertible")
        return 1 / a

    pow = staticmethod(lambda a, e: a**e)

    def div_p_power(self, a, k):
        return a / self.p**k

    def to_coeffs(self, a):
        return {} if a == 0 else {"0": [str(a)]}


def _format_poly(vec, var: str) -> str:
    parts = []
    for k, c in enumerate(vec):
        if not c:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            mon = var if k == 1 else f"{var}^{k}"
            parts.append(mon if c == 1 else f"{c}*{mon}")
    return " + ".join(parts) if parts else "0"


class _LaurentOps:
    """Dense Laurent polynomials over F_q or a lift ring."""

    def __init__(self, base_desc: RingDescriptor):
        self.base_desc = base_desc
        self.base = _ops(base_desc)
        self.p, self.f = base_desc.p, base_desc.f
        self.lift = base_desc.kind == "lift-ring"
        self.mod = base_desc.p ** base_desc.N if self.lift else base_desc.p
        self.modulus = base_desc.modulus
        self.dtype = np.int64 if self.mod < 2**20 else object
        self.zero = (0, self._freeze(np.zeros((0, self.f), dtype=self.dtype)))
        one = np.zeros((1, self.f), dtype=self.dtype)
        one[0, 0] = 1
        self.one = (0, self._freeze(one))
        if not self.lift:
            # F_p-linear matrix of the p-power map in the power basis
            fo = self.base
            cols = [fo.vec[fo.frob_t[fo._index([1 if k == j else 0 for k in range(self.f)])]]
                    for j in range(self.f)]
            self.frob_matrix = np.array(cols, dtype=np.int64)  # row j = image of x^j

    @staticmethod
    def _freeze(arr):
        arr.flags.writeable = False
        return arr

    # -- conversions between base payloads and coefficient rows --

    def row(self, c):
        if self.lift:
            return list(c)
        return list(self.base.vec[c])

    def from_row(self, r):
        if self.lift:
            return tuple(int(x) % self.mod for x in r)
        return self.base._index([int(x) % self.p for x in r])

    def normalize(self, val, arr):
        arr = arr % self.mod
        nz = np.nonzero(np.any(arr != 0, axis=1))[0]
        if len(nz) == 0:
            return self.zero
        lo, hi = int(nz[0]), int(nz[-1])
        out = np.ascontiguousarray(arr[lo : hi + 1])
        if out.dtype != self.dtype:
            out = out.astype(self.dtype)
        return (val + lo, self._freeze(out))

    def coerce(self, value):
        if isinstance(value, int):
            return self.monomial(self.base.coerce(value), 0)
        if isinstance(value, dict):
            acc = self.zero
            for e, c in value.items():
                if isinstance(c, RingElement):
                    c = c.payload
                else:
                    c = self.base.coerce(c)
                acc = self.add(acc, self.monomial(c, int(e)))
            return acc
        raise RingError(f"cannot coerce {value!r} into a Laurent ring")

    def monomial(self, c, e):
        arr = np.array([self.row(c)], dtype=self.dtype)
        return self.normalize(e, arr)

    def add(self, a, b, sign=1):
        (va, A), (vb, B) = a, b
        if len(B) == 0:
            return a
        if len(A) == 0:
            return b if sign == 1 else self.neg(b)
        lo = min(va, vb)
        hi = max(va + len(A), vb + len(B))
        out = np.zeros((hi - lo, self.f), dtype=self.dtype)
        out[va - lo : va - lo + len(A)] += A
        if sign == 1:
            out[vb - lo : vb - lo + len(B)] += B
        else:
            out[vb - lo : vb - lo + len(B)] -= B
        return self.normalize(lo, out)

    def sub(self, a, b):
        return self.add(a, b, -1)

    def neg(self, a):
        val, A = a
        if len(A) == 0:
            return a
        return self.normalize(val, -A)

    def _conv(self, x, y):
        m = self.mod
        if x.dtype != object and (m - 1) ** 2 * min(len(x), len(y)) < _INT64_SAFE:
            return np.convolve(x, y) % m
        return np.convolve(x.astype(object), y.astype(object)) % m

    def mul_arrays(self, A, B):
        f, m = self.f, self.mod
        L = len(A) + len(B) - 1
        if f == 1:
            out = self._conv(A[:, 0], B[:, 0])
            return out.reshape(L, 1)
        wide = np.zeros((L, 2 * f - 1), dtype=object if self.dtype is object else np.int64)
        for i in range(f):
            for j in range(f):
                wide[:, i + j] = (wide[:, i + j] + self._conv(A[:, i], B[:, j])) % m
        for k in range(2 * f - 2, f - 1, -1):
            col = wide[:, k]
            for i in range(f):
                if self.modulus[i]:
                    wide[:, k - f + i] = (wide[:, k - f + i] - (self.modulus[i] % m) * col) % m
        return wide[:, :f]

    def mul(self, a, b):
        (va, A), (vb, B) = a, b
        if len(A) == 0 or len(B) == 0:
            return self.zero
        return self.normalize(va + vb, self.mul_arrays(A, B))

    def pow(self, a, e):
        if e == 0:
            return self.one
        if not self.lift and e % self.p == 0:
            # (x^(e/p))^p via Frobenius
            return self.frob(self.pow(a, e // self.p), 1)
        r, base = self.one, a
        while e:
            if e & 1:
                r = self.mul(r, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return r

    def frob(self, a, k=1):
        """c * t^e -> c^(p^k) * t^(e p^k), characteristic p only."""
        val, A = a
        if len(A) == 0 or k == 0:
            return a
        s = self.p**k
        coeffs = A
        if self.f > 1:
            for _ in range(k % self.f):
                coeffs = (coeffs @ self.frob_matrix) % self.p
        out = np.zeros(((len(A) - 1) * s + 1, self.f), dtype=self.dtype)
        out[::s] = coeffs
        return self.normalize(val * s, out)

    def is_zero(self, a):
        return len(a[1]) == 0

    def key(self, a):
        val, A = a
        return (val, tuple(tuple(int(x) for x in r) for r in A))

    def coefficient(self, a, e):
        val, A = a
        i = e - val
        if 0 <= i < len(A):
            return self.from_row(A[i])
        return self.base.zero

    def scale(self, a, c):
        """Multiply by a base-ring scalar."""
        return self.mul(a, self.monomial(c, 0))

    def shift(self, a, k):
        val, A = a
        if len(A) == 0:
            return a
        return (val + k, A)

    def truncate(self, a, order):
        """Drop terms of exponent > order."""
        val, A = a
        if len(A) == 0 or val + len(A) - 1 <= order:
            return a
        if order < val:
            return self.zero
        return self.normalize(val, A[: order - val + 1])

    def derivative(self, a):
        val, A = a
        if len(A) == 0:
            return a
        exps = np.arange(val, val + len(A)).reshape(-1, 1)
        if self.dtype is object:
            exps = exps.astype(object)
        return self.normalize(val - 1, (A * (exps % self.mod)) % self.mod)

    def series_inverse(self, u, order):
        """Inverse of a power series with unit constant term, modulo t^(order+1)."""
        val, A = u
        if len(A) == 0 or val != 0:
            raise NotAUnitError("series inverse needs a unit constant term")
        c0 = self.from_row(A[0])
        c0_inv = self.base.inv(c0)
        prec = 1
        v = self.monomial(c0_inv, 0)
        two = self.monomial(self.base.coerce(2), 0)
        while prec < order + 1:
            prec = min(2 * prec, order + 1)
            uv = self.truncate(self.mul(self.truncate(u, prec - 1), v), prec - 1)
            v = self.truncate(self.mul(v, self.sub(two, uv)), prec - 1)
        return v

    def to_coeffs(self, a):
        val, A = a
        out = {}
        for i, r in enumerate(A):
            if np.any(r != 0):
                out[str(val + i)] = [int(x) for x in r]
        return out

    def from_coeffs(self, coeffs):
        acc = self.zero
        for e, v in coeffs.items():
            acc = self.add(acc, self.monomial(self.base.coerce(list(v)), int(e)))
        return acc

    def format(self, a):
        val, A = a
        if len(A) == 0:
            return "0"
        parts = []
        for i, r in enumerate(A):
            if not np.any(r != 0):
                continue
            c = _format_poly([int(x) for x in r], "x")
            e = val + i
            mon = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if not mon:
                parts.append(c)
            elif c == "1":
                parts.append(mon)
            else:
                parts.append(f"({c})*{mon}" if " + " in c else f"{c}*{mon}")
        return " + ".join(parts)


@lru_cache(maxsize=None)
def _ops(desc: RingDescriptor):
    kind = desc.kind
    if kind in ("prime-field", "finite-field"):
        return _FieldOps(desc.p, desc.f, desc.modulus)
    if kind == "lift-ring":
        return _LiftOps(desc.p, desc.f, desc.modulus, desc.N)
    if kind in LAURENT_KINDS:
        return _LaurentOps(desc.base())
    if kind == "integers":
        return _IntegerOps(desc.p)
    return _RationalOps(desc.p)


# -- operations --------------------------------------------------------------


def ring_arith(x: RingElement, y: RingElement, op: str) -> RingElement:
    if x.ring != y.ring:
        raise RingMismatchError(f"{x.ring} vs {y.ring}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise RingError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class LaurentSeriesView:
    """A Laurent series whose coefficients are exact up to t^order inclusive."""

    element: RingElement
    order: int

    def __post_init__(self):
        if not self.element.ring.is_laurent:
            raise RingError("series views wrap Laurent-ring elements")
        object.__setattr__(self, "element", truncate(self.element, self.order))

    def coefficient(self, exp: int) -> RingElement:
        if exp > self.order:
            raise ExpansionOrderError(f"t^{exp} is beyond expansion order {self.order}")
        return self.element.coefficient(exp)

    def mul_poly(self, poly: RingElement) -> LaurentSeriesView:
        """Product with an exact Laurent polynomial."""
        if poly.is_zero():
            return LaurentSeriesView(poly, 10**9)
        v = poly.valuation()
        return LaurentSeriesView(self.element * poly, self.order + v)

    def __repr__(self):
        return f"{self.element!r} + O(t^{self.order + 1})"


def truncate(x: RingElement, order: int) -> RingElement:
    return x._wrap(x._ops.truncate(x.payload, order))


def invert(x: RingElement, order: int | None = None):
    """Inverse of a unit.

    Laurent inputs that are a unit coefficient times a power of t are inverted
    exactly.  Any other nonzero Laurent polynomial needs ``order`` and yields
    a :class:`LaurentSeriesView` exact up to t^order.
    """
    R = x.ring
    ops = x._ops
    if not R.is_laurent:
        return x._wrap(ops.inv(x.payload))
    if x.is_zero():
        raise NotAUnitError("0 is not invertible")
    val, A = x.payload
    lead = ops.from_row(A[0])
    if R.kind == "lift-laurent" and not ops.base.is_unit(lead):
        raise NotAUnitError("leading coefficient is not a unit")
    if len(A) == 1:
        return x._wrap(ops.monomial(ops.base.inv(lead), -val))
    if order is None:
        raise NotAUnitError(f"{x!r} is not a monomial; pass an expansion order")
    u = (0, A)
    inv = ops.series_inverse(u, order + val)
    return LaurentSeriesView(x._wrap(ops.shift(inv, -val)), order)


def frobenius_power(c: RingElement, k: int = 1) -> RingElement:
    """c^(p^k) in a characteristic-p ring."""
    R = c.ring
    if not R.char_p:
        raise RingError(f"frobenius_power needs characteristic p, got {R}")
    if k < 0:
        raise RingError("k must be non-negative")
    if R.is_laurent:
        return c._wrap(c._ops.frob(c.payload, k))
    return c._wrap(c._ops.frob(c.payload, k))


def trace_to_prime(c: RingElement) -> RingElement:
    """Absolute trace F_q -> F_p."""
    R = c.ring
    if R.kind not in ("prime-field", "finite-field"):
        raise RingError(f"trace is defined on finite fields, got {R}")
    ops = c._ops
    acc, cur = 0, c.payload
    for _ in range(R.f):
        acc = ops.add(acc, cur)
        cur = ops.frob_t[cur]
    if acc >= R.p:
        raise ArithmeticError("trace left the prime field")  # cannot happen for irreducible M
    return prime_field(R.p)(acc)


@lru_cache(maxsize=None)
def teichmuller_table(lift_desc: RingDescriptor) -> tuple:
    """Teichmueller representatives in a lift ring, indexed by residue."""
    if lift_desc.kind != "lift-ring":
        raise RingError("teichmuller_table needs a lift-ring descriptor")
    ops = lift_desc.ops
    q = lift_desc.q
    table = []
    for idx in range(q):
        z = ops.naive_lift(idx)
        for _ in range(lift_desc.N + 2):
            nz = ops.pow(z, q)
            if nz == z:
                break
            z = nz
        else:
            raise LiftError(f"Teichmueller iteration for residue {idx} did not stabilise")
        table.append(z)
    return tuple(table)


def teichmuller_lift_coeff(c: RingElement, N: int, modulus=None) -> RingElement:
    """The unique omega = c mod p with omega^q = omega in the lift ring mod p^N."""
    R = c.ring
    if R.kind not in ("prime-field", "finite-field"):
        raise RingError("teichmuller_lift_coeff lifts finite-field elements")
    L = RingDescriptor("lift-ring", R.p, R.f, R.modulus if modulus is None else tuple(modulus), N)
    if tuple(m % R.p for m in L.modulus) != R.modulus:
        raise RingError("lift modulus does not reduce to the field modulus")
    return L(list(teichmuller_table(L)[c.payload]))


def teichmuller_lift_laurent(x: RingElement, N: int) -> RingElement:
    """Coefficientwise Teichmueller lift of a Laurent polynomial over F_q."""
    R = x.ring
    if R.kind != "laurent-poly":
        raise RingError("expects a laurent-poly element")
    LL = R.lift(N)
    ops = LL.ops
    if x.is_zero():
        return LL.zero()
    val, A = x.payload
    table = np.array(teichmuller_table(LL.base()), dtype=ops.dtype).reshape(R.q, R.f)
    idx = np.zeros(len(A), dtype=np.int64)
    for k in range(R.f):
        idx += A[:, k].astype(np.int64) * R.p**k
    return RingElement(LL, ops.normalize(val, table[idx]), ops)


def reduce_mod_p(x: RingElement) -> RingElement:
    """Reduction of a lift-ring or lift-Laurent element to characteristic p."""
    R = x.ring
    if not R.is_lift:
        raise RingError(f"reduce_mod_p expects a lift kind, got {R}")
    target = R.reduction()
    if R.kind == "lift-ring":
        return RingElement(target, x._ops.reduce(x.payload), target.ops)
    ops = target.ops
    val, A = x.payload
    return RingElement(target, ops.normalize(val, (A % R.p).astype(np.int64)), ops)


def naive_lift(x: RingElement, N: int) -> RingElement:
    """Coefficientwise lift by representatives in [0, p)."""
    R = x.ring
    L = R.lift(N)
    if R.is_laurent:
        ops = L.ops
        val, A = x.payload
        return RingElement(L, ops.normalize(val, A.astype(ops.dtype)), ops)
    return L(list(R.ops.vec[x.payload]))


def p_adic_valuation(x: RingElement) -> int | None:
    """Minimum p-adic valuation of the coefficients (None for zero)."""
    R = x.ring
    if R.kind == "lift-ring":
        return x._ops.valuation_p(x.payload)
    if R.kind in ("integers", "rationals"):
        if x.payload == 0:
            return None
        v, num, den = 0, Fraction(x.payload).numerator, Fraction(x.payload).denominator
        while num % R.p == 0:
            num //= R.p
            v += 1
        while den % R.p == 0:
            den //= R.p
            v -= 1
        return v
    if R.kind == "lift-laurent":
        vals = [x._ops.base.valuation_p(c.payload) for c in x.terms().values()]
        vals = [v for v in vals if v is not None]
        return min(vals) if vals else None
    raise RingError(f"no p-adic valuation on {R}")


def divide_by_p_power(x: RingElement, k: int) -> RingElement | None:
    """x / p^k if exact in the ring (for lift rings: all coefficients divisible), else None."""
    if k == 0:
        return x
    R = x.ring
    if R.kind in ("integers", "rationals", "lift-ring"):
        out = x._ops.div_p_power(x.payload, k)
        return None if out is None else x._wrap(out)
    if R.kind == "lift-laurent":
        val, A = x.payload
        d = R.p**k
        if np.any(A % d != 0):
            return None
        return x._wrap(x._ops.normalize(val, A // d))
    raise RingError(f"division by p is not defined on {R}")


def residue(series: LaurentSeriesView) -> RingElement:
    """Coefficient of t^-1."""
    return series.coefficient(-1)


def dlog_series(b: RingElement, order: int) -> LaurentSeriesView:
    """(db/dt)/b expanded up to t^order inclusive."""
    R = b.ring
    if not R.is_laurent:
        raise RingError("dlog_series expects a Laurent polynomial")
    if b.is_zero():
        raise RingError("dlog of zero is undefined")
    ops = b._ops
    val, A = b.payload
    lead = ops.from_row(A[0])
    if R.kind == "lift-laurent" and not ops.base.is_unit(lead):
        raise NotAUnitError("leading coefficient of b must be a unit")
    out = ops.monomial(ops.base.coerce(val), -1) if val % ops.mod else ops.zero
    if len(A) > 1 and order >= 0:
        u = (0, A)
        du = ops.derivative(u)
        inv = ops.series_inverse(u, order)
        out = ops.add(out, ops.truncate(ops.mul(du, inv), order))
    return LaurentSeriesView(RingElement(R, out, ops), order)
