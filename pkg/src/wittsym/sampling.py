"""Seeded random witnesses: Laurent polynomials, Witt vectors, covectors."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .covectors import Covector
from .rings import RingDescriptor, RingElement
from .witt import WittVector


@dataclass(frozen=True)
class WitnessSpace:
    """Exponents in [exp_lo, exp_hi], at most max_terms monomials per element."""

    exp_lo: int = -3
    exp_hi: int = 4
    max_terms: int = 3
    zero_weight: float = 0.15


DEFAULT_SPACE = WitnessSpace()


class Sampler:
    def __init__(self, ring: RingDescriptor, seed: int = 0, space: WitnessSpace = DEFAULT_SPACE):
        self.ring = ring
        self.space = space
        self.rng = random.Random(seed)
        self.base = ring.base() if ring.is_laurent else ring

    def coeff(self, nonzero: bool = True) -> RingElement:
        lo = 1 if nonzero else 0
        return self.base(self._coeff_list(lo))

    def _coeff_list(self, lo: int):
        B = self.base
        if B.kind in ("integers", "rationals"):
            v = self.rng.randint(-20, 20)
            return v if v or not lo else 1
        if B.is_lift:
            m = B.p**B.N
            return [self.rng.randrange(m) for _ in range(B.f)]
        idx = self.rng.randrange(lo, B.q)
        return [(idx // B.p**k) % B.p for k in range(B.f)]

    def element(self, lo: int | None = None, hi: int | None = None, nonzero: bool = False) -> RingElement:
        """A random element; for Laurent rings, exponents in [lo, hi]."""
        R = self.ring
        if not R.is_laurent:
            if not nonzero and self.rng.random() < self.space.zero_weight:
                return R.zero()
            return self.coeff(nonzero=True)
        lo = self.space.exp_lo if lo is None else lo
        hi = self.space.exp_hi if hi is None else hi
        if not nonzero and self.rng.random() < self.space.zero_weight:
            return R.zero()
        while True:
            k = self.rng.randint(1, self.space.max_terms)
            exps = self.rng.sample(range(lo, hi + 1), min(k, hi - lo + 1))
            terms = {e: self.coeff() for e in exps}
            x = R(terms)
            if not x.is_zero():
                return x

    def nonzero(self) -> RingElement:
        return self.element(nonzero=True)

    def unit(self) -> RingElement:
        """A Laurent polynomial of valuation 0 (a unit of the valuation ring)."""
        x = self.element(0, self.space.exp_hi, nonzero=True)
        c = x.coefficient(0)
        if c.is_zero():
            x = x + self.ring.monomial(self.coeff(), 0)
        return x

    def integral(self) -> RingElement:
        return self.element(0, self.space.exp_hi)

    def t_multiple(self) -> RingElement:
        """An element of t F_q[t]."""
        return self.element(1, self.space.exp_hi)

    def witt(self, n: int, kind: str = "any") -> WittVector:
        make = {
            "any": self.element,
            "integral": self.integral,
            "t": self.t_multiple,
        }[kind]
        return WittVector(self.ring.p, n, self.ring, tuple(make() for _ in range(n)))

    def covector(self, max_len: int) -> Covector:
        m = self.rng.randint(1, max_len)
        return Covector(self.ring.p, self.ring, tuple(self.element() for _ in range(m)))

    def randint(self, lo: int, hi: int) -> int:
        return self.rng.randint(lo, hi)

    def choice(self, seq):
        return self.rng.choice(seq)
