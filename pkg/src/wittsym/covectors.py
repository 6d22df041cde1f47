"""Witt covectors CW(K) as the direct limit of W_1 -V-> W_2 -V-> W_3 ...

A covector (..., a_{-2}, a_{-1}, a_0) is stored as its minimal window
(a_{-m+1}, ..., a_0) with a_{-m+1} != 0; the zero covector has the empty
window.  Index 0 is always the last window entry.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import rings
from .rings import RingDescriptor, RingElement
from .witt import WittError, WittVector, frobenius_W, witt_add, witt_neg


@dataclass(frozen=True)
class Covector:
    p: int
    ring: RingDescriptor
    window: tuple

    def __post_init__(self):
        if not self.ring.char_p:
            raise WittError("covectors are implemented over characteristic-p rings only")
        w = tuple(self.window)
        k = 0
        while k < len(w) and w[k].is_zero():
            k += 1
        object.__setattr__(self, "window", w[k:])

    @property
    def length(self) -> int:
        return len(self.window)

    def is_zero(self) -> bool:
        return not self.window

    def entry(self, index: int) -> RingElement:
        """a_index for index <= 0."""
        if index > 0:
            raise IndexError("covector indices are non-positive")
        pos = len(self.window) - 1 + index
        return self.window[pos] if pos >= 0 else self.ring.zero()

    def lift(self, m: int) -> WittVector:
        """The representative in W_m (m >= length): left-padded window."""
        if m < self.length:
            raise WittError(f"window of length {self.length} does not fit in W_{m}")
        z = self.ring.zero()
        return WittVector(self.p, m, self.ring, (z,) * (m - self.length) + self.window)

    def __add__(self, other):
        return cov_add(self, other)

    def __neg__(self):
        return cov_neg(self)

    def __sub__(self, other):
        return cov_add(self, cov_neg(other))

    def __repr__(self):
        return "(..., 0, " + ", ".join(repr(c) for c in self.window) + ")" if self.window else "(..., 0)"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "ring": self.ring.to_json(),
            "window": [c.to_json()["coeffs"] for c in self.window],
            "top_index": 0,
        }

    @staticmethod
    def from_json(obj: dict) -> Covector:
        if int(obj.get("top_index", 0)) != 0:
            raise WittError("covector windows must end at index 0")
        ring = RingDescriptor.from_json(obj["ring"])
        window = []
        for c in obj["window"]:
            if isinstance(c, dict) and "coeffs" in c:
                window.append(rings.RingElement.from_json(c))
            elif isinstance(c, dict):
                window.append(rings.RingElement.from_json({"ring": ring.to_json(), "coeffs": c}))
            else:
                window.append(ring(c))
        return Covector(int(obj.get("p", ring.p)), ring, tuple(window))


def zero_covector(ring: RingDescriptor) -> Covector:
    return Covector(ring.p, ring, ())


def psi(a: WittVector) -> Covector:
    """psi_n: W_n(K) -> CW(K), right-aligned embedding."""
    return Covector(a.p, a.ring, a.coords)


def teich_at(c: RingElement, l: int) -> Covector:
    """[c]_l: c at position l <= 0, zeros elsewhere."""
    if l > 0:
        raise IndexError("positions are non-positive")
    z = c.ring.zero()
    return Covector(c.ring.p, c.ring, (c,) + (z,) * (-l))


def _check(x: Covector, y: Covector):
    if (x.p, x.ring) != (y.p, y.ring):
        raise rings.RingMismatchError(f"{x.ring} vs {y.ring}")


def cov_add(x: Covector, y: Covector, pad: int = 0) -> Covector:
    """Add in W_m for m = max window length + pad, then re-embed."""
    _check(x, y)
    if y.is_zero():
        return x
    if x.is_zero():
        return y
    m = max(x.length, y.length) + pad
    return psi(witt_add(x.lift(m), y.lift(m)))


def cov_neg(x: Covector) -> Covector:
    if x.is_zero():
        return x
    return psi(witt_neg(x.lift(x.length)))


def cov_F(x: Covector) -> Covector:
    if x.is_zero():
        return x
    return psi(frobenius_W(x.lift(x.length)))


def cov_V(x: Covector) -> Covector:
    """(..., a_2, a_1, a_0) -> (..., a_3, a_2, a_1): drop the index-0 entry."""
    return Covector(x.p, x.ring, x.window[:-1])
