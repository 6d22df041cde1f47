"""Universal Witt polynomials over Z, found by solving the ghost equations.

A polynomial is a dict ``{exponent tuple: integer coefficient}``.  For
length n the variables are X_0..X_{n-1}, Y_0..Y_{n-1} (addition and
multiplication), X_0..X_{n-1} (negation) and X_0..X_n (Frobenius).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

from .config import check_budget

Poly = dict


class IntegralityError(ArithmeticError):
    """A ghost-solve step was not divisible by p^i."""

    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"ghost solve not integral at index {index}")


def padd(a: Poly, b: Poly, scale: int = 1) -> Poly:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m)
    return out


def ppow(a: Poly, e: int, nvars: int) -> Poly:
    result: Poly = {(0,) * nvars: 1}
    base = a
    while e:
        if e & 1:
            result = pmul(result, base)
        e >>= 1
        if e:
            base = pmul(base, base)
    return result


def pscale(a: Poly, c: int) -> Poly:
    return {m: c * v for m, v in a.items()} if c else {}


def var(i: int, nvars: int) -> Poly:
    m = [0] * nvars
    m[i] = 1
    return {tuple(m): 1}


def ghost_poly(p: int, i: int, offset: int, nvars: int) -> Poly:
    """w_i in the variables offset..offset+i."""
    out: Poly = {}
    for j in range(i + 1):
        out = padd(out, pscale(ppow(var(offset + j, nvars), p ** (i - j), nvars), p**j))
    return out


def ghost_solve(p: int, targets: list[Poly], nvars: int) -> list[Poly]:
    """Polynomials Q_i with w_i(Q) = targets[i], asserting integrality."""
    sols: list[Poly] = []
    for i, g in enumerate(targets):
        rest = dict(g)
        for j, q in enumerate(sols):
            rest = padd(rest, pscale(ppow(q, p ** (i - j), nvars), p**j), -1)
        d = p**i
        bad = [c for c in rest.values() if c % d]
        if bad:
            raise IntegralityError(i, f"coefficient {bad[0]} not divisible by {d} at index {i}")
        sols.append({m: c // d for m, c in rest.items()})
    return sols


@dataclass(frozen=True)
class UniversalPolySet:
    p: int
    n: int
    S: tuple
    P: tuple
    Neg: tuple
    Fr: tuple

    def term_counts(self) -> dict[str, list[int]]:
        return {k: [len(q) for q in getattr(self, k)] for k in ("S", "P", "Neg", "Fr")}


_lock = threading.Lock()


def universal_polys(p: int, n: int) -> UniversalPolySet:
    """Addition, multiplication, negation and Frobenius polynomials for W_n."""
    check_budget(p, n)
    with _lock:
        return _generate(p, n)


@lru_cache(maxsize=None)
def _generate(p: int, n: int) -> UniversalPolySet:
    nv2 = 2 * n
    wx = [ghost_poly(p, i, 0, nv2) for i in range(n)]
    wy = [ghost_poly(p, i, n, nv2) for i in range(n)]
    S = ghost_solve(p, [padd(x, y) for x, y in zip(wx, wy)], nv2)
    P = ghost_solve(p, [pmul(x, y) for x, y in zip(wx, wy)], nv2)
    Neg = ghost_solve(p, [pscale(ghost_poly(p, i, 0, n), -1) for i in range(n)], n)
    Fr = ghost_solve(p, [ghost_poly(p, i + 1, 0, n + 1) for i in range(n)], n + 1)
    return UniversalPolySet(p, n, tuple(S), tuple(P), tuple(Neg), tuple(Fr))


def reduce_poly(poly: Poly, modulus: int | None) -> Poly:
    if modulus is None:
        return poly
    out = {}
    for m, c in poly.items():
        c %= modulus
        if c:
            out[m] = c
    return out


def check_ghost_identities(ups: UniversalPolySet) -> None:
    """Re-verify w_i(S)=w_i(X)+w_i(Y), w_i(P)=w_i(X)w_i(Y), w_i(Neg)=-w_i(X), w_i(Fr)=w_{i+1}(X)."""
    p, n = ups.p, ups.n
    nv2 = 2 * n

    def ghost_of(polys, i, nvars):
        out: Poly = {}
        for j in range(i + 1):
            out = padd(out, pscale(ppow(polys[j], p ** (i - j), nvars), p**j))
        return out

    for i in range(n):
        wx = ghost_poly(p, i, 0, nv2)
        wy = ghost_poly(p, i, n, nv2)
        if ghost_of(ups.S, i, nv2) != padd(wx, wy):
            raise AssertionError(f"addition ghost identity fails at {i}")
        if ghost_of(ups.P, i, nv2) != pmul(wx, wy):
            raise AssertionError(f"multiplication ghost identity fails at {i}")
        if ghost_of(ups.Neg, i, n) != pscale(ghost_poly(p, i, 0, n), -1):
            raise AssertionError(f"negation ghost identity fails at {i}")
        if ghost_of(ups.Fr, i, n + 1) != ghost_poly(p, i + 1, 0, n + 1):
            raise AssertionError(f"Frobenius ghost identity fails at {i}")
