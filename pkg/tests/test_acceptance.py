"""Acceptance gate: one pass/fail line per criterion.

Run directly (``python3 tests/test_acceptance.py``) for the summary lines, or
through pytest, where each criterion is one test.
"""

from __future__ import annotations

import sys
import time

import pytest

from wittsym import rings
from wittsym.config import max_n
from wittsym.suites import SuiteSpec, run_suite
from wittsym.symbols import SymbolValue, asw_symbol, pairing_n
from wittsym.witt import teichmuller

# (p, f) pairs for the Laurent fields F_q((t))
LAURENT_FIELDS = [(2, 1), (3, 1), (2, 2)]
N1_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (5, 2)]


def _levels(p: int, extra: int = 0):
    return range(1, max_n(p) - extra + 1)


def _run(suite_ids, configs, samples, seed=2024):
    """Run every suite on every (p, f, n, ring) config; collect failing reports."""
    bad, checks = [], 0
    for sid in suite_ids:
        for p, f, n, ring in configs(sid):
            r = run_suite(SuiteSpec(sid, p=p, f=f, n=n, samples=samples, seed=seed, ring=ring))
            checks += r.checks
            if not r.passed:
                bad.append(r)
    return bad, checks


def _detail(bad, checks, elapsed):
    if not bad:
        return f"{checks} checks, 0 failures, {elapsed:.1f}s"
    r = bad[0]
    return f"{len(bad)} failing runs; first: {r.suite} {r.params} {r.failures[0]}"


# -- criteria -------------------------------------------------------------------------------


def criterion_1():
    """Witt ring identities, 200 samples each, over F_2, F_3, F_4, F_2((t)) and Z; total < 60 s."""
    t0 = time.perf_counter()
    char_p = [("field", 2, 1), ("field", 3, 1), ("field", 2, 2), ("laurent", 2, 1)]

    def configs(sid):
        if sid.startswith("witt-ghost"):
            return [(p, 1, n, "integers") for p in (2, 3, 5) for n in _levels(p)]
        return [(p, f, n, ring) for ring, p, f in char_p for n in _levels(p)]

    bad, checks = _run(
        ["witt-ring-axioms", "witt-fv-vf-p", "witt-v-product", "witt-ghost-morphism", "witt-ghost-roundtrip"],
        configs, 200,
    )
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    return ok, _detail(bad, checks, elapsed) + ("" if elapsed < 60 else " (over the 60 s limit)")


def criterion_2():
    """Exhaustive: F - 1 kills W_n(F_p) and m -> m*1 is Z/p^n = W_n(F_p) for p^n in {4,8,16,9,27,25}."""
    t0 = time.perf_counter()
    cases = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]
    bad, checks = _run(["witt-wp-kernel", "witt-zpn-iso"], lambda sid: [(p, 1, n, "field") for p, n in cases], 1)
    return not bad, _detail(bad, checks, time.perf_counter() - t0)


SYMBOL_SUITES = [
    "symbol-bilinear",
    "symbol-wp-vanishing",
    "symbol-pn-power",
    "symbol-frobenius",
    "symbol-v-shift",
    "symbol-unramified",
    "symbol-tk-vanishing",
]


def criterion_3():
    """Symbol identities over F_2((t)), F_3((t)), F_4((t)), 100 samples each; total < 5 min."""
    t0 = time.perf_counter()

    def configs(sid):
        extra = 1 if sid == "symbol-v-shift" else 0
        return [(p, f, n, "laurent") for p, f in LAURENT_FIELDS for n in _levels(p, extra)]

    bad, checks = _run(SYMBOL_SUITES, configs, 100)
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 300
    return ok, _detail(bad, checks, elapsed) + ("" if elapsed < 300 else " (over the 5 min limit)")


def criterion_4():
    """[[b], b) = 0 for 200 random b per field and every budget n."""
    t0 = time.perf_counter()
    configs = lambda sid: [(p, f, n, "laurent") for p, f in LAURENT_FIELDS for n in _levels(p)]
    bad, checks = _run(["symbol-teich-self"], configs, 200)
    return not bad, _detail(bad, checks, time.perf_counter() - t0)


PAIRING_SUITES = [
    "pairing-frobenius-n-invariance",
    "pairing-bilinear",
    "pairing-skew",
    "pairing-cyclic",
    "pairing-expansion",
    "pairing-teich-formula",
    "fv-adjoint",
    "pairing-level-shift",
    "pairing-level-scaling",
    "pairing-alternating",
    "pairing-mn-skew",
    "pairing-mn-bilinear",
    "pairing-mn-fv",
    "pairing-mn-routes",
    "pairing-mn-teich-term",
    "pairing-inf",
]

# levels per field for the pairing and forms criteria
PAIRING_LEVELS = {(2, 1): (1, 2, 3), (3, 1): (1, 2), (2, 2): (2,)}


def criterion_5():
    """Pairing identities, 100 samples each, p = 2 included."""
    t0 = time.perf_counter()
    configs = lambda sid: [(p, f, n, "laurent") for (p, f), ns in PAIRING_LEVELS.items() for n in ns]
    bad, checks = _run(PAIRING_SUITES, configs, 100)
    return not bad, _detail(bad, checks, time.perf_counter() - t0)


FORMS_SUITES = [
    "forms-relations-M",
    "forms-relations-Mprime",
    "forms-relations-N",
    "forms-relations-Nprime",
    "forms-relations-Ncov",
    "forms-relations-Nprime-cov",
    "forms-f-map",
    "forms-g-map",
    "forms-reduce-teich",
]


def criterion_6():
    """alpha kills sampled relation generators; f and g laws; reduction keeps alpha; 100 samples each."""
    t0 = time.perf_counter()
    configs = lambda sid: [(p, f, n, "laurent") for (p, f), ns in PAIRING_LEVELS.items() for n in ns]
    bad, checks = _run(FORMS_SUITES, configs, 100)
    return not bad, _detail(bad, checks, time.perf_counter() - t0)


def criterion_7():
    """[[1], t) = 1 mod p^n for p in {2, 3}; an order-4 pairing value at p = 2, n = 2."""
    wrong = []
    for p in (2, 3):
        K = rings.laurent(p)
        for n in _levels(p):
            v = asw_symbol(teichmuller(K.one(), n), K.gen())
            if v != SymbolValue(p, n, 1):
                wrong.append(f"[[1],t) = {v} at p={p} n={n}")
    K = rings.laurent(2)
    t = K.gen()
    a = teichmuller(K.monomial(1, -1), 2)
    v = pairing_n(a, teichmuller(t, 2))
    if v.order() != 4:
        wrong.append(f"((a, b)) = {v} has order {v.order()}, expected 4")
    if wrong:
        # identities are checked separately; a failure here alone points at normalization
        ident, _ = _run(["symbol-bilinear", "pairing-skew"], lambda sid: [(2, 1, 2, "laurent")], 20)
        kind = "normalization error (identity suites pass)" if not ident else "identity failure"
        return False, f"{kind}: " + "; ".join(wrong)
    return True, f"anchors hold; (([t^-1], [t])) at n = 2 is {v}, of order 4"


def criterion_8():
    """n = 1 symbol equals Tr Res(a db/b), 200 samples per field."""
    t0 = time.perf_counter()
    configs = lambda sid: [(p, f, 1, "laurent") for p, f in N1_FIELDS]
    bad, checks = _run(["symbol-residue-n1"], configs, 200)
    return not bad, _detail(bad, checks, time.perf_counter() - t0)


CRITERIA = [
    ("1 Witt ring suite", criterion_1),
    ("2 Artin-Schreier kernel and Z/p^n, exhaustive", criterion_2),
    ("3 symbol suite", criterion_3),
    ("4 [[b], b) vanishing", criterion_4),
    ("5 pairing suite", criterion_5),
    ("6 forms suite", criterion_6),
    ("7 non-degeneracy anchors", criterion_7),
    ("8 n = 1 residue oracle", criterion_8),
]


def _line(name, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {name}: {detail}"


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(name, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for name, fn in CRITERIA:
        ok, detail = fn()
        results.append(ok)
        print(_line(name, ok, detail), flush=True)
    sys.exit(0 if all(results) else 1)
