"""Command-line front end: Witt calculator, symbol and pairing evaluator, suite runner.

Exit codes: 0 success, 1 identity violation (witness printed), 2 usage,
precision or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import rings
from .config import BudgetExceeded, check_budget
from .covectors import Covector
from .forms import RELATION_KINDS, FormalTensor, alpha_eval, alpha_inf, cov_relation_check, mn_generators
from .polys import IntegralityError
from .rings import RingDescriptor, RingElement, RingError
from .sampling import Sampler
from .suites import SuiteSpec, UnknownSuite, catalog, run_suite
from .symbols import (
    PrecisionPolicy,
    RouteDisagreement,
    SymbolError,
    asw_symbol,
    pairing_inf,
    pairing_mn,
    pairing_n,
)
from .witt import (
    PrecisionError,
    WittError,
    WittVector,
    frobenius_W,
    ghost,
    teich_decompose,
    teichmuller,
    verschiebung,
    witt_add,
    witt_mul,
    witt_neg,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Violation(Exception):
    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _load(text: str, what: str):
    """Parse a JSON argument; ``@path`` reads the file."""
    if text is None:
        raise UsageError(f"missing --{what}")
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as exc:
            raise UsageError(f"--{what}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--{what}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _ring_from_flags(args) -> RingDescriptor:
    kind = args.ring
    if kind == "laurent":
        return rings.laurent(args.p, args.f)
    if kind == "field":
        return rings.finite_field(args.p, args.f)
    if kind == "integers":
        return rings.integers(args.p)
    raise UsageError(f"unknown ring {kind!r}")


def _witt(args, what: str) -> WittVector:
    obj = _load(getattr(args, what), what)
    if not isinstance(obj, dict) or "coords" not in obj:
        raise UsageError(f"--{what}: Witt vector JSON needs a coords list")
    obj = dict(obj)
    obj.setdefault("ring", _ring_from_flags(args).to_json())
    return WittVector.from_json(obj)


def _element(args, what: str, ring: RingDescriptor | None) -> RingElement:
    obj = _load(getattr(args, what), what)
    if isinstance(obj, dict) and "ring" in obj:
        return RingElement.from_json(obj)
    ring = ring or _ring_from_flags(args)
    if isinstance(obj, dict) and "coeffs" in obj:
        obj = obj["coeffs"]
    return ring(obj)


def _covector(args, what: str) -> Covector:
    obj = _load(getattr(args, what), what)
    if not isinstance(obj, dict) or "window" not in obj:
        raise UsageError(f"--{what}: covector JSON needs a window list")
    obj = dict(obj)
    obj.setdefault("ring", _ring_from_flags(args).to_json())
    return Covector.from_json(obj)


def _policy(args) -> PrecisionPolicy:
    return PrecisionPolicy(args.precision_slack, 3)


def _symbol_out(value, provenance: dict) -> dict:
    return {"value": value.value, "modulus": value.modulus, "provenance": provenance}


# -- witt ------------------------------------------------------------------------


def cmd_witt(args) -> int:
    op = args.op
    if op == "teich":
        x = _element(args, "x", None)
        check_budget(x.ring.p, args.n, x.ring.f)
        print(_dump(teichmuller(x, args.n).to_json()))
        return EXIT_OK
    a = _witt(args, "a")
    check_budget(a.p, a.n, a.ring.f)
    if op in ("add", "mul"):
        b = _witt(args, "b")
        out = (witt_add if op == "add" else witt_mul)(a, b)
        print(_dump(out.to_json()))
    elif op == "neg":
        print(_dump(witt_neg(a).to_json()))
    elif op == "frob":
        print(_dump(frobenius_W(a, args.k).to_json()))
    elif op == "versch":
        if args.target is None:
            raise UsageError("versch needs --target ext (W_n -> W_(n+1)) or --target trunc (W_n -> W_n)")
        m = a.n + 1 if args.target == "ext" else a.n
        for _ in range(args.k):
            a = verschiebung(a, m)
            m = a.n + 1 if args.target == "ext" else a.n
        print(_dump(a.to_json()))
    elif op == "ghost":
        g = ghost(a)
        print(_dump({"ring": a.ring.to_json(), "ghost": [e.to_json()["coeffs"] for e in g.entries]}))
    elif op == "decompose":
        xs = teich_decompose(a)
        print(_dump({"ring": a.ring.to_json(), "teich": [x.to_json()["coeffs"] for x in xs]}))
    return EXIT_OK


# -- symbols and pairings ------------------------------------------------------------


def cmd_symbol(args) -> int:
    prov: dict = {}
    if args.op == "asw":
        a = _witt(args, "a")
        b = _element(args, "b", a.ring)
        v = asw_symbol(a, b, policy=_policy(args), provenance=prov)
    elif args.op == "asw-inf":
        x = _covector(args, "x")
        b = _element(args, "b", x.ring)
        if x.is_zero():
            print(_dump(_symbol_out(pairing_inf(x, x), {"method": "zero"})))
            return EXIT_OK
        v = asw_symbol(x.lift(x.length), b, policy=_policy(args), provenance=prov)
        prov["window"] = x.length
    else:
        return cmd_pairing(argparse.Namespace(**{**vars(args), "op": "mn"}))
    print(_dump(_symbol_out(v, prov)))
    return EXIT_OK


def cmd_pairing(args) -> int:
    prov: dict = {}
    if args.op == "inf":
        x, y = _covector(args, "a"), _covector(args, "b")
        v = pairing_inf(x, y, pad=args.pad, policy=_policy(args))
        prov = {"method": "common-level", "pad": args.pad}
    else:
        a, b = _witt(args, "a"), _witt(args, "b")
        if args.op == "n":
            if a.n != b.n:
                raise UsageError("pairing n needs equal lengths; use pairing mn")
            v = pairing_n(a, b, _policy(args))
            prov = {"method": "teichmueller-sum", "level": a.n}
        else:
            try:
                v = pairing_mn(a, b, _policy(args), provenance=prov)
            except RouteDisagreement as exc:
                raise Violation(str(exc), {"a": a.to_json(), "b": b.to_json()}) from exc
    print(_dump(_symbol_out(v, prov)))
    return EXIT_OK


# -- forms ------------------------------------------------------------------------------


def cmd_forms(args) -> int:
    if args.op == "eval":
        obj = _load(args.tensor, "tensor")
        if not isinstance(obj, dict):
            raise UsageError("--tensor: expected a JSON object")
        obj = dict(obj)
        obj.setdefault("ring", _ring_from_flags(args).to_json())
        obj.setdefault("n", args.n)
        x = FormalTensor.from_json(obj)
        check_budget(x.ring.p, x.n, x.ring.f)
        v = alpha_eval(x, _policy(args))
        print(_dump(_symbol_out(v, {"method": "alpha", "terms": len(x.terms)})))
        return EXIT_OK
    kind = args.relation
    if kind not in RELATION_KINDS:
        raise UsageError(f"unknown relation {kind!r}; choose from {', '.join(RELATION_KINDS)}")
    ring = _ring_from_flags(args)
    check_budget(ring.p, args.n, ring.f)
    sampler = Sampler(ring, args.seed)
    policy = _policy(args)
    if kind.endswith("_cov"):
        report = cov_relation_check(kind, sampler, args.samples, args.n, policy)
    else:
        failures = []
        for i, g in enumerate(mn_generators(kind, sampler, args.n, args.samples)):
            v = alpha_eval(g, policy)
            if not v.is_zero():
                failures.append({"index": i, "value": repr(v), "tensor": g.to_json()})
        report = {"kind": kind, "samples": args.samples, "failures": failures}
    print(_dump(report))
    return EXIT_VIOLATION if report["failures"] else EXIT_OK


# -- suites -------------------------------------------------------------------------------


def cmd_suite(args) -> int:
    if args.op == "list":
        rows = [{"id": s.id, "group": s.group, "description": s.description} for s in catalog()]
        if args.json:
            print(_dump(rows))
        else:
            for r in rows:
                print(f"{r['id']:34s} {r['description']}")
        return EXIT_OK
    name = args.name or args.suite_name
    if not name:
        raise UsageError("suite run needs a suite id")
    spec = SuiteSpec(
        suite=name, p=args.p, f=args.f, n=args.n, m=args.m,
        samples=args.samples, seed=args.seed, ring=args.ring, slack=args.precision_slack,
    )
    try:
        report = run_suite(spec)
    except UnknownSuite as exc:
        raise UsageError(f"unknown suite {name!r}; see `suite list`") from exc
    if args.json:
        print(report.dumps())
    else:
        status = "PASS" if report.passed else "FAIL"
        print(f"{status} {report.suite} p={spec.p} f={spec.f} n={spec.n} samples={report.samples_run} "
              f"checks={report.checks} failures={len(report.failures)} time={report.wall_time:.3f}s")
        for key, val in sorted(report.values.items()):
            print(f"  {key}: {_dump(val)}")
        for fail in report.failures:
            print("  witness: " + _dump(fail))
    return EXIT_OK if report.passed else EXIT_VIOLATION


# -- parser ---------------------------------------------------------------------------------


def _globals(parser: argparse.ArgumentParser, top: bool):
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--p", type=int, default=d(2), help="the prime")
    parser.add_argument("--f", type=int, default=d(1), help="residue field degree")
    parser.add_argument("--n", type=int, default=d(2), help="Witt length")
    parser.add_argument("--m", type=int, default=d(None), help="second Witt length")
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--samples", type=int, default=d(100))
    parser.add_argument("--json", action="store_true", default=d(False))
    parser.add_argument("--precision-slack", type=int, default=d(None), dest="precision_slack")
    parser.add_argument("--ring", choices=("laurent", "field", "integers"), default=d("laurent"),
                        help="ambient ring for bare coordinates")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="wittsym", description=__doc__.splitlines()[0])
    _globals(top, True)
    sub = top.add_subparsers(dest="command", required=True)

    def leaf(parent, name, **kw):
        p = parent.add_parser(name, **kw)
        _globals(p, False)
        return p

    w = sub.add_parser("witt", help="Witt vector arithmetic")
    wsub = w.add_subparsers(dest="op", required=True)
    for op in ("add", "mul", "neg", "frob", "versch", "ghost", "decompose"):
        p = leaf(wsub, op)
        p.add_argument("--a", required=True, help="Witt vector JSON or @file")
        if op in ("add", "mul"):
            p.add_argument("--b", required=True)
        if op in ("frob", "versch"):
            p.add_argument("--k", type=int, default=1)
        if op == "versch":
            p.add_argument("--target", choices=("ext", "trunc"))
    p = leaf(wsub, "teich")
    p.add_argument("--x", required=True, help="ring element JSON")
    w.set_defaults(handler=cmd_witt)

    s = sub.add_parser("symbol", help="the symbol [a, b)")
    ssub = s.add_subparsers(dest="op", required=True)
    p = leaf(ssub, "asw")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p = leaf(ssub, "asw-inf")
    p.add_argument("--x", required=True, help="covector JSON")
    p.add_argument("--b", required=True)
    p = leaf(ssub, "pair", help="same as `pairing mn`")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--pad", type=int, default=0)
    s.set_defaults(handler=cmd_symbol)

    pr = sub.add_parser("pairing", help="the pairings ((a, b))")
    psub = pr.add_subparsers(dest="op", required=True)
    for op in ("n", "mn", "inf"):
        p = leaf(psub, op)
        p.add_argument("--a", required=True)
        p.add_argument("--b", required=True)
        p.add_argument("--pad", type=int, default=0)
    pr.set_defaults(handler=cmd_pairing)

    fo = sub.add_parser("forms", help="formal 1-forms and relation checks")
    fsub = fo.add_subparsers(dest="op", required=True)
    p = leaf(fsub, "eval")
    p.add_argument("--tensor", required=True)
    p = leaf(fsub, "check")
    p.add_argument("--relation", required=True)
    fo.set_defaults(handler=cmd_forms)

    su = sub.add_parser("suite", help="seeded property suites")
    susub = su.add_subparsers(dest="op", required=True)
    leaf(susub, "list")
    p = leaf(susub, "run")
    p.add_argument("suite_name", nargs="?")
    p.add_argument("--name")
    su.set_defaults(handler=cmd_suite)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.handler(args)
    except Violation as exc:
        print(_dump({"error": str(exc), "witness": exc.witness}))
        return EXIT_VIOLATION
    except (UsageError, BudgetExceeded, PrecisionError, IntegralityError, WittError, RingError,
            SymbolError, KeyError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
