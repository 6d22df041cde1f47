"""Packaged configuration: the (p, n, f) budget and the witness space."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources


class BudgetExceeded(ValueError):
    """The requested (p, n, f) lies outside the configured budget."""


@lru_cache(maxsize=None)
def budget() -> dict:
    with resources.files("wittsym").joinpath("data/budget.json").open() as fh:
        raw = json.load(fh)
    return {"max_n": {int(k): int(v) for k, v in raw["max_n"].items()}, "max_f": int(raw["max_f"])}


def max_n(p: int) -> int:
    return budget()["max_n"].get(p, 0)


def budget_pairs() -> list[tuple[int, int]]:
    return [(p, n) for p, top in sorted(budget()["max_n"].items()) for n in range(1, top + 1)]


def check_budget(p: int, n: int, f: int = 1) -> None:
    if n < 1:
        raise BudgetExceeded(f"length n={n} must be >= 1")
    top = max_n(p)
    if n > top:
        raise BudgetExceeded(f"p={p}, n={n} exceeds the budget (max n={top} for p={p})")
    if f > budget()["max_f"]:
        raise BudgetExceeded(f"f={f} exceeds the budget (max f={budget()['max_f']})")
