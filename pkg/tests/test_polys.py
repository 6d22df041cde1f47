import threading

import pytest

from wittsym.config import BudgetExceeded, budget_pairs, max_n
from wittsym.polys import IntegralityError, check_ghost_identities, ghost_solve, universal_polys, var


def test_p2_n2_addition_and_multiplication():
    u = universal_polys(2, 2)
    # variables X0, X1, Y0, Y1
    assert u.S[0] == {(1, 0, 0, 0): 1, (0, 0, 1, 0): 1}
    assert u.P[0] == {(1, 0, 1, 0): 1}
    assert u.S[1] == {(0, 1, 0, 0): 1, (0, 0, 0, 1): 1, (1, 0, 1, 0): -1}
    assert u.P[1] == {(2, 0, 0, 1): 1, (0, 1, 2, 0): 1, (0, 1, 0, 1): 2}


@pytest.mark.parametrize("p", [2, 3, 5])
def test_first_coordinates_any_p(p):
    u = universal_polys(p, 1)
    assert u.S[0] == {(1, 0): 1, (0, 1): 1}
    assert u.P[0] == {(1, 1): 1}


def test_frozen_term_counts_p2_n4():
    counts = universal_polys(2, 4).term_counts()
    assert counts == {"S": [2, 3, 8, 40], "P": [1, 3, 9, 51], "Neg": [1, 2, 4, 10], "Fr": [2, 3, 8, 29]}


@pytest.mark.parametrize("p,n", budget_pairs())
def test_ghost_identities_hold(p, n):
    check_ghost_identities(universal_polys(p, n))


def test_budget_enforced():
    with pytest.raises(BudgetExceeded):
        universal_polys(2, max_n(2) + 1)
    with pytest.raises(BudgetExceeded):
        universal_polys(7, 1)


def test_non_integral_ghost_target():
    # ghost vector (0, X0) cannot come from an integral Witt vector
    with pytest.raises(IntegralityError) as exc:
        ghost_solve(2, [{}, var(0, 1)], 1)
    assert exc.value.index == 1


def test_concurrent_generation_is_idempotent():
    out = []
    threads = [threading.Thread(target=lambda: out.append(universal_polys(3, 2))) for _ in range(6)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert all(u == out[0] for u in out)
