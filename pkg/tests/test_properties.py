from hypothesis import given, settings
from hypothesis import strategies as st

from wittsym import rings
from wittsym.witt import WittVector, from_ghost, ghost, int_to_witt, witt_to_int

PN = st.sampled_from([(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2)])


def vec(p, coords):
    Z = rings.integers(p)
    return WittVector(p, len(coords), Z, tuple(Z(c) for c in coords))


@settings(max_examples=60, deadline=None)
@given(PN, st.data())
def test_ghost_is_a_ring_morphism(pn, data):
    p, n = pn
    xs = data.draw(st.lists(st.integers(-50, 50), min_size=n, max_size=n))
    ys = data.draw(st.lists(st.integers(-50, 50), min_size=n, max_size=n))
    a, b = vec(p, xs), vec(p, ys)
    ga, gb = ghost(a).entries, ghost(b).entries
    assert ghost(a + b).entries == tuple(x + y for x, y in zip(ga, gb))
    assert ghost(a * b).entries == tuple(x * y for x, y in zip(ga, gb))
    assert from_ghost(ghost(a)) == a


@settings(max_examples=60, deadline=None)
@given(PN, st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_integer_conversion_is_additive(pn, m, k):
    p, n = pn
    assert witt_to_int(int_to_witt(m, p, n) + int_to_witt(k, p, n)) == (m + k) % p**n
    assert witt_to_int(int_to_witt(m, p, n) * int_to_witt(k, p, n)) == (m * k) % p**n
