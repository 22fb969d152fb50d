import pytest
from hypothesis import given, settings, strategies as st

from charform.algebra import (Filter, NotALattice, NotResiduated, Poset,
                              SizeLimit, algebra_from_json, algebra_to_json,
                              canonical_key, concat, dense_elements,
                              enumerate_filters, generated_subalgebra,
                              homomorphism_search, in_sh, is_isomorphic,
                              is_si, make_algebra, opremum, principal_filter,
                              product, quotient, regular_elements,
                              subalgebra_closure, upset_algebra, _bits)
from charform.rn import chain, rn_algebra

Z2 = make_algebra([[1, 1], [0, 1]])
SQUARE = make_algebra([[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]])


def test_two_chain():
    assert Z2.neg == (1, 0)
    assert Z2.bottom == 0 and Z2.top == 1


def test_square_is_boolean():
    assert SQUARE.neg == (3, 2, 1, 0)
    assert SQUARE.meet[1][2] == 0 and SQUARE.join[1][2] == 3


def test_pentagon_not_residuated():
    n5 = [[1, 1, 1, 1, 1],
          [0, 1, 0, 1, 1],
          [0, 0, 1, 0, 1],
          [0, 0, 0, 1, 1],
          [0, 0, 0, 0, 1]]
    with pytest.raises(NotResiduated):
        make_algebra(n5)


def test_not_a_lattice():
    # two maximal elements with no join
    order = [[1, 1, 1], [0, 1, 0], [0, 0, 1]]
    with pytest.raises(NotALattice):
        make_algebra(order)


def test_upset_algebra_examples():
    assert upset_algebra(Poset([0b1])).size == 2
    anti = upset_algebra(Poset([0b01, 0b10]))
    assert anti.size == 4
    assert is_isomorphic(anti, SQUARE)[0]
    two_chain = upset_algebra(Poset.from_leq([[1, 1], [0, 1]]))
    assert two_chain.size == 3
    assert is_isomorphic(two_chain, chain(3))[0]


def test_product_examples():
    assert is_isomorphic(product(Z2, Z2), SQUARE)[0]
    one = rn_algebra(1)
    assert is_isomorphic(product(chain(3), one), chain(3))[0]
    p = product(chain(3), Z2)
    coatoms = [x for x in range(p.size)
               if x != p.top and p.up[x] == (1 << x) | (1 << p.top)]
    assert p.size == 6 and len(coatoms) == 2


def test_concat_examples():
    assert is_isomorphic(concat(Z2, Z2), chain(3))[0]
    a1 = concat(rn_algebra(7), Z2)
    assert a1.size == 8
    a, b, c = chain(3), SQUARE, rn_algebra(5)
    left = concat(concat(a, b), c)
    right = concat(a, concat(b, c))
    assert is_isomorphic(left, right)[0]


def test_concat_mixed_laws():
    a, b = SQUARE, chain(3)
    ab = concat(a, b)
    brest = range(a.size, ab.size)
    for x in range(a.size):
        if x == a.top:
            continue
        for y in brest:
            assert ab.meet[x][y] == x
            assert ab.join[x][y] == y
            assert ab.imp[x][y] == ab.top
            assert ab.imp[y][x] == x


def test_principal_filter():
    c3 = chain(3)
    assert principal_filter(c3, c3.top).members == 1 << c3.top
    assert principal_filter(c3, c3.bottom).members == (1 << 3) - 1
    g = 1
    assert set(_bits(principal_filter(c3, g).members)) == {1, 2}


def _brute_force_filters(a):
    out = []
    for mask in range(1 << a.size):
        if not (mask >> a.top) & 1:
            continue
        ok = True
        for x in _bits(mask):
            if a.up[x] & ~mask:
                ok = False
                break
            for y in _bits(mask):
                if not (mask >> a.meet[x][y]) & 1:
                    ok = False
                    break
        if ok:
            out.append(mask)
    return sorted(out)


@pytest.mark.parametrize("alg", [Z2, chain(3), SQUARE, rn_algebra(5), rn_algebra(6)])
def test_enumerate_filters_matches_brute_force(alg):
    got = [f.members for f in enumerate_filters(alg)]
    assert got == _brute_force_filters(alg)


def test_filter_counts():
    assert len(enumerate_filters(Z2)) == 2
    assert len(enumerate_filters(chain(3))) == 3
    assert len(enumerate_filters(SQUARE)) == 4


def test_filter_limit():
    with pytest.raises(SizeLimit):
        enumerate_filters(chain(10), limit=5)


def test_quotient_examples():
    q, h = quotient(SQUARE, principal_filter(SQUARE, SQUARE.top))
    assert q.size == SQUARE.size and is_isomorphic(q, SQUARE)[0]
    q2, _ = quotient(SQUARE, principal_filter(SQUARE, SQUARE.bottom))
    assert q2.size == 1
    # representative is the least index of the class
    c3 = chain(3)
    q3, h3 = quotient(c3, principal_filter(c3, 1))
    assert h3.map == (0, 1, 1)


def test_concat_quotient_isomorphism(all6):
    # (A+B)/nabla' iso A + B/nabla for every filter of B
    algs = [a for a in all6 if a.size <= 5]
    for a in algs:
        for b in algs:
            ab = concat(a, b)
            brest = [x for x in range(b.size) if x != b.bottom]
            bmap = {b.bottom: a.top}
            for r, x in enumerate(brest):
                bmap[x] = a.size + r
            for f in enumerate_filters(b):
                members = 0
                for e in _bits(f.members):
                    members |= 1 << bmap[e]
                lhs, _ = quotient(ab, Filter(ab, members))
                rq, _ = quotient(b, f)
                assert is_isomorphic(lhs, concat(a, rq))[0]


def test_generated_subalgebra_examples():
    s, sub = generated_subalgebra(SQUARE, {SQUARE.bottom})
    assert s == {SQUARE.bottom, SQUARE.top}
    s2, sub2 = generated_subalgebra(SQUARE, {1})
    assert len(s2) == 4


def test_generated_subalgebra_closure_operator(all6):
    for a in all6:
        for g1 in range(min(a.size, 3)):
            c1 = subalgebra_closure(a, {g1})
            assert {g1, a.bottom, a.top} <= c1                      # extensive
            assert subalgebra_closure(a, c1) == c1                  # idempotent
            for g2 in range(min(a.size, 3)):
                c2 = subalgebra_closure(a, {g1, g2})
                assert c1 <= c2                                     # monotone


def test_homomorphism_search_examples():
    b = rn_algebra(5)
    hs = homomorphism_search(Z2, b)
    assert len(hs) == 1 and hs[0].map == (b.bottom, b.top)
    assert hs[0].is_embedding
    assert homomorphism_search(chain(3), SQUARE, injective=True) == []
    c4 = chain(4)
    hs2 = homomorphism_search(chain(3), c4, injective=True)
    assert hs2 and all(h.is_embedding for h in hs2)
    # maps come out in lexicographic order
    assert [h.map for h in hs2] == sorted(h.map for h in hs2)


def test_homomorphism_search_partial():
    c4 = chain(4)
    pinned = homomorphism_search(chain(3), c4, partial={1: 2}, injective=True)
    assert all(h.map[1] == 2 for h in pinned)
    assert len(pinned) < len(homomorphism_search(chain(3), c4, injective=True)) + 1


def test_injective_is_a_filter_of_all(si6):
    for a in [Z2, chain(3)]:
        for b in si6[:5]:
            every = homomorphism_search(a, b)
            inj = homomorphism_search(a, b, injective=True)
            assert [h.map for h in inj] == [h.map for h in every if h.is_embedding]


def test_in_sh_examples():
    ok, wit = in_sh(chain(3), chain(3))
    assert ok and wit[1].is_embedding
    for b in [chain(3), SQUARE, rn_algebra(6)]:
        assert in_sh(Z2, b)[0]
    a = concat(concat(rn_algebra(6), Z2), Z2)
    b = concat(concat(rn_algebra(8), Z2), Z2)
    assert not in_sh(a, b)[0]
    assert not in_sh(b, a)[0]


def test_in_sh_quasi_order(all6):
    small = [a for a in all6 if a.size <= 4]
    for a in small:
        assert in_sh(a, a)[0]
    for a in small:
        for b in small:
            for c in small:
                if in_sh(a, b)[0] and in_sh(b, c)[0]:
                    assert in_sh(a, c)[0]


def test_si_and_opremum():
    assert is_si(Z2) and opremum(Z2) == Z2.bottom
    assert not is_si(SQUARE) and opremum(SQUARE) is None
    zp = concat(product(rn_algebra(8), Z2), Z2)
    assert is_si(zp)
    assert zp.label(opremum(zp)) == "⟨1,1⟩"


def test_dense_regular():
    assert set(dense_elements(Z2).elements()) == {1}
    assert regular_elements(Z2) == (0, 1)
    c3 = chain(3)
    assert set(dense_elements(c3).elements()) == {1, 2}
    assert regular_elements(c3) == (0, 2)


def test_quotient_by_dense_is_boolean(corpus10):
    for a in corpus10:
        q, _ = quotient(a, dense_elements(a))
        for x in range(q.size):
            assert q.join[x][q.neg[x]] == q.top


def test_is_isomorphic_examples():
    assert is_isomorphic(SQUARE, SQUARE)[0]
    assert is_isomorphic(concat(Z2, Z2), rn_algebra(3))[0]
    assert not is_isomorphic(product(chain(3), Z2), chain(6))[0]


def test_canonical_key_invariance(all6):
    keys = [canonical_key(a) for a in all6]
    assert len(set(keys)) == len(keys)


def test_json_round_trip(corpus10):
    for a in corpus10[:20]:
        b = algebra_from_json(algebra_to_json(a))
        assert is_isomorphic(a, b)[0]
        assert canonical_key(a) == canonical_key(b)


@st.composite
def posets(draw, max_points=5):
    n = draw(st.integers(min_value=1, max_value=max_points))
    rel = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rel[i][j] = draw(st.booleans())
    # transitive closure of a strict upper-triangular relation
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if rel[i][k] and rel[k][j]:
                    rel[i][j] = True
    up = []
    for i in range(n):
        mask = 1 << i
        for j in range(n):
            if rel[i][j]:
                mask |= 1 << j
        up.append(mask)
    return Poset(up)


@settings(max_examples=60, deadline=None)
@given(posets())
def test_upset_algebra_residuation(p):
    a = upset_algebra(p)
    for x in range(a.size):
        for y in range(a.size):
            r = a.imp[x][y]
            for c in range(a.size):
                assert a.leq(c, r) == a.leq(a.meet[x][c], y)


@settings(max_examples=60, deadline=None)
@given(posets())
def test_upset_algebra_distributive(p):
    a = upset_algebra(p)
    for x in range(a.size):
        for y in range(a.size):
            for z in range(a.size):
                assert (a.meet[x][a.join[y][z]]
                        == a.join[a.meet[x][y]][a.meet[x][z]])
