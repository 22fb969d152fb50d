import pytest

from charform.algebra import (concat, generated_subalgebra, is_isomorphic,
                              is_si, product, subalgebra_closure)
from charform.catalog import all_algebras
from charform.rn import (TruncationTooSmall, boolean, chain, rn_algebra,
                         trunc, trunc_zprime, universal_frame)


def test_frame_grows_two_per_round():
    for rounds in (2, 4, 7):
        frame, p_point = universal_frame(rounds)
        assert frame.size == 2 * rounds
        assert p_point == 0


def test_small_ladder_quotients():
    assert rn_algebra(1).size == 1
    z2 = rn_algebra(2)
    assert z2.size == 2 and z2.neg == (1, 0)
    z3 = rn_algebra(3)
    assert z3.labels == ("0", "g", "1")
    g = 1
    assert z3.neg[g] == z3.bottom
    assert is_isomorphic(rn_algebra(4), boolean(2))[0]
    assert is_isomorphic(rn_algebra(5), concat(boolean(2), chain(2)))[0]
    assert is_isomorphic(rn_algebra(6), product(chain(3), chain(2)))[0]


@pytest.mark.parametrize("n", range(2, 13))
def test_one_generated_with_n_elements(n):
    a = rn_algebra(n)
    assert a.size == n
    gens = [x for x in range(a.size)
            if len(subalgebra_closure(a, {x})) == a.size]
    assert gens, f"Z({n}) lost its generator"


@pytest.mark.parametrize("n", range(2, 7))
def test_uniqueness_by_enumeration(n):
    # the n-element one-generated algebra is unique up to iso for n <= 6
    hits = []
    for a in all_algebras(6):
        if a.size != n:
            continue
        if any(len(subalgebra_closure(a, {x})) == n for x in range(n)):
            hits.append(a)
    assert len(hits) == 1
    assert is_isomorphic(hits[0], rn_algebra(n))[0]


def test_ladder_covering_pattern_first_eight():
    # the covering pattern of the bottom of the ladder, by label
    a = rn_algebra(12)
    first = {"0", "g", "r2", "r1", "t", "z5", "z6", "z7"}
    got = {(a.label(i), a.label(j)) for i, j in a.covers()
           if a.label(i) in first and a.label(j) in first}
    assert got == {("0", "g"), ("0", "r2"), ("g", "r1"), ("g", "t"),
                   ("r2", "t"), ("t", "z5"), ("t", "z6"), ("r1", "z6"),
                   ("z6", "z7")}


def test_trunc_builtins():
    assert trunc("Zinf", 9).size == 9
    zp = trunc("Zprime", 8)
    assert zp.size == 17 and is_si(zp)
    assert trunc("Zstar", 6).size == 17
    assert trunc("KG", 6).size == 13
    with pytest.raises(KeyError):
        trunc("nope", 5)
    with pytest.raises(TruncationTooSmall):
        trunc_zprime(4)


def test_zprime_generators_and_negations():
    zp = trunc_zprime(10)
    a = zp.element_by_label("a")
    b = zp.element_by_label("b")
    assert zp.label(zp.neg[a]) == "⟨r2,1⟩"
    assert zp.label(zp.neg[b]) == "⟨1,0⟩"
    closed, _ = generated_subalgebra(zp, {a, b})
    assert len(closed) == zp.size


def test_truncation_stability_of_shapes():
    # consecutive truncations agree on the bottom of the ladder
    a, b = rn_algebra(10), rn_algebra(12)
    la = {(a.label(i), a.label(j)) for i, j in a.covers()
          if not (a.label(i) == "1" or a.label(j) == "1")
          and not (a.label(i).startswith("z") and int(a.label(i)[1:]) > 8)
          and not (a.label(j).startswith("z") and int(a.label(j)[1:]) > 8)}
    lb = {(b.label(i), b.label(j)) for i, j in b.covers()
          if not (b.label(i) == "1" or b.label(j) == "1")
          and not (b.label(i).startswith("z") and int(b.label(i)[1:]) > 8)
          and not (b.label(j).startswith("z") and int(b.label(j)[1:]) > 8)}
    assert la == lb
