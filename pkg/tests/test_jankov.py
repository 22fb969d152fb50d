import pytest

from charform.algebra import concat, homomorphism_search, in_sh, opremum
from charform.formula import (evaluate, is_valid, pretty, var, variables,
                              _flatten_and)
from charform.jankov import (NotGenerated, NotSI, characteristic_formula,
                             dejongh_formula, diagram_formula, jankov_formula,
                             term_for_element, terms_for_all)
from charform.presentation import diagram_presentation, zprime_presentation
from charform.rn import boolean, rn_algebra, trunc_zprime


def test_diagram_conjunct_count():
    for n in (2, 3, 4):
        a = rn_algebra(n)
        d, _ = diagram_formula(a)
        # each of the 3n^2 + n biconditionals expands to two implications
        assert len(_flatten_and(d)) == 2 * (3 * n * n + n)


def test_diagram_identity_valuation(si6):
    for a in si6:
        d, v = diagram_formula(a)
        assert evaluate(d, a, v) == a.top


def test_diagram_top_iff_homomorphism(all6):
    # a valuation satisfies the diagram exactly when it is a homomorphism
    for n in (2, 3):
        a = rn_algebra(n)
        d, _ = diagram_formula(a)
        for b in [x for x in all6 if x.size <= 4]:
            homs = {h.map for h in homomorphism_search(a, b)}
            import itertools
            for tup in itertools.product(range(b.size), repeat=n):
                val = evaluate(d, b, dict(enumerate(tup)))
                assert (val == b.top) == (tup in homs)


def test_jankov_self_refutation(si6):
    for a in si6:
        chi = jankov_formula(a)
        ok, w = is_valid(a, chi)
        assert not ok
        assert w == {i: i for i in range(a.size)}


def test_jankov_requires_si():
    with pytest.raises(NotSI):
        jankov_formula(boolean(2))


def test_jankov_iff_sub_hom_small(si6, all6):
    for a in [x for x in si6 if x.size <= 4]:
        chi = jankov_formula(a)
        for b in all6:
            assert (not is_valid(b, chi)[0]) == in_sh(a, b)[0]


def test_antichain_member_pair():
    a = concat(concat(rn_algebra(6), rn_algebra(2)), rn_algebra(2))
    b = concat(concat(rn_algebra(8), rn_algebra(2)), rn_algebra(2))
    from charform.formula import EngineLimits
    assert is_valid(b, jankov_formula(a), engine="propagate")[0]
    assert not in_sh(a, b)[0]


def test_term_for_element_examples():
    a = rn_algebra(3)
    g = a.element_by_label("g")
    assert term_for_element(a, [(0, g)], g) == var(0)
    # in the chain the negation is already bottom, one level earlier
    assert pretty(term_for_element(a, [(0, g)], a.bottom)) == "~p1"
    sq = boolean(2)
    atom = sq.join_irreducibles()[0]
    assert pretty(term_for_element(sq, [(0, atom)], sq.bottom)) == "p1 & ~p1"
    zp = trunc_zprime(12)
    gens = [(0, zp.element_by_label("a")), (1, zp.element_by_label("b"))]
    t = term_for_element(zp, gens, opremum(zp))
    assert pretty(t) == "p2 | (p2 -> p1)"
    assert evaluate(t, zp, dict(gens)) == opremum(zp)
    with pytest.raises(NotGenerated):
        # the second generator itself is outside the subalgebra of the first
        term_for_element(zp, gens[:1], zp.element_by_label("b"))


def test_terms_for_all_cover():
    a = rn_algebra(5)
    g = a.element_by_label("g")
    terms = terms_for_all(a, [(0, g)])
    assert set(terms) == set(range(a.size))
    for e, t in terms.items():
        assert evaluate(t, a, {0: g}) == e


def test_dejongh_variable_counts():
    assert len(variables(dejongh_formula(rn_algebra(3)))) == 1
    assert len(variables(jankov_formula(rn_algebra(3)))) == 3
    assert pretty(dejongh_formula(rn_algebra(2))) == "p1 & ~p1"


def test_dejongh_self_refutation(si6):
    for a in si6:
        assert not is_valid(a, dejongh_formula(a))[0]


def test_dejongh_jankov_same_models(si6, all8):
    for a in [x for x in si6 if x.size <= 5]:
        dj, ch = dejongh_formula(a), jankov_formula(a)
        for b in all8:
            assert is_valid(b, dj)[0] == is_valid(b, ch)[0], (a.size, b.size)


def test_characteristic_formula_of_diagram_is_jankov(si6, all6):
    for a in [x for x in si6 if x.size <= 4]:
        chi1 = characteristic_formula(diagram_presentation(a))
        chi2 = jankov_formula(a)
        assert chi1 == chi2


def test_characteristic_formula_zprime():
    p = zprime_presentation(10)
    chi = characteristic_formula(p)
    assert not evaluate(chi, p.target, p.valuation) == p.target.top
    # the antecedent is the presentation formula, the consequent the opremum term
    assert chi.kind == "imp" and chi.args[0] == p.formula


def test_characteristic_formula_needs_si():
    from charform.presentation import Presentation
    sq = boolean(2)
    with pytest.raises(NotSI):
        characteristic_formula(diagram_presentation(sq))


def test_golden_formulas():
    import hashlib
    import json
    import pathlib
    golden = json.loads((pathlib.Path(__file__).parent / "golden"
                         / "formulas.json").read_text(encoding="utf-8"))
    built = {
        "jankov_Z3": jankov_formula(rn_algebra(3)),
        "dejongh_Z3": dejongh_formula(rn_algebra(3)),
        "jankov_Z6_Z2_Z2": jankov_formula(
            concat(concat(rn_algebra(6), rn_algebra(2)), rn_algebra(2))),
        "dejongh_Z5": dejongh_formula(rn_algebra(5)),
    }
    for name, f in built.items():
        text = pretty(f)
        assert text == golden[name]["formula"], name
        assert hashlib.sha256(text.encode()).hexdigest() == golden[name]["sha256"]
