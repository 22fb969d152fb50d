"""Finite presentations and their desk-scale verification.

A presentation claims that a formula plus a valuation defines its target
algebra over a variety.  `check_defines` tests the homomorphism-extension
criterion against every s.i. member of a finite corpus of the variety and
returns an explicit refutation or a verified-up-to-bound verdict, never an
unconditional yes.
"""

from __future__ import annotations

from dataclasses import dataclass
import json

from .algebra import (HeytingAlgebra, canonical_key, enumerate_filters,
                      induced_subalgebra, is_si, principal_filter, quotient,
                      subalgebra_closure, _bits)
from .formula import (Formula, HeytingCarrier, and_, conj, evaluate,
                      enumerate_top_valuations, iff, imp, is_valid, parse,
                      pretty, variables)
from .jankov import diagram_formula
from .rn import TruncationTooSmall, trunc_zprime


class VariableClash(ValueError):
    pass


class BadAnchor(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    """A formula, a valuation into the target, and the claim that the pair
    defines the target over the variety."""

    formula: Formula
    target: HeytingAlgebra
    valuation: dict
    variety: "VarietyHandle | None" = None
    name: str = ""

    def __post_init__(self):
        val = evaluate(self.formula, self.target, self.valuation)
        if val != self.target.top:
            raise ValueError("presentation formula is not top at its valuation")
        gens = set(self.valuation.values())
        if len(subalgebra_closure(self.target, gens)) != self.target.size:
            raise ValueError("valuation image does not generate the target")


def diagram_presentation(algebra, variety=None, name=""):
    """The trivial presentation: diagram formula with identity valuation."""
    d, val = diagram_formula(algebra)
    return Presentation(d, algebra, val, variety, name or "diagram")


# -- varieties ---------------------------------------------------------------


@dataclass(frozen=True)
class VarietyHandle:
    """A variety given by generator algebras, by axioms, or all of Heyt.

    Corpus membership evidence is one of:
      ("sh", generator index, filter generator element, subalgebra carrier)
      ("axiom",) for axiom-checked handles.
    """

    generators: tuple = ()
    axioms: tuple = ()
    bound: int = 8
    name: str = ""

    @classmethod
    def heyting(cls, bound=8):
        return cls((), (), bound, "Heyt")

    @classmethod
    def generated(cls, generators, bound=8, name=""):
        return cls(tuple(generators), (), bound, name)

    @classmethod
    def axiomatic(cls, axioms, bound=8, name=""):
        return cls((), tuple(axioms), bound, name)


def build_corpus(handle, size_bound=None, with_evidence=False):
    """All s.i. algebras of the variety up to the bound, up to isomorphism.

    For generated varieties these are the s.i. algebras among subalgebras of
    quotients of the generators (which exhausts the s.i. members of the
    variety at this size).  Deterministic order by (size, canonical form).
    """
    bound = size_bound or handle.bound
    found = {}
    if handle.generators:
        for gi, g in enumerate(handle.generators):
            for filt in enumerate_filters(g, limit=max(g.size, 20)):
                q, _ = quotient(g, filt)
                for carrier in _bounded_subalgebras(q, bound):
                    _, sub = induced_subalgebra(q, carrier)
                    if not is_si(sub):
                        continue
                    key = canonical_key(sub)
                    if key not in found:
                        gen_elt = min(_bits(filt.members),
                                      key=lambda x: g.down[x].bit_count())
                        found[key] = (sub, ("sh", gi, gen_elt, carrier))
    else:
        from .catalog import all_algebras
        for a in all_algebras(bound):
            if not is_si(a):
                continue
            if all(is_valid(a, ax)[0] for ax in handle.axioms):
                found[canonical_key(a)] = (a, ("axiom",))
    ordered = sorted(found.items(), key=lambda kv: (kv[1][0].size, kv[0]))
    if with_evidence:
        return [(a, ev) for _, (a, ev) in ordered]
    return [a for _, (a, ev) in ordered]


def _bounded_subalgebras(a, bound):
    """All op-closed carriers of size <= bound, each as a frozenset."""
    base = subalgebra_closure(a, set())
    if len(base) > bound:
        return []
    done = set()
    out = []
    frontier = [frozenset(base)]
    while frontier:
        nxt = []
        for carrier in frontier:
            if carrier in done:
                continue
            done.add(carrier)
            if len(carrier) <= bound:
                out.append(carrier)
            else:
                continue
            for x in range(a.size):
                if x in carrier:
                    continue
                bigger = subalgebra_closure(a, carrier | {x})
                if len(bigger) <= bound and frozenset(bigger) not in done:
                    nxt.append(frozenset(bigger))
        frontier = nxt
    return sorted(out, key=lambda c: (len(c), sorted(c)))


# -- the extension criterion -------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    """check_defines outcome; never a bare boolean."""

    kind: str  # "refuted" | "verified-up-to-bound"
    bound: int = 0
    witness_algebra: HeytingAlgebra | None = None
    witness_tuple: tuple = ()

    @property
    def refuted(self):
        return self.kind == "refuted"

    def __str__(self):
        if self.refuted:
            return f"REFUTED(tuple={self.witness_tuple})"
        return f"VERIFIED-UP-TO-BOUND({self.bound})"


def extends_to_homomorphism(source, target, pairs):
    """Does generator(i) -> image(i) extend to a homomorphism?

    pairs is a sequence of (source element, target element).  Closure over
    the operations with conflict detection; total because the sources
    generate.
    """
    images = {source.bottom: target.bottom, source.top: target.top}
    for x, y in pairs:
        if images.get(x, y) != y:
            return False
        images[x] = y
    frontier = list(images)
    while frontier:
        new = []
        items = list(images)
        for x in frontier:
            for y in items:
                for ts, tt in ((source.meet, target.meet),
                               (source.join, target.join),
                               (source.imp, target.imp)):
                    for (p, q) in ((x, y), (y, x)):
                        z = ts[p][q]
                        w = tt[images[p]][images[q]]
                        got = images.get(z)
                        if got is None:
                            images[z] = w
                            new.append(z)
                        elif got != w:
                            return False
        frontier = new
    return len(images) == source.size


def check_defines(presentation, corpus=None, size_bound=None):
    """Homomorphism-extension check of a presentation over a corpus.

    For every corpus algebra B and every tuple b with A(b) = top, the map
    generator_i -> b_i must extend to a homomorphism; the first failure is
    returned as a refutation.
    """
    if corpus is None:
        if presentation.variety is None:
            raise ValueError("no corpus and no variety handle")
        corpus = build_corpus(presentation.variety, size_bound)
    vars_ = sorted(presentation.valuation)
    gens = [presentation.valuation[v] for v in vars_]
    bound = max((b.size for b in corpus), default=0)
    for b in corpus:
        carrier = HeytingCarrier(b)
        for tup in enumerate_top_valuations(carrier, presentation.formula, vars_):
            if not extends_to_homomorphism(presentation.target, b,
                                           list(zip(gens, tup))):
                return Verdict("refuted", bound, b, tup)
    return Verdict("verified-up-to-bound", bound)


# -- concatenation presentations ----------------------------------------------


def _coatom(a):
    cands = [x for x in range(a.size)
             if a.up[x] == (1 << x) | (1 << a.top) and x != a.top]
    if len(cands) != 1:
        raise BadAnchor("target has no unique coatom")
    return cands[0]


def _atom(a):
    cands = [x for x in range(a.size)
             if a.down[x] == (1 << x) | (1 << a.bottom) and x != a.bottom]
    if len(cands) != 1:
        raise BadAnchor("target has no unique atom")
    return cands[0]


def concat_defining_formula(pa, pb, a_term, b_term, variety=None):
    """Presentation of A' + B' from presentations of A'+Z2 and Z2+B'.

    a_term must name the coatom of pa.target (the top of A'), b_term the
    atom of pb.target (the bottom of B'); the defining formula is
    A & B & (a_term <-> b_term) under the merged valuation.
    """
    vars_a = set(variables(pa.formula)) | set(pa.valuation)
    vars_b = set(variables(pb.formula)) | set(pb.valuation)
    if vars_a & vars_b:
        raise VariableClash(f"shared variables {sorted(vars_a & vars_b)}")
    ta, tb = pa.target, pb.target
    coat, at = _coatom(ta), _atom(tb)
    if evaluate(a_term, ta, pa.valuation) != coat:
        raise BadAnchor("a_term does not evaluate to the coatom")
    if evaluate(b_term, tb, pb.valuation) != at:
        raise BadAnchor("b_term does not evaluate to the atom")
    # A' as the quotient collapsing the top pair of A; B' as the up-set of
    # the atom of B
    aprime, asurj = quotient(ta, principal_filter(ta, coat))
    bcarrier = [x for x in range(tb.size) if tb.leq(at, x)]
    belems, bprime = induced_subalgebra(tb, bcarrier)
    from .algebra import concat
    target = concat(aprime, bprime)
    # indices: a-part keeps aprime's indices, b-part follows in order
    bpos = {x: i for i, x in enumerate(belems)}
    brest = [x for x in range(bprime.size) if x != bprime.bottom]
    bmap = {bprime.bottom: aprime.top}
    for r, x in enumerate(brest):
        bmap[x] = aprime.size + r
    # merge along the two natural embeddings: A'+Z2 maps its top to the new
    # top, Z2+B' maps its bottom to the new bottom
    valuation = {}
    for v, e in pa.valuation.items():
        valuation[v] = bmap[bprime.top] if e == ta.top else asurj.map[e]
    for v, e in pb.valuation.items():
        valuation[v] = target.bottom if e == tb.bottom else bmap[bpos[e]]
    formula = and_(and_(pa.formula, pb.formula), iff(a_term, b_term))
    return Presentation(formula, target, valuation, variety,
                        name=f"concat({pa.name},{pb.name})")


# -- the flagship ladder presentation -----------------------------------------


def zprime_presentation(k, variety=None):
    """The two-generator presentation of the ladder-times-two-plus-top.

    Formula (expanded form): ~(p&q) & (~~q -> q) & ((~~p -> p) -> q | ~q)
    & (((~~p -> p) -> p | ~p) -> q | ~q), with p at a = <g,0> and q at
    b = <0,1>.
    """
    if k < 6:
        raise TruncationTooSmall("zprime presentation needs k >= 6")
    target = trunc_zprime(k)
    formula = conj(zprime_conjuncts())
    valuation = {0: target.element_by_label("a"),
                 1: target.element_by_label("b")}
    return Presentation(formula, target, valuation, variety, name=f"zprime({k})")


def zprime_conjuncts():
    """The four conjuncts of the expanded presentation formula."""
    return [
        parse("~(p1 & p2)"),
        parse("~~p2 -> p2"),
        parse("(~~p1 -> p1) -> p2 | ~p2"),
        parse("((~~p1 -> p1) -> p1 | ~p1) -> p2 | ~p2"),
    ]


# -- exhaustive lemma shadows over shallow formulas ----------------------------


def lemma_shadow_exhaustive(max_depth=3, trunc_k=12, corpus_bound=8):
    """Check the three lemma shadows for EVERY 2-variable formula of bounded
    depth, exhaustively.

    The lemmas interrogate a formula only through its values at finitely many
    evaluation points (the generator pair of the ladder presentation, the
    per-algebra substitution column, the three Boolean corners, and the
    complemented satisfying pairs), so formulas with equal value profiles are
    indistinguishable; the check enumerates profiles compositionally, which
    covers all ~1.85e6 depth-3 syntax trees at once.  Returns (tree count,
    distinct profile count, failure count).
    """
    import numpy as np
    from .catalog import all_algebras

    p = zprime_presentation(trunc_k)
    corpus = all_algebras(corpus_bound)
    algebras = [p.target] + list(corpus)
    flat_and, flat_or, flat_imp, flat_neg = [], [], [], []
    starts, neg_starts = [], []
    for a in algebras:
        starts.append(len(flat_and))
        neg_starts.append(len(flat_neg))
        n = a.size
        flat_and += [a.meet[i][j] for i in range(n) for j in range(n)]
        flat_or += [a.join[i][j] for i in range(n) for j in range(n)]
        flat_imp += [a.imp[i][j] for i in range(n) for j in range(n)]
        flat_neg += list(a.neg)

    # evaluation points: (algebra index, value of p, value of q, must-be-top)
    points = [(0, p.valuation[0], p.valuation[1], False)]
    for ai, c in enumerate(corpus, start=1):
        for x in range(c.size):
            points.append((ai, x, c.bottom, True))
        for x, y in ((c.bottom, c.bottom), (c.bottom, c.top), (c.top, c.bottom)):
            points.append((ai, x, y, True))
        if is_si(c):
            for x in range(c.size):
                for y in range(c.size):
                    if (evaluate(p.formula, c, {0: x, 1: y}) == c.top
                            and c.join[y][c.neg[y]] == c.top):
                        points.append((ai, x, y, True))

    base = np.asarray([starts[ai] for ai, *_ in points], dtype=np.int64)
    nbase = np.asarray([neg_starts[ai] for ai, *_ in points], dtype=np.int64)
    stride = np.asarray([algebras[ai].size for ai, *_ in points], dtype=np.int64)
    tops = np.asarray([algebras[ai].top for ai, *_ in points], dtype=np.int64)
    must = np.asarray([m for *_, m in points], dtype=bool)
    tand = np.asarray(flat_and, dtype=np.int64)
    tor = np.asarray(flat_or, dtype=np.int64)
    timp = np.asarray(flat_imp, dtype=np.int64)
    tneg = np.asarray(flat_neg, dtype=np.int64)

    prof_p = np.asarray([x for _, x, _, _ in points], dtype=np.int64)
    prof_q = np.asarray([y for _, _, y, _ in points], dtype=np.int64)
    profiles = {prof_p.tobytes(): (prof_p, 0), prof_q.tobytes(): (prof_q, 0)}
    for d in range(1, max_depth + 1):
        items = list(profiles.values())
        new = []
        for tab in (tand, tor, timp):
            for pa, da in items:
                for pb, db in items:
                    if max(da, db) != d - 1:
                        continue
                    new.append(tab[base + pa * stride + pb])
        for pa, da in items:
            if da == d - 1:
                new.append(tneg[nbase + pa])
        for arr in new:
            key = arr.tobytes()
            if key not in profiles:
                profiles[key] = (arr, d)
    trees = {0: 2}
    for d in range(1, max_depth + 1):
        trees[d] = 2 + trees[d - 1] + 3 * trees[d - 1] ** 2
    failures = 0
    filt_top = algebras[0].top
    for arr, _ in profiles.values():
        if arr[0] == filt_top and not np.all(arr[must] == tops[must]):
            failures += 1
    return trees[max_depth], len(profiles), failures


# -- JSON ----------------------------------------------------------------------


def presentation_to_json(p, target_expr, variety_exprs=(), bound=8):
    vars_ = sorted(p.valuation)
    doc = {
        "formula": pretty(p.formula),
        "vars": [f"p{v + 1}" for v in vars_],
        "target": target_expr,
        "valuation": [p.valuation[v] for v in vars_],
        "variety": {"generators": list(variety_exprs), "bound": bound},
    }
    return json.dumps(doc, ensure_ascii=False)


def presentation_from_json(text):
    from .exprs import parse_algebra_expr
    doc = json.loads(text)
    formula = parse(doc["formula"])
    target = parse_algebra_expr(doc["target"])
    vars_ = [int(v[1:]) - 1 for v in doc["vars"]]
    valuation = dict(zip(vars_, doc["valuation"]))
    vdoc = doc.get("variety") or {}
    handle = None
    if vdoc.get("generators"):
        gens = tuple(parse_algebra_expr(e) for e in vdoc["generators"])
        handle = VarietyHandle.generated(gens, vdoc.get("bound", 8))
    return Presentation(formula, target, valuation, handle)
