"""Diagram, Jankov, de Jongh-style and characteristic formulas.

The diagram of a finite algebra writes out its operation tables as one big
conjunction of biconditionals; the Jankov formula is the diagram implying
the variable of the opremum.  Characteristic formulas generalize this to an
arbitrary finite presentation of the algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import is_si, opremum
from .formula import Formula, and_, conj, iff, imp, neg, or_, var


class NotSI(ValueError):
    pass


class NotGenerated(ValueError):
    pass


@dataclass(frozen=True)
class DiagramAssignment:
    """Generators with their variables, and a defining term per element."""

    algebra: object
    generators: tuple
    terms: dict


def diagram_formula(algebra):
    """Diagram of the algebra and its identity valuation.

    One biconditional per entry of the meet, join and imp tables (row-major,
    in that order) plus one per negation-table entry: 3n^2 + n conjuncts.
    """
    n = algebra.size
    conjuncts = []
    for make, tab in (((lambda x, y: and_(var(x), var(y))), algebra.meet),
                      ((lambda x, y: or_(var(x), var(y))), algebra.join),
                      ((lambda x, y: imp(var(x), var(y))), algebra.imp)):
        for x in range(n):
            for y in range(n):
                conjuncts.append(iff(make(x, y), var(tab[x][y])))
    for x in range(n):
        conjuncts.append(iff(neg(var(x)), var(algebra.neg[x])))
    return conj(conjuncts), {i: i for i in range(n)}


def jankov_formula(algebra):
    """Diagram implying the opremum's variable; requires a s.i. algebra."""
    if not is_si(algebra):
        raise NotSI("Jankov formula needs a subdirectly irreducible algebra")
    d, _ = diagram_formula(algebra)
    return imp(d, var(opremum(algebra)))


def terms_for_all(algebra, gens):
    """Minimal-depth defining term for every generated element.

    gens is a sequence of (variable index, element) pairs.  Breadth-first
    over the value closure; ties are broken by connective order
    and < or < imp < neg, then by operand discovery order.
    """
    known = {}
    order = []
    for v, e in gens:
        if e not in known:
            known[e] = var(v)
            order.append(e)
    depth = {e: 0 for e in known}
    tables = (("and", algebra.meet), ("or", algebra.join), ("imp", algebra.imp))
    d = 0
    while True:
        d += 1
        items = list(order)
        new = []
        for kind, tab in tables:
            for x in items:
                for y in items:
                    if max(depth[x], depth[y]) != d - 1:
                        continue
                    z = tab[x][y]
                    if z not in known:
                        known[z] = Formula(kind, (known[x], known[y]))
                        depth[z] = d
                        new.append(z)
        for x in items:
            if depth[x] != d - 1:
                continue
            z = algebra.neg[x]
            if z not in known:
                known[z] = neg(known[x])
                depth[z] = d
                new.append(z)
        if not new:
            return known
        order.extend(new)


def term_for_element(algebra, gens, target):
    """A minimal-depth term over the generator variables reaching target."""
    known = terms_for_all(algebra, gens)
    if target not in known:
        raise NotGenerated(f"element {target} is not generated")
    return known[target]


def diagram_assignment(algebra, generators):
    terms = terms_for_all(algebra, generators)
    if len(terms) != algebra.size:
        raise NotGenerated("generators do not generate the algebra")
    return DiagramAssignment(algebra, tuple(generators), terms)


def dejongh_formula(algebra):
    """Reduced-diagram variant over the join-irreducible generators.

    Generators are the join-irreducible elements distinct from top (bottom
    is excluded as the empty join); every element is replaced by a defining
    term and syntactically duplicate conjuncts are dropped.
    """
    if not is_si(algebra):
        raise NotSI("de Jongh formula needs a subdirectly irreducible algebra")
    gens = [x for x in algebra.join_irreducibles() if x != algebra.top]
    if not gens:
        # the two-element algebra has no generators below top; its
        # characteristic formula is the contradiction
        return and_(var(0), neg(var(0)))
    assignment = diagram_assignment(algebra, [(i, g) for i, g in enumerate(gens)])
    terms = assignment.terms
    n = algebra.size
    conjuncts = []
    seen = set()

    def add(f):
        if f not in seen:
            seen.add(f)
            conjuncts.append(f)

    for make, tab in (((lambda a, b: and_(terms[a], terms[b])), algebra.meet),
                      ((lambda a, b: or_(terms[a], terms[b])), algebra.join),
                      ((lambda a, b: imp(terms[a], terms[b])), algebra.imp)):
        for x in range(n):
            for y in range(n):
                add(iff(make(x, y), terms[tab[x][y]]))
    for x in range(n):
        add(iff(neg(terms[x]), terms[algebra.neg[x]]))
    return imp(conj(conjuncts), terms[opremum(algebra)])


def characteristic_formula(presentation):
    """A(p) -> B(p) where B defines the opremum through the presentation.

    The presentation must target a s.i. algebra whose generators are the
    valuation image.
    """
    target = presentation.target
    if not is_si(target):
        raise NotSI("characteristic formula needs a s.i. target")
    gens = sorted(presentation.valuation.items())
    b = term_for_element(target, gens, opremum(target))
    return imp(presentation.formula, b)
