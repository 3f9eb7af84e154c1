"""Enumeration of small c.d.i. generalized quantales and the check suites
the CLI `search` command runs over them: the correspondence counts, the
left-distributivity counterexample hunt inside the endomorphism closure,
and the classification of cyclic quotients by projectivity."""

from itertools import combinations_with_replacement, product

from .aqm import check_aqm, exp_end, make_quantale, table_aqm
from .errors import LawViolated
from .nucleus import (
    convert,
    enumerate_congruences,
    enumerate_consequences,
    enumerate_nuclei,
    structural_check,
    quotient,
)
from .projective import cyclic_check, cyclic_projective_check, self_module

__all__ = [
    "quantale_descriptions",
    "build_quantale",
    "suite_correspond",
    "suite_leftdist",
    "suite_projective",
    "SUITES",
]


def _labeled_posets(n):
    """All partial orders on n labeled elements, as strict-pair sets."""
    els = list(range(n))
    nonrefl = [(i, j) for i in els for j in els if i != j]
    for bits in product([False, True], repeat=len(nonrefl)):
        rel = {p for p, b in zip(nonrefl, bits) if b}
        if any((j, i) in rel for (i, j) in rel):
            continue
        if any(
            (i, k) not in rel
            for (i, j) in rel
            for (jj, k) in rel
            if j == jj and i != k
        ):
            continue
        yield rel


def _join_table(n, rel):
    """Binary join table for the labeled poset, or None when one is missing."""
    leq = lambda a, b: a == b or (a, b) in rel
    join = {}
    for a, b in product(range(n), repeat=2):
        uppers = [c for c in range(n) if leq(a, c) and leq(b, c)]
        lubs = [c for c in uppers if all(leq(c, d) for d in uppers)]
        if len(lubs) != 1:
            return None
        join[(a, b)] = lubs[0]
    return join


def quantale_descriptions(size):
    """Raw structure descriptions of every c.d.i. generalized quantale on at
    most `size` labeled elements (no isomorphism pruning)."""
    out = []
    for n in range(1, size + 1):
        for rel in _labeled_posets(n):
            join = _join_table(n, rel)
            if join is None:
                continue
            leq = lambda a, b: a == b or (a, b) in rel
            bottoms = [b for b in range(n) if all(leq(b, x) for x in range(n))]
            if not bottoms:
                continue
            zero = bottoms[0]
            nonzero = [x for x in range(n) if x != zero]
            free_pairs = list(combinations_with_replacement(nonzero, 2))
            choice_sets = [
                [z for z in range(n) if leq(join[(x, y)], z)] for x, y in free_pairs
            ]
            for values in product(*choice_sets):
                op = {}
                for x in range(n):
                    op[(zero, x)] = x
                    op[(x, zero)] = x
                for (x, y), z in zip(free_pairs, values):
                    op[(x, y)] = z
                    op[(y, x)] = z
                if any(
                    op[(op[(a, b)], c)] != op[(a, op[(b, c)])]
                    for a, b, c in product(range(n), repeat=3)
                ):
                    continue
                if any(
                    leq(a, b) and not leq(op[(a, c)], op[(b, c)])
                    for a, b, c in product(range(n), repeat=3)
                ):
                    continue
                if any(
                    op[(a, join[(b, c)])] != join[(op[(a, b)], op[(a, c)])]
                    for a, b, c in product(range(n), repeat=3)
                ):
                    continue
                out.append(
                    {
                        "poset": {
                            "elements": [str(i) for i in range(n)],
                            "leq": [[str(i), str(j)] for (i, j) in sorted(rel)],
                        },
                        "monoid": {
                            "op": [
                                [str(x), str(y), str(z)]
                                for (x, y), z in sorted(op.items())
                            ],
                            "unit": str(zero),
                        },
                    }
                )
    return out


def build_quantale(desc):
    return make_quantale(desc)


def _congruence_refines(c1, c2):
    return all(any(set(a) <= set(b) for b in c2.classes) for a in c1.classes)


def suite_correspond(desc):
    """Counts of the three presentations, round-trip identity, and
    order-preservation of the conversions (pointwise order on nuclei,
    inclusion on relations, refinement on partitions)."""
    q = build_quantale(desc)
    nucs = enumerate_nuclei(q)
    cons = enumerate_consequences(q)
    congs = enumerate_congruences(q)
    round_ok = True
    for p in nucs:
        round_ok &= convert(convert(p, "consequence"), "nucleus") == p
        round_ok &= convert(convert(p, "congruence"), "nucleus") == p
    for p in cons:
        round_ok &= convert(convert(p, "nucleus"), "consequence") == p
        round_ok &= convert(convert(p, "congruence"), "consequence") == p
    for p in congs:
        round_ok &= convert(convert(p, "nucleus"), "congruence") == p
        round_ok &= convert(convert(p, "consequence"), "congruence") == p
    monotone_ok = True
    for g1 in nucs:
        for g2 in nucs:
            pointwise = all(q.leq(g1.apply(x), g2.apply(x)) for x in q.elements)
            incl = convert(g1, "consequence").pairs <= convert(
                g2, "consequence").pairs
            refines = _congruence_refines(convert(g1, "congruence"),
                                          convert(g2, "congruence"))
            monotone_ok &= pointwise == incl == refines
    counts = (len(nucs), len(cons), len(congs))
    return {
        "size": len(q.elements),
        "counts": counts,
        "counts_agree": len(set(counts)) == 1,
        "round_trips": bool(round_ok),
        "order_preserving": bool(monotone_ok),
        "ok": (len(set(counts)) == 1 and bool(round_ok)
               and bool(monotone_ok)),
    }


def suite_leftdist(desc):
    """Hunt for g, h1, h2 in the endomorphism closure with
    g(h1 v h2) != g(h1) v g(h2) under composition."""
    q = build_quantale(desc)
    a = exp_end(q)
    gen = sorted(a.quant.elements)
    witnesses = []
    for g, h1, h2 in product(gen, repeat=3):
        lhs = a.mult(g, a.quant.join([h1, h2]))
        rhs = a.quant.join([a.mult(g, h1), a.mult(g, h2)])
        if lhs != rhs:
            witnesses.append((g, h1, h2))
    return {
        "size": len(q.elements),
        "gen_size": len(gen),
        "witnesses": witnesses[:3],
        "found": bool(witnesses),
        "ok": True,  # absence of a counterexample is not a violation
    }


def _commutative_mults(q):
    """Commutative, monotone, unital, fully bidistributive multiplications."""
    els = q.elements
    out = []
    for one in els:
        others = [x for x in els if x != one]
        free_pairs = list(combinations_with_replacement(others, 2))
        for values in product(els, repeat=len(free_pairs)):
            mult = {}
            for x in els:
                mult[(one, x)] = x
                mult[(x, one)] = x
            for (x, y), z in zip(free_pairs, values):
                mult[(x, y)] = z
                mult[(y, x)] = z
            if any(
                mult[(mult[(a, b)], c)] != mult[(a, mult[(b, c)])]
                for a, b, c in product(els, repeat=3)
            ):
                continue
            try:
                aqm = table_aqm(q, mult, one)
                check_aqm(aqm)
            except LawViolated:
                continue
            out.append(aqm)
    return out


def suite_projective(desc):
    """Classify the cyclic quotients of every commutative AQM on this
    quantale; report any without a dividing-idempotent witness."""
    q = build_quantale(desc)
    nonprojective = []
    n_aqms = 0
    n_quotients = 0
    for aqm in _commutative_mults(q):
        n_aqms += 1
        selfm = self_module(aqm)
        for nuc in enumerate_nuclei(q):
            if not structural_check(nuc, selfm, scope="all").data["structural"]:
                continue
            qm = quotient(selfm, nuc)
            gen = nuc.apply(aqm.one)
            if not cyclic_check(qm.module, gen)[0]:
                raise ArithmeticError(
                    "self-module quotient must be cyclic at the unit image"
                )
            n_quotients += 1
            rep = cyclic_projective_check(qm.module)
            if not any(rep.data["conditions"].values()):
                nonprojective.append(
                    {
                        "one": aqm.one,
                        "mult": sorted((f"{x}*{y}", aqm.mult(x, y))
                                       for x in q.elements for y in q.elements),
                        "nucleus": dict(nuc.table),
                        "carrier": qm.module.space.elements,
                    }
                )
    return {
        "size": len(q.elements),
        "aqms": n_aqms,
        "cyclic_quotients": n_quotients,
        "nonprojective": nonprojective[:2],
        "found": bool(nonprojective),
        "ok": True,
    }


SUITES = {
    "correspond": suite_correspond,
    "leftdist": suite_leftdist,
    "projective": suite_projective,
}
