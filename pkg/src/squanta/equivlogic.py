"""Induced embeddings between nucleus quotients, translation pairs, the
four-condition equivalence of consequence relations, and recovery of
translations from a quotient isomorphism via projectivity lifting."""

from dataclasses import dataclass
from itertools import product

from .errors import IllDefined, NoLift, NotProjective
from .nucleus import Nucleus
from .projective import enumerate_module_homs, is_module_hom
from .reporting import Report

__all__ = [
    "TranslationPair",
    "hom_from_generator_image",
    "induced_embedding_check",
    "equivalence_check",
    "recover_translations",
]


@dataclass
class TranslationPair:
    p_mod: object      # module P
    q_mod: object      # module Q over the same AQM
    gamma: Nucleus     # structural nucleus on P
    delta: Nucleus     # structural nucleus on Q
    tau: dict          # module homomorphism P -> Q
    rho: dict          # module homomorphism Q -> P

    def validate(self):
        if not is_module_hom(self.tau, self.p_mod, self.q_mod):
            raise IllDefined("tau is not a module homomorphism", witness="tau")
        if not is_module_hom(self.rho, self.q_mod, self.p_mod):
            raise IllDefined("rho is not a module homomorphism", witness="rho")
        return self


def hom_from_generator_image(p_mod, u, q_mod, w):
    """The module homomorphism from a u-cyclic module determined by sending
    the generator to w, when well-defined: a*u = b*u must force a*w = b*w."""
    images = {}
    for a in p_mod.scalar_universe():
        x = p_mod.star(a, u)
        y = q_mod.star(a, w)
        if x in images and images[x] != y:
            prev = next(b for b in p_mod.scalar_universe()
                        if p_mod.star(b, u) == x and q_mod.star(b, w) == images[x])
            raise IllDefined(
                "generator image does not induce a map", witness=(prev, a)
            )
        images[x] = y
    missing = [x for x in p_mod.space.elements if x not in images]
    if missing:
        raise IllDefined("module is not u-cyclic", witness=missing[0])
    if not is_module_hom(images, p_mod, q_mod):
        raise IllDefined("induced map is not a module homomorphism",
                         witness=sorted(images.items()))
    return images


def induced_embedding_check(f, gamma, delta, tau, p_mod):
    """Pointwise check of f o gamma = delta o tau over the carrier of P."""
    g = gamma.as_dict()
    d = delta.as_dict()
    for x in p_mod.space.elements:
        if f[g[x]] != d[tau[x]]:
            return False, x
    return True, None


def _entails(nuc, space, x, y):
    return space.leq(y, nuc.apply(x))


def equivalence_check(tp: TranslationPair):
    """Evaluate the four equivalence conditions exhaustively, the meta-claim
    that the two condition lines have equal truth value, and, on success,
    that delta o tau and gamma o rho induce mutually inverse isomorphisms of
    the two quotients."""
    tp.validate()
    rep = Report("equivalence")
    p_sp, q_sp = tp.p_mod.space, tp.q_mod.space
    g, d = tp.gamma, tp.delta
    tau, rho = tp.tau, tp.rho

    c1 = all(
        _entails(g, p_sp, x, y) == _entails(d, q_sp, tau[x], tau[y])
        for x, y in product(p_sp.elements, repeat=2)
    )
    c2 = all(
        _entails(d, q_sp, e, tau[rho[e]]) and _entails(d, q_sp, tau[rho[e]], e)
        for e in q_sp.elements
    )
    c3 = all(
        _entails(d, q_sp, e, f) == _entails(g, p_sp, rho[e], rho[f])
        for e, f in product(q_sp.elements, repeat=2)
    )
    c4 = all(
        _entails(g, p_sp, x, rho[tau[x]]) and _entails(g, p_sp, rho[tau[x]], x)
        for x in p_sp.elements
    )
    for name, ok in [("translation preserves entailment", c1),
                     ("tau-rho round trip is interderivable", c2),
                     ("back-translation preserves entailment", c3),
                     ("rho-tau round trip is interderivable", c4)]:
        rep.passed(name) if ok else rep.failed(name)
    line1, line2 = c1 and c2, c3 and c4
    rep.data.update(line1=line1, line2=line2,
                    conditions=dict(c1=c1, c2=c2, c3=c3, c4=c4))
    if line1 == line2:
        rep.passed("line 1 equivalent to line 2", f"both {line1}")
    else:
        rep.failed("line 1 equivalent to line 2", witness=(line1, line2))

    if line1 and line2:
        gd, dd = g.as_dict(), d.as_dict()
        f = {x: dd[tau[x]] for x in g.image()}
        h = {e: gd[rho[e]] for e in d.image()}
        inverse = all(h[f[x]] == x for x in g.image()) and all(
            f[h[e]] == e for e in d.image()
        )
        if inverse:
            rep.passed("delta.tau and gamma.rho are mutually inverse on quotients")
        else:
            rep.failed("delta.tau and gamma.rho are mutually inverse on quotients")
        rep.data["f"] = f
        rep.data["g"] = h
    return rep


def recover_translations(f, g, p_mod, q_mod, gamma, delta, certified=()):
    """Lift a quotient isomorphism back to a translation pair.

    `certified` must list the modules certified cyclic projective (the
    reports produced by the projectivity pipeline); the hom search then
    cannot fail, and its failure would indicate a bug, not a math fact.
    """
    required = {id(p_mod), id(q_mod)}
    if not required <= {id(m) for m in certified}:
        raise NotProjective(
            "both modules must carry a cyclic-projective certificate",
            witness=[m.name for m in certified],
        )
    gd, dd = gamma.as_dict(), delta.as_dict()
    tau = None
    for cand in enumerate_module_homs(p_mod, q_mod):
        if all(dd[cand[x]] == f[gd[x]] for x in p_mod.space.elements):
            tau = cand
            break
    rho = None
    for cand in enumerate_module_homs(q_mod, p_mod):
        if all(gd[cand[e]] == g[dd[e]] for e in q_mod.space.elements):
            rho = cand
            break
    if tau is None or rho is None:
        raise NoLift(
            "certified projective module admitted no lift: this is a bug trap",
            witness=("tau" if tau is None else "rho"),
        )
    tp = TranslationPair(p_mod, q_mod, gamma, delta, tau, rho)
    tp.validate()
    return tp
