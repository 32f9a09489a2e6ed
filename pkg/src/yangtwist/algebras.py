"""Built-in presentations: U(sl2), U(b-), the Yangian in Chevalley form and
the twisted algebras generated by T, T^-1.

Generator names: f = e_{-alpha}, h = h_alpha, e = e_alpha, E = e_{delta-alpha},
T and Ti = T^-1.
"""

from __future__ import annotations

from functools import lru_cache

from .freealg import Alphabet, NCElement, commutator
from .presentations import Presentation
from .scalar import ETA, ONE, XI

SL2 = Alphabet("sl2", ("f", "h", "e"))
BORN = Alphabet("b-", ("f", "h"))
YANG = Alphabet("Y", ("f", "h", "e", "E"), degrees=(1, 1, 1, 2))
T_BORN = Alphabet("Tb-", ("Ti", "T", "h"))
T_SL2 = Alphabet("Tsl2", ("Ti", "T", "h", "e"))
T_YANG = Alphabet("TY", ("Ti", "T", "h", "e", "E"), degrees=(1, 1, 1, 1, 2))


def _g(alph):
    return lambda name: NCElement.gen(alph, name)


def _sl2_relations(alph):
    g = _g(alph)
    f, h, e = g("f"), g("h"), g("e")
    rels = [commutator(e, f) - h, commutator(h, e) - 2 * e, commutator(h, f) + 2 * f]
    rules = [("e f", f * e + h), ("e h", h * e - 2 * e), ("h f", f * h - 2 * f)]
    return rels, rules, ["sl2-ef", "sl2-he", "sl2-hf"]


@lru_cache(maxsize=None)
def u_sl2(alph=SL2):
    rels, rules, tags = _sl2_relations(alph)
    return Presentation("U(sl2)", alph, rels, [(alph.word(l), r) for l, r in rules], True, tags)


@lru_cache(maxsize=None)
def u_bminus():
    g = _g(BORN)
    f, h = g("f"), g("h")
    return Presentation("U(b-)", BORN, [commutator(h, f) + 2 * f],
                        [(BORN.word("h f"), f * h - 2 * f)], True, ["b-hf"])


def _yangian_extra(alph, printed=False):
    g = _g(alph)
    f, h, e, E = g("f"), g("h"), g("e"), g("E")
    if printed:
        rels = [commutator(h, E) - E, commutator(f, E) - ETA * f]
        rules = [("E h", h * E - E), ("E f", f * E - ETA * f)]
    else:
        rels = [commutator(h, E) + 2 * E, commutator(f, E) - ETA * f * f]
        rules = [("E h", h * E + 2 * E), ("E f", f * E - ETA * f * f)]
    return rels, rules, ["yang-hE", "yang-fE"]


def cubic_relations(alph=YANG):
    g = _g(alph)
    e, E = g("e"), g("E")
    c1 = commutator(e, commutator(e, commutator(e, E))) - 6 * ETA * e * e
    c2 = commutator(commutator(commutator(e, E), E), E) - 6 * ETA * E * E
    return [c1, c2]


@lru_cache(maxsize=None)
def yangian_core(printed=False):
    """sl2 plus E with the degree-one relations; e and E stay free.

    The oriented rules form a confluent system for this algebra (checked by
    check_confluence). With printed=True the literal printed commutators
    [h, E] = E and [f, E] = eta f are used instead.
    """
    rels, rules, tags = _sl2_relations(YANG)
    r2, u2, t2 = _yangian_extra(YANG, printed)
    name = "Y-core(printed)" if printed else "Y-core"
    return Presentation(name, YANG, rels + r2, [(YANG.word(l), r) for l, r in rules + u2],
                        confluent=not printed, tags=tags + t2)


@lru_cache(maxsize=None)
def yangian():
    """Full Chevalley presentation including both cubic relations."""
    core = yangian_core()
    return Presentation("Y", YANG, core.relations + cubic_relations(),
                        tags=core.tags + ["yang-cubic-e", "yang-cubic-E"])


# --- twisted presentations in T, T^-1 -------------------------------------

def _t_relations(alph):
    g = _g(alph)
    one = NCElement.one((alph,))
    Ti, T, h = g("Ti"), g("T"), g("h")
    rels = {
        "T-inverse-right": T * Ti - one,
        "T-inverse-left": Ti * T - one,
        "h-T": commutator(h, T) - 2 * (one - T),
        "h-Ti": commutator(h, Ti) - 2 * (Ti - Ti * Ti),
    }
    if "e" in alph.index:
        e = g("e")
        rels["h-e"] = commutator(h, e) - 2 * e
        rels["T-e"] = commutator(T, e) - 2 * XI * h
        rels["Ti-e"] = commutator(Ti, e) + 2 * XI * Ti * h * Ti
    if "E" in alph.index:
        E = g("E")
        c = -ETA / (2 * XI)
        rels["T-E"] = commutator(T, E) - c * (T * T - 2 * T + one)
        rels["Ti-E"] = commutator(Ti, E) - c * (Ti * Ti - 2 * Ti + one)
    return rels


@lru_cache(maxsize=None)
def twisted_presentation(kind):
    """kind in {'b-', 'sl2', 'Y'}; relations exactly as displayed."""
    alph = {"b-": T_BORN, "sl2": T_SL2, "Y": T_YANG}[kind]
    rels = _t_relations(alph)
    tags = list(rels)
    relations = [rels[t] for t in tags]
    if kind == "Y":
        relations += cubic_relations(alph)
        tags += ["yang-cubic-e", "yang-cubic-E"]
    return Presentation(f"T-{kind}", alph, relations, tags=tags)
