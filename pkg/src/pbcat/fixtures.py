"""Ready-made structures: the standard test categories, their PBCs, a Brown
lattice, and seeded random generators for the property suites.

The interval fixture P1 (poset 0 < 1 with every morphism a weak equivalence
and a trivial cofibration) is the running example; DISC(C) fixtures make the
weak equivalences the isomorphisms only; the walking-isomorphism fixture
carries a deliberately twisted factorization scheme (mid(u) = source of u)
so that the retraction machinery produces non-identity witnesses.
"""

from __future__ import annotations

import random
from typing import Optional

from . import fincat as fc
from . import relcat as rc


def interval_poset() -> fc.FinCategory:
    return fc.poset_category(["0", "1"], [("0", "1")])


def chain3_poset() -> fc.FinCategory:
    return fc.chain_poset(2)


def vee_poset() -> fc.FinCategory:
    """b < x, b < y with no join: the standard pushout-free example."""
    return fc.poset_category(["b", "x", "y"], [("b", "x"), ("b", "y")])


def diamond_poset() -> fc.FinCategory:
    return fc.poset_category(["bot", "l", "r", "top"],
                             [("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")])


def walking_iso_category() -> fc.FinCategory:
    return fc.FinCategory.build(
        ["0", "1"],
        {"id(0)": ("0", "0"), "id(1)": ("1", "1"),
         "u": ("0", "1"), "uinv": ("1", "0")},
        {"0": "id(0)", "1": "id(1)"},
        {("id(0)", "id(0)"): "id(0)", ("id(1)", "id(1)"): "id(1)",
         ("u", "id(0)"): "u", ("id(1)", "u"): "u",
         ("uinv", "id(1)"): "uinv", ("id(0)", "uinv"): "uinv",
         ("uinv", "u"): "id(0)", ("u", "uinv"): "id(1)"},
    )


def p1() -> rc.PBCStructure:
    """Poset 0 < 1, weq = tcof = everything, trivial scheme."""
    return rc.pbc_all_weq(interval_poset())


def chain3() -> rc.PBCStructure:
    """Poset 0 < 1 < 2, weq = tcof = everything (the only valid completion;
    see the ledgered finiteness theorem), trivial scheme."""
    return rc.pbc_all_weq(chain3_poset())


def disc_terminal() -> rc.PBCStructure:
    return rc.pbc_discrete(fc.terminal_category())


def disc_interval() -> rc.PBCStructure:
    return rc.pbc_discrete(interval_poset())


def disc_chain3() -> rc.PBCStructure:
    return rc.pbc_discrete(chain3_poset())


def walking_iso_pbc() -> rc.PBCStructure:
    """The walking isomorphism with an iso-twisted factorization scheme.

    u factors through its *source*: mid(u) = 0, w(u) = u, s(u) = u^{-1}, and
    symmetrically for u^{-1}.  Everything is a weak equivalence and a trivial
    cofibration, but the scheme is not the trivial one, so the retraction
    functor β moves objects and its comparison transformations have
    non-identity components.
    """
    cat = walking_iso_category()
    weq = frozenset(cat.morphisms)
    rel = rc.RelativeCategory.of(cat, weq)
    tcof = fc.WideSubcategory.of(cat, weq)
    mid = {"id(0)": "0", "id(1)": "1", "u": "0", "uinv": "1"}
    front = {"id(0)": "id(0)", "id(1)": "id(1)", "u": "id(0)", "uinv": "id(1)"}
    back = {"id(0)": "id(0)", "id(1)": "id(1)", "u": "u", "uinv": "uinv"}
    section = {"id(0)": "id(0)", "id(1)": "id(1)", "u": "uinv", "uinv": "u"}
    mu = rc.derive_mu(rel, tcof, mid, front, back, section)
    if mu is None:
        raise AssertionError("walking-iso scheme should always complete")
    return rc.PBCStructure(rel, tcof, rc.FactorizationScheme(mid, front, back, section, mu))


def walking_idempotent_category() -> fc.FinCategory:
    """One object with a non-identity idempotent endomorphism."""
    return fc.FinCategory.build(
        ["x"],
        {"id(x)": ("x", "x"), "e": ("x", "x")},
        {"x": "id(x)"},
        {("id(x)", "id(x)"): "id(x)", ("id(x)", "e"): "e",
         ("e", "id(x)"): "e", ("e", "e"): "e"},
    )


def walking_idempotent_pbc() -> rc.PBCStructure:
    """weq = tcof = the identity; the idempotent is inert.  Useful because the
    carrier has a hom-set of size two, so factorization-scheme mutations can
    break equations without breaking endpoints."""
    cat = walking_idempotent_category()
    members = frozenset({"id(x)"})
    rel = rc.RelativeCategory.of(cat, members)
    tcof = fc.WideSubcategory.of(cat, members)
    scheme = rc.derive_factorization(rel, tcof)
    if scheme is None:
        raise AssertionError("walking idempotent must carry the identity scheme")
    return rc.PBCStructure(rel, tcof, scheme)


def _joins(cat: fc.FinCategory) -> dict[tuple[str, str], Optional[str]]:
    out = {}
    for x in cat.objects:
        for y in cat.objects:
            uppers = [z for z in cat.objects if cat.hom(x, z) and cat.hom(y, z)]
            least = [z for z in uppers if all(cat.hom(z, w) for w in uppers)]
            out[(x, y)] = least[0] if least else None
    return out


def lattice_brown(cat: fc.FinCategory) -> rc.BrownStructure:
    """A lattice poset as a Brown category: weq = cof = everything, chosen
    coproducts are joins, the cylinder is the identity."""
    joins = _joins(cat)
    bottoms = [x for x in cat.objects if all(cat.hom(x, y) for y in cat.objects)]
    if not bottoms or any(j is None for j in joins.values()):
        raise fc.CategoryError("carrier is not a lattice with bottom")
    pairs = {}
    for (x, y), j in joins.items():
        pairs[(x, y)] = (j, cat.hom(x, j)[0], cat.hom(y, j)[0])
    cyl = rc.CylinderData(
        cyl={x: x for x in cat.objects},
        on_mor={m: m for m in cat.morphisms},
        fold_cof={x: cat.identity[x] for x in cat.objects},
        fold_weq={x: cat.identity[x] for x in cat.objects},
    )
    rel = rc.RelativeCategory.of(cat, frozenset(cat.morphisms))
    cof = fc.WideSubcategory.of(cat, frozenset(cat.morphisms))
    return rc.BrownStructure(rel, cof, rc.ChosenCoproducts(bottoms[0], pairs), cyl)


def diamond_brown() -> rc.BrownStructure:
    return lattice_brown(diamond_poset())


def heavy_fixtures() -> list[tuple[str, rc.PBCStructure]]:
    """Fixtures used by the enumeration-heavy acceptance criteria.

    The walking isomorphism is excluded: C_n of an indiscrete category grows
    as |Ob|^|T_n| with a full morphism table, which blows the runtime budget
    at n = 3.
    """
    return [
        ("p1", p1()),
        ("chain3", chain3()),
        ("disc-terminal", disc_terminal()),
        ("disc-interval", disc_interval()),
        ("disc-chain3", disc_chain3()),
    ]


def all_fixtures() -> list[tuple[str, rc.PBCStructure]]:
    return heavy_fixtures() + [("walking-iso", walking_iso_pbc())]


# -- random generation (seeded) ------------------------------------------------

def random_forest_poset(rng: random.Random, max_nodes: int = 5) -> fc.FinCategory:
    """A random poset whose up-sets are chains, so that every span from a
    common source has a pushout (the maximum of two comparable bounds)."""
    n = rng.randint(1, max_nodes)
    rels = []
    for i in range(1, n):
        if rng.random() < 0.8:
            parent = rng.randrange(i)
            rels.append((f"n{i}", f"n{parent}"))
    return fc.poset_category([f"n{i}" for i in range(n)], rels)


def _close_two_of_three(cat: fc.FinCategory, seed_members: set[str]) -> frozenset[str]:
    members = set(seed_members) | set(cat.identity.values())
    changed = True
    while changed:
        changed = False
        for (g, f), h in cat.composition.items():
            flags = [f in members, g in members, h in members]
            if sum(flags) == 2:
                for m in (f, g, h):
                    if m not in members:
                        members.add(m)
                        changed = True
            elif flags[0] and flags[1] and not flags[2]:
                members.add(h)
                changed = True
    return frozenset(members)


def random_pbc(rng: random.Random, max_nodes: int = 5) -> rc.PBCStructure:
    """A random valid finite PBC on a forest poset.

    Weak equivalences are a randomly seeded class closed under composition
    and two-out-of-three; candidates failing the cobase-change axiom are
    rejected and the all-morphisms class is used as a fallback.
    """
    cat = random_forest_poset(rng, max_nodes)
    for _attempt in range(6):
        if rng.random() < 0.4:
            members = frozenset(cat.morphisms)
        else:
            seed = {m for m in cat.morphisms if rng.random() < 0.4}
            members = _close_two_of_three(cat, seed)
        rel = rc.RelativeCategory.of(cat, members)
        pbc = rc.PBCStructure(rel, fc.WideSubcategory.of(cat, members),
                              rc.trivial_scheme(cat, members))
        if rc.check_pbc(pbc).ok:
            return pbc
    members = frozenset(cat.morphisms)
    rel = rc.RelativeCategory.of(cat, members)
    return rc.PBCStructure(rel, fc.WideSubcategory.of(cat, members),
                           rc.trivial_scheme(cat, members))


def random_relative_target(rng: random.Random, max_nodes: int = 5) -> rc.RelativeCategory:
    cat = random_forest_poset(rng, max_nodes)
    members = {m for m in cat.morphisms if rng.random() < 0.5} | set(cat.identity.values())
    # close under composition only; a relative category needs no 2-of-3
    changed = True
    while changed:
        changed = False
        for (g, f), h in cat.composition.items():
            if g in members and f in members and h not in members:
                members.add(h)
                changed = True
    return rc.RelativeCategory.of(cat, members)


def random_functor_on_weqs(rng: random.Random, pbc: rc.PBCStructure,
                           target: rc.RelativeCategory,
                           require_hypothesis: bool = True) -> Optional[fc.Functor]:
    """A random functor from the weq-subcategory into the target carrier;
    when require_hypothesis is set, trivial cofibrations must land in the
    target weak equivalences (Ken Brown's hypothesis)."""
    wsub = pbc.weq_subcategory()
    tcat = target.carrier
    for _attempt in range(30):
        omap: dict[str, str] = {}
        ok = True
        for x in wsub.objects:
            cands = []
            for o in tcat.objects:
                fine = True
                for y in wsub.objects:
                    if y in omap:
                        for m in wsub.hom(y, x):
                            arrows = tcat.hom(omap[y], o)
                            if not arrows or (require_hypothesis
                                              and m in pbc.tcof.members
                                              and arrows[0] not in target.weq.members):
                                fine = False
                        for m in wsub.hom(x, y):
                            arrows = tcat.hom(o, omap[y])
                            if not arrows or (require_hypothesis
                                              and m in pbc.tcof.members
                                              and arrows[0] not in target.weq.members):
                                fine = False
                if fine:
                    cands.append(o)
            if not cands:
                ok = False
                break
            omap[x] = rng.choice(cands)
        if not ok:
            continue
        mmap = {}
        for m, (a, b) in wsub.morphisms.items():
            arrows = tcat.hom(omap[a], omap[b])
            if not arrows:
                ok = False
                break
            mmap[m] = arrows[0]
        if not ok:
            continue
        fun = fc.Functor(wsub, tcat, omap, mmap)
        if fun.is_valid():
            return fun
    # constant functors always exist and satisfy the hypothesis
    if not tcat.objects or not wsub.objects:
        return None
    o = sorted(tcat.objects)[0]
    return fc.constant_functor(wsub, tcat, o)
