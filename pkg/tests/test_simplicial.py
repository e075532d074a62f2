import pytest

from pbcat import fincat as fc
from pbcat import simplicial as sp

import oracles


def p01():
    return fc.poset_category(["0", "1"], [("0", "1")])


# -- T_n ---------------------------------------------------------------------

def test_T0_is_terminal_shaped():
    t = sp.build_T(0)
    assert len(t.category.objects) == 1
    assert len(t.category.morphisms) == 1


def test_T1_shape():
    t = sp.build_T(1)
    assert set(t.category.objects) == {"(0,0)", "(0,1)", "(1,1)"}
    nonid = t.category.non_identity_morphisms()
    assert set(nonid) == {"(0,0)->(0,1)", "(1,1)->(0,1)"}
    assert t.backward == frozenset({"(1,1)->(0,1)"})
    assert t.forward == frozenset({"(0,0)->(0,1)"})


def test_T2_pentagon():
    t = sp.build_T(2)
    assert len(t.category.objects) == 6
    assert len(t.category.morphisms) == 15  # frozen: comparable pairs in T_2
    squares = t.condition_squares()
    assert len(squares) == 1
    sq = squares[0]
    # the paper's displayed square: pushout of m01 <= m11 -> m12 is m02
    assert sq["inner"] == "(1,1)" and sq["left"] == "(0,1)"
    assert sq["bottom"] == "(1,2)" and sq["corner"] == "(0,2)"
    assert fc.validate_category(t.category).ok


def test_T_object_counts_and_loop_freeness():
    for n in range(0, 7):
        t = sp.build_T(n)
        assert len(t.category.objects) == (n + 1) * (n + 2) // 2
        assert sp.is_loop_free(t.category)


def test_opposite_T2_matches_product_subcategory():
    # T_2^op is the full subcategory of [2] x [2]^op on p <= q
    t2 = sp.build_T(2)
    chain = fc.chain_poset(2)
    prod = fc.combine(chain, fc.opposite(chain), "product")
    keep = [o for o in prod.objects
            if int(fc._split_pair(o)[0]) <= int(fc._split_pair(o)[1])]
    keepset = set(keep)
    morphisms = {m: e for m, e in prod.morphisms.items()
                 if e[0] in keepset and e[1] in keepset}
    comp = {(g, f): h for (g, f), h in prod.composition.items()
            if g in morphisms and f in morphisms}
    sub = fc.FinCategory.build(keep, morphisms,
                               {o: prod.identity[o] for o in keep}, comp)
    iso = fc.find_category_isomorphism(fc.opposite(t2.category), sub)
    assert iso is not None


# -- cosimplicial structure -----------------------------------------------------

def test_cosimplicial_identity_map():
    f = sp.cosimplicial_T((0, 1, 2), 2)
    ident = fc.identity_functor(sp.build_T(2).category)
    assert fc.functor_equal(f, ident)


def test_cosimplicial_outer_face():
    # d^1: [1] -> [2] skips 1, recovering the outer edge of the pentagon
    f = sp.cosimplicial_T(sp.delta_face(1, 2), 2)
    assert f.object_map["(0,0)"] == "(0,0)"
    assert f.object_map["(0,1)"] == "(0,2)"
    assert f.object_map["(1,1)"] == "(2,2)"
    assert f.is_valid()


def test_cosimplicial_degeneracy_collapses():
    f = sp.cosimplicial_T(sp.delta_degeneracy(0, 0), 0)
    assert set(f.object_map.values()) == {"(0,0)"}


def test_cosimplicial_functoriality():
    # T(g∘f) = T(g)∘T(f) for all monotone maps with degrees <= 4
    import itertools

    def monotone_maps(m, n):
        return [v for v in itertools.product(range(n + 1), repeat=m + 1)
                if sp.is_monotone(v)]

    for m, k, n in [(0, 1, 2), (1, 2, 3), (1, 1, 2), (2, 3, 4)]:
        for f in monotone_maps(m, k):
            for g in monotone_maps(k, n):
                lhs = sp.cosimplicial_T(sp.compose_monotone(g, f), n)
                rhs = fc.compose_functors(sp.cosimplicial_T(g, n), sp.cosimplicial_T(f, k))
                assert fc.functor_equal(lhs, rhs)


def test_non_monotone_rejected():
    with pytest.raises(fc.CategoryError):
        sp.cosimplicial_T((1, 0), 1)


# -- truncated nerve ---------------------------------------------------------------

def test_nerve_terminal():
    nv = sp.truncated_nerve(fc.terminal_category(), 3)
    for n in range(4):
        assert len(nv.simplices[n]) == 1
    nd = sp.nondegenerate_counts(nv)
    assert nd == {0: 1, 1: 0, 2: 0, 3: 0}


def test_nerve_interval_counts():
    cat = p01()
    arrows = [(a, b, m) for m, (a, b) in cat.morphisms.items()]
    oracle = oracles.nerve_chain_counts(list(cat.objects), arrows, 2)
    nv = sp.truncated_nerve(cat, 2)
    assert {n: len(nv.simplices[n]) for n in range(3)} == oracle
    assert len(nv.simplices[0]) == 2
    assert len(nv.simplices[1]) == 3
    nd = sp.nondegenerate_counts(nv)
    assert nd[1] == 1 and nd[2] == 0


def test_nerve_simplicial_identities():
    for cat in (fc.terminal_category(), p01(), fc.chain_poset(2),
                fc.discrete_category(["a", "b"])):
        nv = sp.truncated_nerve(cat, 3)
        assert sp.check_simplicial_identities(nv).ok


# -- loop-freeness ------------------------------------------------------------------

def test_loop_free_detects_isomorphism_cycle():
    walk = fc.FinCategory.build(
        ["a", "b"],
        {"id(a)": ("a", "a"), "id(b)": ("b", "b"), "u": ("a", "b"), "v": ("b", "a")},
        {"a": "id(a)", "b": "id(b)"},
        {("id(a)", "id(a)"): "id(a)", ("id(b)", "id(b)"): "id(b)",
         ("u", "id(a)"): "u", ("id(b)", "u"): "u",
         ("v", "id(b)"): "v", ("id(a)", "v"): "v",
         ("v", "u"): "id(a)", ("u", "v"): "id(b)"},
    )
    cyc = sp.find_morphism_cycle(walk)
    assert cyc is not None and len(cyc) == 2
    with pytest.raises(sp.LoopFreeError):
        sp.homology(walk, 1)


# -- homology -------------------------------------------------------------------------

def test_homology_terminal():
    h = sp.homology(fc.terminal_category(), 2)
    assert h.betti == (1, 0, 0)
    assert all(not t for t in h.torsion)


def test_homology_interval_contractible():
    h = sp.homology(p01(), 2)
    assert h.betti == (1, 0, 0)


def test_homology_discrete_two_objects():
    h = sp.homology(fc.discrete_category(["a", "b"]), 1)
    assert h.betti == (2, 0)


def test_homology_circle():
    # the free "parallel pair" category: two objects, two parallel arrows,
    # nerve is a circle: H_0 = Z, H_1 = Z
    cat = fc.FinCategory.build(
        ["a", "b"],
        {"id(a)": ("a", "a"), "id(b)": ("b", "b"), "f": ("a", "b"), "g": ("a", "b")},
        {"a": "id(a)", "b": "id(b)"},
        {("id(a)", "id(a)"): "id(a)", ("id(b)", "id(b)"): "id(b)",
         ("f", "id(a)"): "f", ("id(b)", "f"): "f",
         ("g", "id(a)"): "g", ("id(b)", "g"): "g"},
    )
    assert fc.validate_category(cat).ok
    h = sp.homology(cat, 2)
    assert h.betti == (1, 1, 0)


def test_homology_empty_category():
    h = sp.homology(fc.empty_category(), 1)
    assert h.betti == (0, 0)


def test_boundary_squares_to_zero():
    for cat in (p01(), fc.chain_poset(2), fc.combine(p01(), p01(), "product")):
        cx = sp.normalized_chain_complex(cat, 3)
        for n in range(2, 4):
            prod = sp.la.mat_mul(cx.boundary[n - 1], cx.boundary[n])
            assert all(all(x == 0 for x in row) for row in prod)


def test_homology_of_lattices_with_bottom_is_point():
    # categories with an initial object are contractible
    for cat in (fc.chain_poset(3),
                fc.combine(p01(), p01(), "product"),
                fc.poset_category(["b", "x", "y", "t"],
                                  [("b", "x"), ("b", "y"), ("x", "t"), ("y", "t")])):
        h = sp.homology(cat, 2)
        assert h.betti == (1, 0, 0)
        assert all(not t for t in h.torsion)


def test_chain_complex_json_export():
    cx = sp.normalized_chain_complex(p01(), 2)
    obj = cx.to_json_obj()
    assert obj["max_dim"] == 2
    assert obj["boundary"]["1"] == [[-1], [1]]


# -- induced maps on homology -----------------------------------------------------------

def test_homology_iso_identity():
    assert sp.homology_iso_check(fc.identity_functor(p01()), 2)


def test_homology_iso_projection_square_to_interval():
    square = fc.combine(p01(), p01(), "product")
    proj = fc.Functor(square, p01(),
                      {o: fc._split_pair(o)[0] for o in square.objects},
                      {m: fc._split_pair(m)[0] for m in square.morphisms})
    assert sp.homology_iso_check(proj, 2)


def test_homology_iso_fails_for_single_object_into_discrete_pair():
    pair = fc.discrete_category(["a", "b"])
    pt = fc.terminal_category()
    incl = fc.Functor(pt, pair, {"*": "a"}, {"id(*)": "id(a)"})
    assert not sp.homology_iso_check(incl, 1)
    assert sp.homology_refutes(incl, 1)


def test_homology_iso_collapse_of_circle_fails():
    cat = fc.FinCategory.build(
        ["a", "b"],
        {"id(a)": ("a", "a"), "id(b)": ("b", "b"), "f": ("a", "b"), "g": ("a", "b")},
        {"a": "id(a)", "b": "id(b)"},
        {("id(a)", "id(a)"): "id(a)", ("id(b)", "id(b)"): "id(b)",
         ("f", "id(a)"): "f", ("id(b)", "f"): "f",
         ("g", "id(a)"): "g", ("id(b)", "g"): "g"},
    )
    collapse = fc.Functor(cat, p01(),
                          {"a": "0", "b": "1"},
                          {"id(a)": "id(0)", "id(b)": "id(1)",
                           "f": "le(0,1)", "g": "le(0,1)"})
    assert collapse.is_valid()
    assert not sp.homology_iso_check(collapse, 2)


# -- witnesses ---------------------------------------------------------------------------

def test_witness_isomorphism():
    w = sp.weq_witness(fc.identity_functor(p01()))
    assert w.kind == "isomorphism"
    assert sp.verify_witness(fc.identity_functor(p01()), w)


def test_witness_equivalence():
    ind = fc.FinCategory.build(
        ["a", "b"],
        {"id(a)": ("a", "a"), "id(b)": ("b", "b"), "u": ("a", "b"), "v": ("b", "a")},
        {"a": "id(a)", "b": "id(b)"},
        {("id(a)", "id(a)"): "id(a)", ("id(b)", "id(b)"): "id(b)",
         ("u", "id(a)"): "u", ("id(b)", "u"): "u",
         ("v", "id(b)"): "v", ("id(a)", "v"): "v",
         ("v", "u"): "id(a)", ("u", "v"): "id(b)"},
    )
    incl = fc.Functor(fc.terminal_category(), ind, {"*": "a"}, {"id(*)": "id(a)"})
    w = sp.weq_witness(incl)
    assert w.kind == "equivalence"


def test_witness_adjunction():
    # bottom: * -> 0<1 is left adjoint to the collapse; not an equivalence
    cat = p01()
    bottom = fc.Functor(fc.terminal_category(), cat, {"*": "0"}, {"id(*)": "id(0)"})
    w = sp.weq_witness(bottom)
    assert w.kind == "adjunction"
    assert sp.verify_witness(bottom, w)


def test_witness_none_for_non_equivalence():
    pair = fc.discrete_category(["a", "b"])
    incl = fc.Functor(fc.terminal_category(), pair, {"*": "a"}, {"id(*)": "id(a)"})
    w = sp.weq_witness(incl)
    assert w.kind == "none"


def test_witness_cross_validation_with_homology():
    # equivalence/adjunction witnesses imply homology isomorphism (loop-free)
    cat = p01()
    bottom = fc.Functor(fc.terminal_category(), cat, {"*": "0"}, {"id(*)": "id(0)"})
    w = sp.weq_witness(bottom)
    assert w.kind == "adjunction"
    assert sp.homology_iso_check(bottom, 2)
