"""Reduction classification, application and the extended wheel detector."""

import pytest

from opt1planar import (
    DynamicGraph,
    NotOptimal,
    StructuralFault,
    canonical_form,
    detect_xw,
    expand_cr,
    expand_sr,
    make_xw,
    precheck,
    random_optimal,
    recognize_quadratic,
)
from opt1planar.graph import neighborhood
from opt1planar.rules import (
    CC_VECTOR,
    CRReduction,
    Kind,
    SRReduction,
    apply_cr,
    apply_sr,
    classify,
    match_cc,
)

from conftest import isomorphic


def test_cc_vector_frozen():
    assert CC_VECTOR == (4, 4, 5, 5, 5, 5, 6)


def test_wheel_candidates_offer_nothing():
    # rim vertices carry the crossed-cube degree vector without the cube,
    # the smallest wheel carries the all-5 vector; no reductions anywhere
    for k in (3, 4, 5, 7):
        g = make_xw(k)[0]
        for v in g.vertices():
            if g.degree(v) == 6:
                assert classify(g, v) == []


def test_match_cc_rejects_wheel_rim():
    g = make_xw(5)[0]
    for c in range(2, 12):
        assert match_cc(g, c) is None


def test_classify_raises_on_bad_vector():
    g = DynamicGraph.from_edges(
        7, [(6, i) for i in range(6)] + [(i, (i + 1) % 6) for i in range(6)]
    )
    with pytest.raises(NotOptimal):
        classify(g, 6)


def test_crossed_cube_found_after_expansion():
    g, emb = make_xw(4)
    red = sorted(emb.crossings)[0]
    rec = expand_cr(emb, red)
    inner = set(rec.inner)
    assert g.n == 14 and precheck(g)
    for u in rec.inner:
        hits = classify(g, u)
        assert len(hits) == 1
        cr, cls = hits[0]
        assert isinstance(cr, CRReduction)
        assert set(cr.inner) == inner
        assert cls.kind is Kind.GOOD  # the old diagonals are gone
    # reducing it restores the wheel exactly
    back = apply_cr(g, classify(g, rec.inner[0])[0][0])
    assert set(back.inner) == inner
    assert canonical_form(g) == canonical_form(make_xw(4)[0])


def test_crossed_star_found_after_split():
    g, emb = make_xw(4)
    # split off a pole: needs a planar rotation entry with no chord
    # between the entries two steps either side
    pos = next(
        i for i, w in enumerate(emb.rot[0])
        if not emb.is_red(0, w)
        and not g.has_edge(emb.rot[0][i - 2], emb.rot[0][(i + 2) % 8])
    )
    rec = expand_sr(emb, 0, pos)
    x = rec.x
    assert g.degree(x) == 6 and precheck(g)
    hits = classify(g, x)
    assert hits, "split vertex must offer at least one reduction"
    goods = [r for r, c in hits if c.kind is Kind.GOOD]
    assert goods
    for r in goods:
        assert isinstance(r, SRReduction) and r.x == x
    apply_sr(g, goods[0])
    assert canonical_form(g) == canonical_form(make_xw(4)[0])


def test_good_sr_edits_preserve_membership(small_members):
    # brute force: apply every good crossed-star reduction on offer and
    # check counts plus the reference recognizer on the result
    done = 0
    for gg in small_members[:4]:
        g0 = gg.graph
        for x in sorted(g0.vertices()):
            if g0.degree(x) != 6:
                continue
            try:
                hits = classify(g0, x)
            except NotOptimal:
                pytest.fail("member classified as out of class")
            for red, cls in hits:
                if cls.kind is not Kind.GOOD or not isinstance(red, SRReduction):
                    continue
                g = g0.copy()
                n0, m0 = g.n, g.m
                apply_sr(g, red)
                assert (g.n, g.m) == (n0 - 1, m0 - 4)
                assert precheck(g)
                assert recognize_quadratic(g).accepted
                done += 1
    assert done >= 20


def test_apply_sr_guards_mate_degrees():
    # hand-built reduction whose mates are too thin; must fault, not corrupt
    g = make_xw(3)[0]
    red = SRReduction(
        x=2, target=3, mates=(4, 5), others=(0, 1, 6),
        black_key=(0, 1), red_keys=((3, 4), (3, 5)),
    )
    with pytest.raises(StructuralFault):
        apply_sr(g, red)


def test_apply_cr_guards_outer_degrees():
    g = make_xw(3)[0]
    red = CRReduction(
        inner=(2, 3, 4, 5), outer=(0, 1, 6, 7),
        red_keys=((0, 6), (1, 7)),
    )
    with pytest.raises(StructuralFault):
        apply_cr(g, red)


def test_unsuccessful_accesses_happen():
    # blocked entries exist in the wild; this seed is known to hit a few
    from opt1planar import recognize_linear

    res = recognize_linear(random_optimal(200, seed=7).graph)
    assert res.accepted
    assert res.stats.unsuccessful >= 1


# -- extended wheels ----------------------------------------------------------


def test_make_xw_shape():
    for k in (3, 4, 10):
        g, emb = make_xw(k)
        n = 2 * k + 2
        assert g.n == n and g.m == 4 * n - 8
        assert g.degree(0) == g.degree(1) == 2 * k
        assert all(g.degree(c) == 6 for c in range(2, n))
        assert not g.has_edge(0, 1)
        assert len(emb.crossings) == 2 * (n - 2)


def test_make_xw_rejects_small_k():
    with pytest.raises(ValueError):
        make_xw(2)


def test_detect_xw_roundtrip():
    for k in range(3, 41):
        g = make_xw(k)[0]
        st = detect_xw(g)
        assert st is not None and st.k == k
        if k > 3:
            assert {st.p, st.q} == {0, 1}
        assert sorted(st.cycle) == list(range(2, 2 * k + 2))


def test_detect_xw_ignores_labels():
    import random

    g = make_xw(6)[0]
    perm = list(range(g.n))
    random.Random(5).shuffle(perm)
    h = DynamicGraph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
    st = detect_xw(h)
    assert st is not None and st.k == 6
    assert isomorphic(g, h)


def test_detect_xw_negatives():
    g = make_xw(5)[0]
    g.remove_edge(2, 3)
    assert detect_xw(g) is None

    from opt1planar import mutate_2switch

    h = mutate_2switch(make_xw(5)[0], seed=1)
    assert detect_xw(h) is None

    # an 8-vertex graph that is 6-regular but whose complement is no
    # perfect matching does not exist; feed something close instead
    k33ish = DynamicGraph.from_edges(8, [
        (i, j) for i in range(8) for j in range(i + 1, 8)
        if (i + j) % 2 == 1 or (i, j) in ((0, 2), (1, 3), (4, 6), (5, 7))
    ])
    assert detect_xw(k33ish) is None


def test_detect_xw_wrong_counts():
    g = DynamicGraph.from_edges(8, [(0, i) for i in range(1, 8)])
    assert detect_xw(g) is None
