"""Rotation systems, the five-clause verifier, surgeries and reconstruction."""

import random

import pytest

from opt1planar import (
    DynamicGraph,
    make_xw,
    precheck,
    random_optimal,
    reconstruct,
    recognize_linear,
    verify_embedding,
)
from opt1planar.embedding import (
    EmbeddedGraph,
    expand_cr,
    expand_sr,
    face_orbits,
    kite_corners,
    separating_quad,
    skeleton_rotation,
    xw_embedding,
)
from opt1planar.graph import StructuralFault, edge_key
from opt1planar.records import apply_record


def edges_of(g: DynamicGraph):
    return sorted(g.edges())


def test_face_orbits_square():
    rot = {0: [1, 3], 1: [2, 0], 2: [3, 1], 3: [0, 2]}
    faces = face_orbits(rot)
    assert sorted(len(f) for f in faces) == [4, 4]
    # V - E + F = 4 - 4 + 2
    assert len(rot) - 4 + len(faces) == 2


def test_face_orbits_cube():
    # 3-regular on 8 vertices embeds with 6 square faces; take the
    # rotation system from the planarity checker
    import networkx as nx

    ok, nxemb = nx.check_planarity(nx.hypercube_graph(3))
    assert ok
    data = nxemb.get_data()
    rot = {v: list(order) for v, order in data.items()}
    faces = face_orbits(rot)
    assert len(faces) == 6 and all(len(f) == 4 for f in faces)


def test_wheel_embedding_verifies():
    for k in range(3, 26):
        g, emb = make_xw(k)
        rep = verify_embedding(g, emb)
        assert rep.ok, rep.failures
        n = g.n
        assert len(emb.crossings) == 2 * (n - 2)
        sk = skeleton_rotation(emb)
        assert len(face_orbits(sk)) == n - 2  # one kite per face


def test_kite_corners_form_skeleton_squares():
    g, emb = make_xw(5)
    for e in emb.crossings:
        a, b, c, d = kite_corners(emb, e)
        assert len({a, b, c, d}) == 4
        for u, v in ((a, b), (b, c), (c, d), (d, a)):
            assert g.has_edge(u, v) and not emb.is_red(u, v)


def test_verifier_catches_scrambled_rotation():
    g, emb = make_xw(4)
    bad = emb.copy()
    r = bad.rot[2]
    r[0], r[2] = r[2], r[0]
    rep = verify_embedding(g, bad)
    assert not rep.ok and rep.failures


def test_verifier_catches_lost_crossing():
    g, emb = make_xw(4)
    bad = emb.copy()
    e = sorted(bad.crossings)[0]
    bad.unpair(e)
    rep = verify_embedding(g, bad)
    assert not rep.ok
    assert any(f.startswith(("(b)", "(e)")) for f in rep.failures)


def test_verifier_catches_adjacency_drift():
    g, emb = make_xw(4)
    bad = emb.copy()
    bad.rot[2][0] = 9  # not a neighbor of 2
    rep = verify_embedding(g, bad)
    assert not rep.ok and "does not match adjacency" in rep.failures[0]


def test_verifier_catches_vertex_set_drift():
    g, emb = make_xw(4)
    bad = emb.copy()
    del bad.rot[2]
    assert not verify_embedding(g, bad).ok


def test_expand_cr_grows_and_verifies():
    g, emb = make_xw(4)
    rec = expand_cr(emb, sorted(emb.crossings)[0])
    assert g.n == 14 and g.m == 4 * 14 - 8
    assert len(rec.inner) == 4 and len(rec.outer) == 4
    rep = verify_embedding(g, emb)
    assert rep.ok, rep.failures


def test_expand_sr_grows_and_verifies():
    g, emb = make_xw(4)
    pos = next(
        i for i, w in enumerate(emb.rot[0])
        if not emb.is_red(0, w)
        and not g.has_edge(emb.rot[0][i - 2], emb.rot[0][(i + 2) % 8])
    )
    rec = expand_sr(emb, 0, pos)
    assert g.n == 11 and g.m == 4 * 11 - 8
    assert g.degree(rec.x) == 6
    rep = verify_embedding(g, emb)
    assert rep.ok, rep.failures


def test_expand_sr_refuses_thin_or_red_sites():
    g, emb = make_xw(3)
    with pytest.raises(StructuralFault):
        expand_sr(emb, 0, 0)  # degree 6, too thin to split
    g4, emb4 = make_xw(4)
    red_pos = next(i for i, w in enumerate(emb4.rot[0]) if emb4.is_red(0, w))
    with pytest.raises(StructuralFault):
        expand_sr(emb4, 0, red_pos)


def test_random_surgery_chain_stays_verified():
    rng = random.Random(11)
    g, emb = make_xw(4)
    for step in range(24):
        if rng.random() < 0.5:
            live = [e for e in emb.crossings]
            expand_cr(emb, live[rng.randrange(len(live))])
        else:
            vs = [v for v in emb.rot if g.degree(v) >= 8]
            rng.shuffle(vs)
            done = False
            for v in vs:
                rv = emb.rot[v]
                d = len(rv)
                for pos in range(d):
                    if emb.is_red(v, rv[pos]):
                        continue
                    if g.has_edge(rv[pos - 2], rv[(pos + 2) % d]):
                        continue
                    expand_sr(emb, v, pos)
                    done = True
                    break
                if done:
                    break
        assert precheck(g)
        if step % 6 == 5:
            rep = verify_embedding(g, emb)
            assert rep.ok, (step, rep.failures)
    rep = verify_embedding(g, emb)
    assert rep.ok, rep.failures


def test_expansion_records_replay_to_identity():
    # expanding and then replaying the edit record forwards must return
    # to the very same labeled graph, both rules
    g, emb = make_xw(5)
    before = edges_of(g)
    rec = expand_cr(emb, sorted(emb.crossings)[2])
    assert edges_of(g) != before
    apply_record(g, rec)
    assert edges_of(g) == before

    g2, emb2 = make_xw(5)
    before2 = edges_of(g2)
    pos = next(
        i for i, w in enumerate(emb2.rot[0])
        if not emb2.is_red(0, w)
        and not g2.has_edge(emb2.rot[0][i - 2], emb2.rot[0][(i + 2) % 10])
    )
    rec2 = expand_sr(emb2, 0, pos)
    apply_record(g2, rec2)
    assert edges_of(g2) == before2


def test_reconstruct_returns_the_input_labeling():
    for n, seed in [(30, 0), (57, 1), (124, 2), (300, 3)]:
        g = random_optimal(n, seed=seed).graph
        res = recognize_linear(g)
        assert res.accepted
        emb = reconstruct(res.trace, res.final_k, terminal=(res.terminal, res.xw))
        assert edges_of(emb.graph) == edges_of(g)
        rep = verify_embedding(g, emb)
        assert rep.ok, rep.failures


def test_reconstruct_checks_terminal_k():
    g = random_optimal(20, seed=0).graph
    res = recognize_linear(g)
    with pytest.raises(ValueError):
        reconstruct(res.trace, res.final_k + 1, terminal=(res.terminal, res.xw))


def test_reconstruct_without_terminal_on_canonical_wheel():
    # trace replay from make_xw labeling works when the run never renames
    g, _ = make_xw(6)
    res = recognize_linear(g)
    assert res.accepted and not res.trace
    emb = reconstruct([], res.final_k)
    assert edges_of(emb.graph) == edges_of(g)


def test_trace_replays_forward_to_terminal():
    g = random_optimal(80, seed=9).graph
    res = recognize_linear(g)
    h = g.copy()
    for rec in res.trace:
        apply_record(h, rec)
    assert edges_of(h) == edges_of(res.terminal)


def test_xw_embedding_matches_detected_structure():
    from opt1planar import detect_xw

    g = make_xw(7)[0]
    st = detect_xw(g)
    emb = xw_embedding(g, st.p, st.q, list(st.cycle))
    assert verify_embedding(g, emb).ok


def test_separating_quad_none_on_wheels():
    for k in range(3, 12):
        assert separating_quad(make_xw(k)[1]) is None


def test_separating_quad_witness_is_a_cut():
    import networkx as nx
    from conftest import to_nx

    gg = random_optimal(24, seed=3, prefer="cr")
    assert gg.used_cr
    quad = separating_quad(gg.embedding)
    assert quad is not None
    # the four corners trace a skeleton cycle
    for i in range(4):
        a, b = quad[i], quad[(i + 1) % 4]
        assert gg.graph.has_edge(a, b)
        assert edge_key(a, b) not in gg.embedding.crossings
    h = to_nx(gg.graph)
    h.remove_nodes_from(quad)
    assert not nx.is_connected(h)
