import numpy as np
import pytest

from acgraphs.elements import parse_cycles
from acgraphs.errors import PreconditionError, ResourceCapError
from acgraphs.graphs import (
    GraphHandle,
    GraphMode,
    cayley_diameter,
    components,
    cover_check,
    diameter,
    distance,
    soluble_component_check,
)
from acgraphs.groups import parse_group
from acgraphs.subgroups import (
    Subgroup,
    derived_subgroup,
    normal_closure,
    normal_subgroups,
)

from helpers import (
    brute_components,
    brute_diameter,
    brute_distance,
    brute_graph,
    brute_normally_generates,
    brute_generates,
)


def idx(group, text):
    return group.index_of(parse_cycles(text, group.elements[0].degree))


def whole(group):
    return Subgroup(group, tuple(range(group.order)), True)


# -- vertex sets -----------------------------------------------------------------


def test_vertices_alt5():
    g = parse_group("alt:5")
    h = GraphHandle(g, 2, GraphMode.full_ac())
    assert h.vertex_count == 60 * 60 - 1


def test_vertices_nielsen_z3z3():
    g = parse_group("abelian:3,3")
    h = GraphHandle(g, 2, GraphMode.nielsen())
    assert h.vertex_count == 48  # (9-1)(9-3) generating pairs


def test_vertices_trivial_group():
    g = parse_group("cyclic:1")
    h = GraphHandle(g, 1, GraphMode.full_ac())
    assert h.vertex_count == 1


def test_vertex_stream_matches_brute_predicate():
    g = parse_group("sym:3")
    h = GraphHandle(g, 2, GraphMode.full_ac())
    els = list(g.elements)
    expected = {
        tup
        for tup in __import__("itertools").product(els, repeat=2)
        if brute_normally_generates(els, list(tup))
    }
    ours = {
        (g.elements[a], g.elements[b]) for a, b in h.vertices()
    }
    assert ours == expected
    assert len(ours) == h.vertex_count


def test_sl2_vertex_counts_account_for_the_center():
    # the four central pairs are the only non-vertices
    for spec, order in (("sl2:5", 120), ("sl2:7", 336)):
        g = parse_group(spec)
        h = GraphHandle(g, 2, GraphMode.full_ac())
        assert h.vertex_count == order * order - 4


def test_graph_tuple_cap():
    g = parse_group("sym:5")
    with pytest.raises(ResourceCapError):
        GraphHandle(g, 3, GraphMode.full_ac(), cap=10_000)


# -- neighbors ---------------------------------------------------------------------


def test_nielsen_neighbor_census_k2():
    g = parse_group("abelian:3,3")
    h = GraphHandle(g, 2, GraphMode.nielsen())
    for tup in h.vertices():
        assert len(h.neighbors(tup)) <= 8


def test_full_ac_neighbor_census():
    g = parse_group("alt:5")
    h = GraphHandle(g, 2, GraphMode.full_ac())
    v = (idx(g, "(0 1 2)"), 0)
    nbrs = h.neighbors(v)
    assert len(nbrs) <= 8 + 2 + 2 * 60
    assert all(h.is_vertex(u) for u in nbrs)


def test_inversion_neighbor_example():
    g = parse_group("sym:3")
    a3 = normal_closure(g, [idx(g, "(0 1 2)")])
    h = GraphHandle(g, 2, GraphMode.full_ac(), a3)
    v = (idx(g, "(0 1 2)"), 0)
    assert (idx(g, "(0 2 1)"), 0) in h.neighbors(v)


def test_neighbors_match_brute_moves():
    g = parse_group("sym:3")
    els = list(g.elements)
    for mode_name, mode in (
        ("full-ac", GraphMode.full_ac()),
        ("nielsen", GraphMode.nielsen()),
        ("extended-nielsen", GraphMode.extended_nielsen()),
    ):
        h = GraphHandle(g, 2, mode)
        pred = (
            (lambda t: brute_normally_generates(els, list(t)))
            if mode.is_ac
            else (lambda t: brute_generates(els, list(t)))
        )
        verts, adj = brute_graph(els, els, 2, pred, mode_name)
        for v in verts:
            v_idx = tuple(g.index_of(e) for e in v)
            ours = {
                tuple(g.elements[i] for i in u) for u in h.neighbors(v_idx)
            }
            assert ours == adj[v], f"{mode_name}: neighbor drift at {v}"


def test_restricted_neighbors_use_inverse_conjugators_by_default():
    g = parse_group("sl2:5")
    h = GraphHandle(g, 2, GraphMode.restricted_ac())
    v = (g.generators[0], g.generators[1])
    sym_nbrs = set(h.neighbors(v))
    hd = GraphHandle(g, 2, GraphMode.restricted_ac(directed=True))
    directed_nbrs = set(hd.neighbors(v))
    assert directed_nbrs <= sym_nbrs


def test_neighbors_undirected():
    g = parse_group("abelian:2,4")
    h = GraphHandle(g, 2, GraphMode.extended_nielsen())
    for tup in h.vertices():
        for u in h.neighbors(tup):
            assert tup in h.neighbors(u)


def test_neighbors_rejects_non_vertex():
    g = parse_group("sym:3")
    h = GraphHandle(g, 2, GraphMode.full_ac())
    with pytest.raises(PreconditionError):
        h.neighbors((0, 0))


# -- components ---------------------------------------------------------------------


def test_components_nielsen_z3z3():
    h = GraphHandle(parse_group("abelian:3,3"), 2, GraphMode.nielsen())
    parts = components(h)
    assert sorted(parts.sizes) == [24, 24]


def test_components_nielsen_z5z5():
    h = GraphHandle(parse_group("abelian:5,5"), 2, GraphMode.nielsen())
    parts = components(h)
    assert sorted(parts.sizes) == [120, 120, 120, 120]


def test_components_alt5_connected():
    h = GraphHandle(parse_group("alt:5"), 2, GraphMode.full_ac())
    assert components(h).count == 1


def test_components_extended_nielsen_z2z2():
    h = GraphHandle(parse_group("abelian:2,2"), 2, GraphMode.extended_nielsen())
    parts = components(h)
    assert parts.count == 1
    assert parts.sizes == (6,)


def test_components_match_brute_force():
    g = parse_group("abelian:3,3")
    els = list(g.elements)
    h = GraphHandle(g, 2, GraphMode.nielsen())
    verts, adj = brute_graph(els, els, 2, lambda t: brute_generates(els, list(t)),
                             "nielsen")
    brute = sorted(len(c) for c in brute_components(verts, adj))
    assert sorted(components(h).sizes) == brute


# -- distance and diameter -------------------------------------------------------------


def test_distance_reflexive_and_symmetric():
    g = parse_group("sym:3")
    h = GraphHandle(g, 2, GraphMode.full_ac())
    rng = np.random.default_rng(0)
    codes = np.flatnonzero(h.vertex_mask)
    tuples = [h.decode(int(c)) for c in rng.choice(codes, size=6, replace=False)]
    for u in tuples:
        assert distance(h, u, u) == 0
        for v in tuples:
            assert distance(h, u, v) == distance(h, v, u)


def test_distance_matches_brute_bfs():
    g = parse_group("abelian:3,3")
    els = list(g.elements)
    h = GraphHandle(g, 2, GraphMode.nielsen())
    verts, adj = brute_graph(els, els, 2, lambda t: brute_generates(els, list(t)),
                             "nielsen")
    rng = np.random.default_rng(1)
    sample = [verts[int(i)] for i in rng.integers(len(verts), size=8)]
    for u in sample:
        for v in sample:
            u_idx = tuple(g.index_of(e) for e in u)
            v_idx = tuple(g.index_of(e) for e in v)
            assert distance(h, u_idx, v_idx) == brute_distance(adj, u, v)


def test_distance_none_across_components():
    g = parse_group("abelian:3,3")
    h = GraphHandle(g, 2, GraphMode.nielsen())
    parts = components(h)
    u = h.decode(int(parts.reps[0]))
    v = h.decode(int(parts.reps[1]))
    assert distance(h, u, v) is None


def test_diameter_singleton_component():
    g = parse_group("cyclic:1")
    h = GraphHandle(g, 1, GraphMode.full_ac())
    assert diameter(h, [0]) == 0


def test_diameter_matches_brute_force():
    g = parse_group("abelian:3,3")
    els = list(g.elements)
    for mode_name, mode in (
        ("nielsen", GraphMode.nielsen()),
        ("extended-nielsen", GraphMode.extended_nielsen()),
    ):
        h = GraphHandle(g, 2, mode)
        pred = lambda t: brute_generates(els, list(t))
        verts, adj = brute_graph(els, els, 2, pred, mode_name)
        parts = components(h)
        brutes = sorted(
            brute_diameter(adj, comp) for comp in brute_components(verts, adj)
        )
        ours = sorted(
            diameter(h, parts.codes_of(lab)) for lab in range(parts.count)
        )
        assert ours == brutes


def test_diameter_estimate_is_lower_bound():
    g = parse_group("alt:5")
    h = GraphHandle(g, 2, GraphMode.full_ac())
    parts = components(h)
    est = diameter(h, parts.codes_of(0), exact=False)
    assert est <= 8  # exact value, computed by full sweep


def test_cayley_diameter_cyclic():
    g = parse_group("cyclic:6")
    assert cayley_diameter(g, g.generators) == 3


# -- quotient checks ---------------------------------------------------------------------


def test_cover_check_trivial_modulo():
    g = parse_group("sym:3")
    triv = Subgroup(g, (0,), True)
    report = cover_check(g, triv, 1)
    assert report.surjective
    assert report.group_components == report.quotient_components


def test_cover_check_s3_mod_a3():
    g = parse_group("sym:3")
    a3 = normal_closure(g, [idx(g, "(0 1 2)")])
    report = cover_check(g, a3, 1)
    assert report.surjective
    # quotient Z2 at k=1 has a single vertex; its preimage: the 3 transpositions
    assert report.quotient_components == 1


def test_cover_check_s4_mod_klein():
    g = parse_group("sym:4")
    klein = next(s for s in normal_subgroups(g) if s.order == 4)
    report = cover_check(g, klein, 2)
    assert report.surjective


def test_soluble_component_check_abelian():
    report = soluble_component_check(parse_group("abelian:3,3"), 2)
    assert report.group_components == report.quotient_components


def test_soluble_component_check_sym3():
    report = soluble_component_check(parse_group("sym:3"), 2)
    assert report.group_components == 1
    assert report.quotient_components == 1


def test_soluble_component_check_nilpotent_dihedral4():
    report = soluble_component_check(parse_group("dihedral:4"), 2)
    assert report.group_components == report.quotient_components


def test_soluble_component_check_rejects_insoluble():
    with pytest.raises(PreconditionError):
        soluble_component_check(parse_group("alt:5"), 2)


# -- codec and misc ----------------------------------------------------------------------


def test_codec_round_trip():
    g = parse_group("sym:4")
    a4 = derived_subgroup(g)
    h = GraphHandle(g, 2, GraphMode.full_ac(), a4)
    rng = np.random.default_rng(3)
    for _ in range(50):
        tup = tuple(int(a4.members[i]) for i in rng.integers(a4.order, size=2))
        assert h.decode(h.encode(tup)) == tup


def test_encode_rejects_outside_members():
    g = parse_group("sym:4")
    a4 = derived_subgroup(g)
    h = GraphHandle(g, 2, GraphMode.full_ac(), a4)
    with pytest.raises(PreconditionError):
        h.encode((idx(g, "(0 1)"), 0))


def test_geodesic_moves_replay():
    g = parse_group("sym:3")
    h = GraphHandle(g, 2, GraphMode.full_ac())
    codes = np.flatnonzero(h.vertex_mask)
    src, dst = int(codes[0]), int(codes[-1])
    path = h.geodesic(src, dst)
    assert path is not None
    d = h.bfs_distances([src], target=dst)
    assert len(path) == int(d[dst])


def test_full_ac_equals_extended_nielsen_on_abelian():
    # conjugation is trivial in an abelian group, so the whole-group AC
    # graph and the inversion-extended replacement graph literally agree
    g = parse_group("abelian:2,4")
    h_ac = GraphHandle(g, 2, GraphMode.full_ac())
    h_en = GraphHandle(g, 2, GraphMode.extended_nielsen())
    assert h_ac.vertex_count == h_en.vertex_count
    for tup in h_ac.vertices():
        assert h_ac.neighbors(tup) == h_en.neighbors(tup)


def test_restricted_mode_needs_generators():
    g = parse_group("cyclic:1")
    with pytest.raises(PreconditionError):
        GraphHandle(g, 2, GraphMode.restricted_ac())


def test_graph_mode_validation():
    with pytest.raises(ValueError):
        GraphMode("bogus")
    with pytest.raises(ValueError):
        GraphMode("nielsen", conjugators=(0,))


def test_soluble_component_check_disconnected_case():
    # inversion merges det classes d and -d, so the rank-2 graph over
    # Z5xZ5 splits into exactly two components; the bijection must hold
    g = parse_group("abelian:5,5")
    h = GraphHandle(g, 2, GraphMode.extended_nielsen())
    parts = components(h)
    assert sorted(parts.sizes) == [240, 240]
    rep = soluble_component_check(g, 2)
    assert rep.group_components == 2
    assert rep.quotient_components == 2
    assert len({q for _, _, q in rep.bijection}) == 2
