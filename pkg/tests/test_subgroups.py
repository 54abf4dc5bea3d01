from fractions import Fraction
from itertools import product

import pytest

from acgraphs.elements import parse_cycles
from acgraphs.errors import PreconditionError, ResourceCapError
from acgraphs.groups import parse_group
from acgraphs.subgroups import (
    JoinOracle,
    abelianization,
    closure,
    covering_numbers,
    derived_subgroup,
    is_soluble,
    mazurov_lift,
    nd_pair,
    normal_closure,
    normal_subgroups,
    psi_k,
    quotient_group,
)

from helpers import brute_mulclose, brute_normal_closure


def idx(group, text):
    return group.index_of(parse_cycles(text, group.elements[0].degree))


def test_closure_empty_seed_is_trivial():
    g = parse_group("sym:4")
    assert closure(g, []).members == (0,)


def test_closure_standard_pair_is_whole_group():
    g = parse_group("sym:4")
    sub = closure(g, [idx(g, "(0 1)"), idx(g, "(0 1 2 3)")])
    assert sub.order == 24


def test_closure_of_three_cycle():
    g = parse_group("sym:4")
    sub = closure(g, [idx(g, "(0 1 2)")])
    assert sub.order == 3


def test_closure_matches_brute_force():
    g = parse_group("sym:4")
    for seed in ([idx(g, "(0 1)")], [idx(g, "(0 1 2)"), idx(g, "(0 1)(2 3)")]):
        ours = {g.elements[i] for i in closure(g, seed).members}
        brute = brute_mulclose([g.elements[i] for i in seed])
        assert ours == brute


def test_normal_closure_identity_tuple():
    g = parse_group("sym:4")
    assert normal_closure(g, [0]).order == 1


def test_normal_closure_klein():
    g = parse_group("sym:4")
    sub = normal_closure(g, [idx(g, "(0 1)(2 3)")])
    assert sub.order == 4
    assert sub.is_normal
    brute = brute_normal_closure(list(g.elements), [parse_cycles("(0 1)(2 3)", 4)])
    assert {g.elements[i] for i in sub.members} == brute


def test_normal_closure_three_cycle_in_sym5():
    g = parse_group("sym:5")
    sub = normal_closure(g, [idx(g, "(0 1 2)")])
    assert sub.order == 60
    assert all(g.elements[i].sign() > 0 for i in sub.members)


def test_normal_closure_is_normal_exhaustively():
    g = parse_group("dihedral:6")
    for i in range(g.order):
        sub = normal_closure(g, [i])
        for m in sub.members:
            for w in range(g.order):
                assert g.conj(m, w) in sub.member_set


def test_derived_subgroups():
    assert derived_subgroup(parse_group("abelian:3,3")).order == 1
    s4 = parse_group("sym:4")
    d = derived_subgroup(s4)
    assert d.order == 12
    assert all(s4.elements[i].sign() > 0 for i in d.members)
    a5 = parse_group("alt:5")
    assert derived_subgroup(a5).order == 60  # perfect


def test_derived_equals_all_pairs_commutator_closure():
    for spec in ("sym:4", "dihedral:6", "sl2:3"):
        g = parse_group(spec)
        comms = {g.comm(a, b) for a in range(g.order) for b in range(g.order)}
        assert closure(g, comms).members == derived_subgroup(g).members


def test_abelianization_examples():
    assert abelianization(parse_group("alt:5")).invariant_factors == ()
    assert abelianization(parse_group("sym:4")).invariant_factors == (2,)
    assert abelianization(parse_group("abelian:2,4")).invariant_factors == (2, 4)
    assert abelianization(parse_group("dihedral:4")).invariant_factors == (2, 2)
    assert abelianization(parse_group("dihedral:6")).invariant_factors == (2, 2)
    assert abelianization(parse_group("cyclic:6")).invariant_factors == (6,)


def test_abelianization_divisibility_chain():
    ab = abelianization(parse_group("abelian:2,2"))
    assert ab.invariant_factors == (2, 2)
    for small, big in zip(ab.invariant_factors, ab.invariant_factors[1:]):
        assert big % small == 0


def test_abelianization_projection_is_homomorphism():
    g = parse_group("sym:4")
    ab = abelianization(g)
    for a in range(0, g.order, 3):
        for b in range(0, g.order, 5):
            assert (
                ab.projection[g.mul(a, b)]
                == ab.projection[a] * ab.projection[b]
            )
    # kernel = derived subgroup
    kernel = {i for i in range(g.order) if ab.projection[i].is_identity()}
    assert kernel == set(derived_subgroup(g).members)


def test_nd_pair_examples():
    assert nd_pair(parse_group("cyclic:5")) == (1, 1)
    assert nd_pair(parse_group("sym:3")) == (1, 1)
    assert nd_pair(parse_group("abelian:2,2")) == (2, 2)
    assert nd_pair(parse_group("cyclic:1")) == (0, 0)


def test_nd_pair_brute_force_cross_check():
    # tiny groups: compare against raw subset search over elements
    for spec in ("sym:3", "abelian:2,2", "cyclic:6", "abelian:2,4"):
        g = parse_group(spec)
        oracle = JoinOracle(g, "normal")
        full = frozenset(range(g.order))

        def gen(subset):
            return oracle.members_of(oracle.join_of_indices(subset)) == full

        sizes_min = None
        sizes_max = 0
        elements = list(range(1, g.order))
        from itertools import combinations

        for size in range(1, 5):
            for sub in combinations(elements, size):
                if not gen(sub):
                    continue
                minimal = all(
                    not gen(sub[:i] + sub[i + 1:]) for i in range(size)
                )
                if sizes_min is None:
                    sizes_min = size
                if minimal:
                    sizes_max = max(sizes_max, size)
        assert nd_pair(g) == (sizes_min, sizes_max)


def test_nd_pair_cap():
    with pytest.raises(ResourceCapError):
        nd_pair(parse_group("sl2:7"), cap=200)


def test_psi_examples():
    assert psi_k(parse_group("cyclic:1"), 1) == 1
    assert psi_k(parse_group("sym:3"), 1) == Fraction(1, 2)


def test_psi_census_matches_exhaustive():
    g = parse_group("sym:3")
    oracle = JoinOracle(g, "normal")
    for k in (1, 2):
        count = sum(
            1
            for tup in product(range(g.order), repeat=k)
            if oracle.members_of(oracle.join_of_indices(tup))
            == frozenset(range(g.order))
        )
        assert psi_k(g, k) == Fraction(count, g.order**k)


def test_psi_soluble_identity():
    for spec in ("sym:3", "sym:4", "dihedral:4"):
        g = parse_group(spec)
        ab = abelianization(g)
        for k in (1, 2):
            assert psi_k(g, k) == psi_k(ab.target, k)


def test_psi_cap():
    with pytest.raises(ResourceCapError):
        psi_k(parse_group("sym:4"), 2, cap=100)


def test_quotient_group_s4_mod_klein_is_s3():
    g = parse_group("sym:4")
    klein = normal_closure(g, [idx(g, "(0 1)(2 3)")])
    q, pi = quotient_group(g, klein)
    assert q.order == 6
    assert not is_soluble(parse_group("alt:5"))
    # projection is a homomorphism
    for a in range(0, 24, 2):
        for b in range(0, 24, 3):
            assert pi[g.mul(a, b)] == q.mul(pi[a], pi[b])


def test_quotient_requires_normal():
    g = parse_group("sym:4")
    two = closure(g, [idx(g, "(0 1)")])
    with pytest.raises(PreconditionError):
        quotient_group(g, two)


def test_normal_subgroup_lattice_of_s4():
    g = parse_group("sym:4")
    assert [s.order for s in normal_subgroups(g)] == [1, 4, 12, 24]
    # dihedral of order 12 is Z2 x S3: three index-2 subgroups, all normal
    d6 = parse_group("dihedral:6")
    assert [s.order for s in normal_subgroups(d6)] == [1, 2, 3, 6, 6, 6, 12]


def test_mazurov_trivial_modulo():
    g = parse_group("sym:3")
    triv = closure(g, [])
    t = (idx(g, "(0 1)"),)
    assert mazurov_lift(g, triv, t) == t


def test_mazurov_lift_already_valid():
    g = parse_group("sym:3")
    a3 = normal_closure(g, [idx(g, "(0 1 2)")])
    t = (idx(g, "(0 1)"),)
    lifted = mazurov_lift(g, a3, t)
    assert lifted is not None
    oracle = JoinOracle(g, "normal")
    assert oracle.generates(lifted)


def test_mazurov_exhaustive_s4_klein():
    g = parse_group("sym:4")
    klein = next(s for s in normal_subgroups(g) if s.order == 4)
    q, pi = quotient_group(g, klein)
    q_oracle = JoinOracle(q, "normal")
    oracle = JoinOracle(g, "normal")
    eligible = [i for i in range(g.order) if q_oracle.generates([pi[i]])]
    assert eligible
    for i in eligible:
        lifted = mazurov_lift(g, klein, (i,))
        assert lifted is not None
        assert oracle.generates(lifted)
        # witness differs from g_i by an element of the Klein subgroup
        assert g.mul(g.inv(i), lifted[0]) in klein.member_set


def test_mazurov_precondition_errors():
    g = parse_group("sym:4")
    klein = next(s for s in normal_subgroups(g) if s.order == 4)
    with pytest.raises(PreconditionError):
        mazurov_lift(g, klein, (idx(g, "(0 1)(2 3)"),))  # image not generating


def test_solubility():
    for spec, expected in (
        ("sym:4", True),
        ("dihedral:6", True),
        ("abelian:3,3", True),
        ("alt:5", False),
        ("sl2:5", False),
    ):
        assert is_soluble(parse_group(spec)) is expected


def test_covering_numbers_alt5():
    cn = covering_numbers(parse_group("alt:5"))
    assert cn.or_value == 2
    assert cn.cn_value == 3


def test_covering_numbers_need_simple():
    with pytest.raises(PreconditionError):
        covering_numbers(parse_group("sym:4"))
