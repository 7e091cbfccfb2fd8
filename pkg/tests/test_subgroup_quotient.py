import itertools

import numpy as np
import pytest

from lfuzzord.frame import chain_frame
from lfuzzord.groups import (
    FiniteGroup,
    FreeAbelian,
    LinearHom,
    RegionMap,
    TableMap,
    Window,
    maps_equal,
)
from lfuzzord.ogroup import LOrderedGroup, check_fog, order_from_cone
from lfuzzord import subgroup as sg
from lfuzzord.subgroup import (
    InfiniteIndex,
    NotAFilter,
    NotNormal,
    build_quotient,
    convex_hull,
    down_cone_identity,
    induced_embedding,
    is_convex,
    is_L_subgroup,
    is_normal,
    kernel_filter,
    level_subgroup,
    natural_projection,
    quotient_battery,
)

L3 = chain_frame(3)
M = 1
TOP = 2
Z = FreeAbelian(1)
W8 = Window.symmetric(8, 1)

CRISP_Z_CONE = RegionMap(1, [([((1,), 0, ">=")], TOP)], 0)
FUZZY_Z_CONE = RegionMap(1, [([((1,), 0, "==")], TOP), ([((1,), 0, ">")], M)], 0)
# the parity subgroup: 1 on even numbers, m on odd ones
PARITY = RegionMap(1, [([((1,), (2, 0), "mod")], TOP)], M)
EVEN_INDICATOR = RegionMap(1, [([((1,), (2, 0), "mod")], TOP)], 0)


def crisp_z():
    return order_from_cone(Z, L3, CRISP_Z_CONE, W8)


def fuzzy_z():
    return order_from_cone(Z, L3, FUZZY_Z_CONE, W8)


class TestSubgroupPredicates:
    def test_constant_top(self):
        S = RegionMap(1, [], TOP)
        assert is_L_subgroup(Z, L3, S, W8).ok
        assert is_normal(Z, L3, S, W8).ok

    def test_parity(self):
        rep = is_normal(Z, L3, PARITY, W8)
        assert rep.ok

    def test_odd_indicator_not_subgroup(self):
        S = RegionMap(1, [([((1,), (2, 1), "mod")], TOP)], 0)
        rep = is_L_subgroup(Z, L3, S, W8)
        assert not rep.ok
        assert any(v["kind"] == "subadditive" for v in rep.violations)

    def test_finite_group_normality(self):
        G4 = FiniteGroup.cyclic(4)
        S = TableMap([TOP, 0, TOP, 0])
        assert is_normal(G4, L3, S).ok


class TestConvexity:
    def test_crisp_even_not_convex(self):
        rep = is_convex(EVEN_INDICATOR, crisp_z(), W8)
        assert not rep.ok
        assert rep.violations[0]["kind"] == "betweenness"

    def test_parity_convex_in_fuzzy_order(self):
        rep = is_convex(PARITY, fuzzy_z(), W8)
        assert rep.ok and rep.details["direct"] and rep.details["one-sided"]

    def test_constant_top_convex(self):
        rep = is_convex(RegionMap(1, [], TOP), crisp_z(), W8)
        assert rep.ok

    def test_criteria_agree_on_enumerated_subgroups(self):
        # both convexity readings coincide for every normal L-subgroup of Z4
        G = LOrderedGroup(FiniteGroup.cyclic(4), L3,
                          cone=TableMap([TOP, M, M, M]))
        for values in itertools.product(range(3), repeat=4):
            S = TableMap(list(values))
            if not is_normal(FiniteGroup.cyclic(4), L3, S).ok:
                continue
            rep = is_convex(S, G)
            assert not any(v["kind"] == "criterion-mismatch"
                           for v in rep.violations)


class TestConvexHull:
    def test_already_convex_fixed(self):
        G = fuzzy_z()
        hull, rep = convex_hull(PARITY, G, W8, guard=10)
        assert rep.ok is True or all(
            v["kind"] != "hull-not-convex" for v in rep.violations)
        assert maps_equal(hull, PARITY, W8.points())
        assert rep.details["input-was-convex"]

    def test_hull_of_crisp_even_is_everything(self):
        G = crisp_z()
        hull, rep = convex_hull(EVEN_INDICATOR, G, W8, guard=10)
        for p in W8.points():
            assert hull.value(p) == TOP

    def test_point_mass_under_discrete_order(self):
        G = fuzzy_z()
        S = RegionMap(1, [([((1,), 0, "==")], TOP)], 0)
        hull, rep = convex_hull(S, G, W8, guard=10)
        assert hull.value((0,)) == TOP
        assert all(hull.value(p) == 0 for p in W8.points() if p != (0,))

    def test_idempotent(self):
        G = crisp_z()
        S = RegionMap(1, [([((1,), 0, "=="),], TOP), ([((1,), 2, "==")], M)], 0)
        h1, _ = convex_hull(S, G, W8, guard=10)
        h2, _ = convex_hull(h1, G, W8, guard=10)
        assert maps_equal(h1, h2, W8.points())

    def test_minimality_enumerated_on_z4(self):
        G = LOrderedGroup(FiniteGroup.cyclic(4), L3,
                          cone=TableMap([TOP, M, M, M]))
        S = TableMap([TOP, 0, 0, 0])
        hull, rep = convex_hull(S, G, guard=10**4)
        assert rep.details["minimality-mode"] == "enumerated"
        assert not any(v["kind"] == "not-minimal" for v in rep.violations)

    def test_hull_of_normal_is_normal_filter(self):
        G = fuzzy_z()
        hull, rep = convex_hull(EVEN_INDICATOR, G, W8, guard=10)
        assert rep.details.get("hull-normal-filter") is True


class TestLevelSubgroup:
    def test_parity_level(self):
        members, rep = level_subgroup(Z, L3, PARITY, W8)
        assert rep.ok and members == [(k,) for k in range(-8, 9, 2)]
        assert rep.details["alpha"] == TOP

    def test_constant_top_level_is_everything(self):
        members, rep = level_subgroup(Z, L3, RegionMap(1, [], TOP), W8)
        assert len(members) == 17

    def test_point_level_on_z4(self):
        members, rep = level_subgroup(FiniteGroup.cyclic(4), L3,
                                      TableMap([TOP, M, M, M]))
        assert members == [0]

    def test_not_normal_raises(self):
        S = RegionMap(1, [([((1,), (2, 1), "mod")], TOP)], 0)
        with pytest.raises(NotNormal):
            level_subgroup(Z, L3, S, W8)


class TestQuotient:
    def test_parity_quotient(self):
        G = fuzzy_z()
        Q = build_quotient(G, PARITY, W8)
        assert Q.group.backend.size == 2
        assert Q.alpha == TOP
        et = Q.group.e_table
        assert et[0, 0] == et[1, 1] == TOP
        assert et[0, 1] == et[1, 0] == M
        assert Q.s_tilde[Q.group.backend.zero] == TOP
        assert sorted(Q.s_tilde) == [M, TOP]
        assert Q.battery.ok

    def test_constant_filter_gives_one_coset(self):
        G = fuzzy_z()
        Q = build_quotient(G, RegionMap(1, [], TOP), W8)
        assert Q.group.backend.size == 1

    def test_projection(self):
        G = fuzzy_z()
        Q = build_quotient(G, PARITY, W8)
        rep = natural_projection(G, PARITY, Q, W8)
        assert rep.ok

    def test_identity_filter_projection_bijective(self):
        G = LOrderedGroup(FiniteGroup.cyclic(4), L3,
                          cone=TableMap([TOP, M, M, M]))
        S = TableMap([TOP, 0, 0, 0])
        # not convex in this order; use the battery without enforcement
        structure, rep = quotient_battery(G, S, require_filter=False)
        assert structure is not None and structure.group.backend.size == 4

    def test_infinite_index(self):
        G = crisp_z()
        S = RegionMap(1, [([((1,), 0, "==")], TOP)], 0)  # level = {0}
        with pytest.raises((InfiniteIndex, NotAFilter)):
            build_quotient(G, S, W8)

    def test_alpha_below_top(self):
        # a filter whose identity value is m, on Z4 with the discrete order
        G4 = FiniteGroup.cyclic(4)
        G = LOrderedGroup(G4, L3, cone=TableMap([TOP, 0, 0, 0]))
        S = TableMap([M, 0, M, 0])
        Q = build_quotient(G, S)
        assert Q.alpha == M
        assert Q.group.backend.size == 2
        assert Q.s_tilde[Q.group.backend.zero] == M

    def test_non_convex_breaks_battery(self):
        # the filter axioms matter: dropping convexity must surface downstream
        G = LOrderedGroup(FiniteGroup.cyclic(2), L3, cone=TableMap([TOP, M]))
        S = TableMap([TOP, 0])
        assert not is_convex(S, G).ok
        structure, rep = quotient_battery(G, S, require_filter=False)
        assert not rep.ok
        assert any("s-tilde" in v["kind"] for v in rep.violations)

    def test_first_enumerated_z4_filter(self):
        # lexicographically-first nonconstant normal L-subgroup of Z4 under
        # the discrete order, found by direct table enumeration
        G4 = FiniteGroup.cyclic(4)
        G = LOrderedGroup(G4, L3, cone=TableMap([TOP, 0, 0, 0]))
        found = None
        for values in itertools.product(range(3), repeat=4):
            S = TableMap(list(values))
            if len(set(values)) == 1:
                continue
            if not is_normal(G4, L3, S).ok:
                continue
            if not is_convex(S, G).ok:
                continue
            found = values
            break
        assert found == (M, 0, 0, 0)
        Q = build_quotient(G, TableMap(list(found)))
        assert Q.battery.ok and Q.group.backend.size == 4


class TestKernel:
    def test_doubling_on_crisp_z(self):
        G = crisp_z()
        f = LinearHom([[2]])
        K, rep = kernel_filter(f, G, G, W8)
        assert rep.ok
        assert K.value((0,)) == TOP and K.value((1,)) == 0

    def test_identity_kernel_on_fuzzy_z4(self):
        G4 = FiniteGroup.cyclic(4)
        G = LOrderedGroup(G4, L3, cone=TableMap([TOP, M, M, M]))
        K, rep = kernel_filter(lambda x: x, G, G)
        assert rep.ok
        assert K.value(0) == TOP and K.value(1) == M and K.value(2) == M

    def test_embedding_doubling(self):
        G = crisp_z()
        rep = induced_embedding(LinearHom([[2]]), G, G, W8)
        assert rep.ok
        assert rep.details["level-members"] == [(0,)]
        assert rep.details["full-quotient"] == "infinite-index"

    def test_constant_zero_to_trivial(self):
        G4 = FiniteGroup.cyclic(4)
        G = LOrderedGroup(G4, L3, cone=TableMap([TOP, M, M, M]))
        T = LOrderedGroup(FiniteGroup.cyclic(1), L3, cone=TableMap([TOP]))
        K, rep = kernel_filter(lambda x: 0, G, T)
        assert rep.ok
        assert all(K.value(x) == TOP for x in range(4))
        emb = induced_embedding(lambda x: 0, G, T)
        assert emb.ok and emb.details["full-quotient"] == "built"

    def test_non_monotone_rejected(self):
        G = crisp_z()
        with pytest.raises(sg.NotMonotone):
            kernel_filter(LinearHom([[-1]]), G, G, W8)


class TestDownConeIdentity:
    def test_parity_holds(self):
        rep = down_cone_identity(PARITY, fuzzy_z(), W8)
        assert rep.ok and rep.details["identity-holds"] and rep.details["convex"]

    def test_crisp_even_fails_both_ways(self):
        rep = down_cone_identity(EVEN_INDICATOR, crisp_z(), W8)
        assert not rep.details["identity-holds"]
        assert not rep.details["convex"]
        assert not any(v["kind"] == "equivalence" for v in rep.violations)

    def test_point_mass_discrete(self):
        S = RegionMap(1, [([((1,), 0, "==")], TOP)], 0)
        rep = down_cone_identity(S, fuzzy_z(), W8)
        assert rep.ok

    def test_equivalence_on_enumerated_z4_subgroups(self):
        G4 = FiniteGroup.cyclic(4)
        G = LOrderedGroup(G4, L3, cone=TableMap([TOP, M, M, M]))
        for values in itertools.product(range(3), repeat=4):
            S = TableMap(list(values))
            if not is_L_subgroup(G4, L3, S).ok:
                continue
            rep = down_cone_identity(S, G)
            assert not any(v["kind"] == "equivalence" for v in rep.violations)
