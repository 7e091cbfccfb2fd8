import itertools

import numpy as np
import pytest

from lfuzzord.frame import boolean_frame, chain_frame
from lfuzzord import fuzzy_order as fo
from lfuzzord.fuzzy_order import (
    FuzzySubset,
    LOrderedSet,
    MultipleCertifiers,
    check_axioms,
    check_distributive,
    chi,
    crisp_lorder,
    down_closure,
    has_right_adjoint,
    image,
    induced_crisp_order,
    is_complete,
    is_galois,
    is_L_lattice,
    is_monotone,
    join,
    join_oracle,
    meet,
    meet_oracle,
    subset_intersection,
    subset_union,
    up_closure,
)

L2 = chain_frame(2)
L3 = chain_frame(3)
M = 1  # the middle element of the 3-chain


def two_point_symmetric():
    """Two points p=0, q=1 with e(p,q) = e(q,p) = m over the 3-chain."""
    return LOrderedSet(L3, [[2, M], [M, 2]])


def chain_poset(n):
    return np.tri(n, dtype=bool).T


class TestAxioms:
    def test_crisp_poset_is_valid(self):
        P = crisp_lorder(L3, chain_poset(3))
        assert check_axioms(P) == []

    def test_two_point_symmetric_valid(self):
        assert check_axioms(two_point_symmetric()) == []

    def test_e3_violation(self):
        P = LOrderedSet(L3, [[2, 2], [2, 2]])
        assert {"axiom": "E3", "witness": [0, 1]} in check_axioms(P)

    def test_e1_violation(self):
        P = LOrderedSet(L3, [[M, 0], [0, 2]])
        assert any(v["axiom"] == "E1" for v in check_axioms(P))

    def test_e2_violation(self):
        # e(0,1) = e(1,2) = top but e(0,2) = bottom
        e = np.full((3, 3), 0, dtype=int)
        np.fill_diagonal(e, 2)
        e[0, 1] = e[1, 2] = 2
        P = LOrderedSet(L3, e)
        assert any(v["axiom"] == "E2" for v in check_axioms(P))

    def test_frame_mismatch(self):
        with pytest.raises(fo.FrameMismatch):
            LOrderedSet(L2, [[1, 7], [0, 1]])


class TestCrispOrder:
    def test_recovers_poset(self):
        leq = chain_poset(4)
        P = crisp_lorder(L3, leq)
        assert np.array_equal(induced_crisp_order(P), leq)

    def test_symmetric_example_discrete(self):
        P = two_point_symmetric()
        assert np.array_equal(induced_crisp_order(P), np.eye(2, dtype=bool))


class TestClosures:
    def test_down_closure_of_top_point(self):
        P = crisp_lorder(L3, chain_poset(3))
        phi = chi(L3, [2])
        assert down_closure(P, phi).entries == {0: 2, 1: 2, 2: 2}

    def test_down_closure_symmetric(self):
        P = two_point_symmetric()
        phi = FuzzySubset(L3, {0: M})
        got = down_closure(P, phi)
        assert got(0) == M and got(1) == M

    def test_empty_closures(self):
        P = two_point_symmetric()
        empty = FuzzySubset(L3, {})
        assert down_closure(P, empty).entries == {}
        assert up_closure(P, empty).entries == {}

    def test_up_closure_of_bottom_point(self):
        P = crisp_lorder(L3, chain_poset(3))
        assert up_closure(P, chi(L3, [0])).entries == {0: 2, 1: 2, 2: 2}


class TestImage:
    def test_identity(self):
        A = FuzzySubset(L3, {0: M, 2: 2})
        assert image(lambda x: x, A) == A

    def test_constant(self):
        A = FuzzySubset(L3, {0: M, 1: 2})
        assert image(lambda x: 7, A).entries == {7: 2}

    def test_two_to_one_fiber_join(self):
        A = FuzzySubset(L3, {0: M, 1: 2})
        got = image({0: 5, 1: 5}, A)
        assert got.entries == {5: 2}


class TestJoinMeet:
    def test_crisp_lattice_binary_join(self):
        d = boolean_frame(2)  # used as a crisp 4-element lattice carrier
        P = crisp_lorder(L3, d.leq)
        r = join(P, chi(L3, [1, 2]))
        assert r.exists and r.element == 3
        r = meet(P, chi(L3, [1, 2]))
        assert r.exists and r.element == 0

    def test_symmetric_example_no_join(self):
        P = two_point_symmetric()
        assert not join(P, FuzzySubset(L3, {0: M})).exists

    def test_singleton_join_is_point(self):
        P = two_point_symmetric()
        for x in range(2):
            assert join(P, chi(L3, [x])).element == x
            assert meet(P, chi(L3, [x])).element == x

    def test_empty_join_is_least(self):
        P = crisp_lorder(L3, chain_poset(3))
        empty = FuzzySubset(L3, {})
        assert join(P, empty).element == 0
        assert meet(P, empty).element == 2

    def test_empty_join_missing_without_least(self):
        P = crisp_lorder(L3, np.eye(2, dtype=bool))  # 2-antichain
        assert not join(P, FuzzySubset(L3, {})).exists

    def test_certificate_contents(self):
        P = crisp_lorder(L3, chain_poset(3))
        r = join(P, chi(L3, [1]))
        assert r.certificate == {x: int(P.e[1, x]) for x in range(3)}

    def test_multiple_certifiers_on_corrupt_structure(self):
        bad = LOrderedSet(L3, [[2, 2], [2, 2]])  # violates E3
        with pytest.raises(MultipleCertifiers):
            join(bad, chi(L3, [0]))


def enumerate_valid_lorders(frame, size):
    cells = [(x, y) for x in range(size) for y in range(size) if x != y]
    for values in itertools.product(range(frame.size), repeat=len(cells)):
        e = np.full((size, size), frame.top, dtype=np.int16)
        for (x, y), v in zip(cells, values):
            e[x, y] = v
        P = LOrderedSet(frame, e)
        if not check_axioms(P):
            yield P


class TestOracleAgreement:
    @pytest.mark.parametrize("frame,size", [(L2, 1), (L2, 2), (L3, 2), (L3, 3)])
    def test_certificate_equals_oracle(self, frame, size):
        structures = 0
        for P in enumerate_valid_lorders(frame, size):
            structures += 1
            for values in itertools.product(range(frame.size), repeat=size):
                S = FuzzySubset(frame, dict(enumerate(values)))
                a, b = join(P, S), join_oracle(P, S)
                assert a.exists == b.exists and a.element == b.element
                a, b = meet(P, S), meet_oracle(P, S)
                assert a.exists == b.exists and a.element == b.element
        assert structures > 0


class TestMonotoneGalois:
    def test_identity_galois(self):
        P = two_point_symmetric()
        ident = [0, 1]
        assert is_monotone(ident, P, P)
        assert is_galois(ident, ident, P, P)

    def test_constant_map_monotone(self):
        P = crisp_lorder(L3, chain_poset(3))
        assert is_monotone([1, 1, 1], P, P)

    def test_non_monotone_crisp_map(self):
        P = crisp_lorder(L3, chain_poset(2))
        assert not is_monotone([1, 0], P, P)
        assert fo.monotone_witness([1, 0], P, P) == (0, 1)

    def test_composition_of_monotone_is_monotone(self):
        P = two_point_symmetric()
        Q = crisp_lorder(L3, chain_poset(2))
        for f in itertools.product(range(2), repeat=2):
            for g in itertools.product(range(2), repeat=2):
                if is_monotone(list(f), P, Q) and is_monotone(list(g), Q, P):
                    comp = [g[f[x]] for x in range(2)]
                    assert is_monotone(comp, P, P)


class TestAdjoints:
    def test_identity_partner(self):
        P = crisp_lorder(L3, chain_poset(2))
        rep = has_right_adjoint([0, 1], P, P)
        assert rep.found and rep.partner == [0, 1] and rep.consistent

    def test_two_chain_join_preserving(self):
        P = crisp_lorder(L3, chain_poset(2))
        rep = has_right_adjoint([0, 1], P, P)
        assert rep.preserves_joins

    def test_antichain_to_top_has_none(self):
        P = crisp_lorder(L3, np.eye(2, dtype=bool))
        Q = crisp_lorder(L3, chain_poset(2))
        rep = has_right_adjoint([1, 1], P, Q)
        assert not rep.found
        assert not rep.domain_complete  # the antichain has no empty-set join

    def test_guard_falls_back(self):
        P = crisp_lorder(L3, chain_poset(3))
        rep = has_right_adjoint([0, 1, 2], P, P, guard=5)
        assert rep.mode == "preservation-only"


class TestCompleteness:
    def test_crisp_lattice_is_l_lattice(self):
        d = boolean_frame(2)
        P = crisp_lorder(L3, d.leq)
        assert is_L_lattice(P).holds

    def test_symmetric_example_not_l_lattice(self):
        rep = is_L_lattice(two_point_symmetric())
        assert not rep.holds and rep.mode == "exhaustive"

    def test_singleton_complete(self):
        P = LOrderedSet(L3, [[2]])
        assert is_complete(P).holds

    def test_sampled_mode(self):
        P = crisp_lorder(L3, chain_poset(3))
        rep = is_complete(P, guard=10, samples=50)
        assert rep.mode == "sampled" and rep.holds


class TestDistributivity:
    def test_crisp_distributive_lattice(self):
        P = crisp_lorder(L3, boolean_frame(2).leq)
        rep = check_distributive(P)
        assert rep.distributive and rep.laws_agree
        assert rep.restricted_meet_law and rep.restricted_join_law

    def test_n5_fails_with_witness(self):
        n5 = np.array([
            [1, 1, 1, 1, 1],
            [0, 1, 1, 0, 1],
            [0, 0, 1, 0, 1],
            [0, 0, 0, 1, 1],
            [0, 0, 0, 0, 1],
        ], dtype=bool)
        rep = check_distributive(crisp_lorder(L2, n5))
        assert not rep.distributive and rep.witness is not None

    def test_non_lattice_reported(self):
        rep = check_distributive(two_point_symmetric())
        assert rep.status == "not-an-l-lattice"

    def test_two_chain_frame_matches_crisp_reduct(self):
        # over the Boolean frame, fuzzy distributivity == crisp distributivity
        for leq in (chain_poset(3), boolean_frame(2).leq):
            P = crisp_lorder(L2, np.asarray(leq))
            rep = check_distributive(P)
            assert rep.distributive


class TestSubsetAlgebra:
    def test_union_idempotent(self):
        S = FuzzySubset(L3, {0: M, 2: 2})
        assert subset_union(S, S) == S

    def test_disjoint_support_union(self):
        S = FuzzySubset(L3, {0: M})
        T = FuzzySubset(L3, {1: 2})
        assert subset_union(S, T).support() == [0, 1]
        assert subset_intersection(S, T).entries == {}

    def test_union_join_law_on_l_lattice(self):
        P = crisp_lorder(L3, chain_poset(3))
        F = L3
        for sv in itertools.product(range(3), repeat=3):
            for tv in itertools.product(range(3), repeat=3):
                S = FuzzySubset(F, dict(enumerate(sv)))
                T = FuzzySubset(F, dict(enumerate(tv)))
                u = subset_union(S, T)
                assert join(P, u).element == max(join(P, S).element,
                                                 join(P, T).element)
                assert meet(P, u).element == min(meet(P, S).element,
                                                 meet(P, T).element)
