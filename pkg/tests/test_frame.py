import itertools

import numpy as np
import pytest

from lfuzzord.frame import (
    Frame,
    NotAPartialOrder,
    NotALattice,
    NotDistributive,
    SizeLimitExceeded,
    boolean_frame,
    build_frame,
    chain_frame,
    frame_from_json,
    join_subset,
    meet_subset,
    product_frame,
    verify_heyting_identities,
)


def brute_residuum(leq, meet, a, b):
    """Independent oracle: largest c with a /\\ c <= b, by direct scan."""
    best = None
    for c in range(len(leq)):
        if leq[meet[a][c]][b]:
            if best is None or leq[best][c]:
                best = c
    # confirm best really dominates every candidate
    for c in range(len(leq)):
        if leq[meet[a][c]][b]:
            assert leq[c][best]
    return best


def as_lists(frame):
    return frame.leq.tolist(), frame.meet.tolist()


M3_LEQ = [
    # bottom, a, b, c, top with three incomparable atoms
    [1, 1, 1, 1, 1],
    [0, 1, 0, 0, 1],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 0, 1],
]

N5_LEQ = [
    # 0 < a < b < 1 and 0 < c < 1 with c incomparable to a, b
    [1, 1, 1, 1, 1],
    [0, 1, 1, 0, 1],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 0, 1],
]


class TestBuildFrame:
    def test_three_chain_residua(self):
        f = chain_frame(3)
        # frozen from the brute scan: imp(1, m) = m, imp(m, 0) = 0
        leq, meet = as_lists(f)
        assert f.imp[2, 1] == brute_residuum(leq, meet, 2, 1) == 1
        assert f.imp[1, 0] == brute_residuum(leq, meet, 1, 0) == 0

    def test_bottom_implies_everything(self):
        for f in (chain_frame(4), boolean_frame(2)):
            for x in range(f.size):
                assert f.imp[f.bottom, x] == f.top

    def test_m3_rejected(self):
        with pytest.raises(NotDistributive):
            build_frame(M3_LEQ)

    def test_n5_rejected(self):
        with pytest.raises(NotDistributive):
            build_frame(N5_LEQ)

    def test_not_reflexive(self):
        with pytest.raises(NotAPartialOrder):
            build_frame([[1, 0], [0, 0]])

    def test_not_antisymmetric(self):
        with pytest.raises(NotAPartialOrder):
            build_frame([[1, 1], [1, 1]])

    def test_not_transitive(self):
        t = np.eye(4, dtype=bool)
        t[0, 1] = t[1, 2] = True
        with pytest.raises(NotAPartialOrder):
            build_frame(t)

    def test_no_lattice(self):
        # two maximal elements over two minimal ones: no lub for the bottoms
        t = np.eye(4, dtype=bool)
        t[0, 2] = t[0, 3] = t[1, 2] = t[1, 3] = True
        with pytest.raises(NotALattice):
            build_frame(t)

    def test_carrier_cap(self):
        with pytest.raises(SizeLimitExceeded):
            chain_frame(65)
        chain_frame(65, carrier_cap=70)


class TestConstructors:
    def test_chain_2_is_boolean(self):
        c = chain_frame(2)
        b = boolean_frame(1)
        assert np.array_equal(c.leq, b.leq)
        assert c.bottom == 0 and c.top == 1

    def test_boolean_2_is_diamond(self):
        d = boolean_frame(2)
        assert d.size == 4
        assert d.bottom == 0 and d.top == 3
        assert d.meet[1, 2] == 0 and d.join[1, 2] == 3
        # complementary atoms: imp(a, 0) = b
        assert d.imp[1, 0] == 2 and d.imp[2, 0] == 1

    def test_product_chain2_chain3(self):
        p = product_frame(chain_frame(2), chain_frame(3))
        assert p.size == 6
        assert p.top == 5 and p.labels[5] == "(1,1)"
        assert p.bottom == 0

    def test_element_index(self):
        f = chain_frame(3)
        assert f.element_index("m") == 1
        assert f.element_index(2) == 2
        assert f.element_index("2") == 2
        with pytest.raises(Exception):
            f.element_index("zzz")
        with pytest.raises(Exception):
            f.element_index(9)


class TestSubsetOps:
    def test_empty_join_is_bottom(self):
        f = chain_frame(3)
        assert join_subset(f, []) == f.bottom
        assert meet_subset(f, []) == f.top

    def test_diamond_atoms_meet(self):
        d = boolean_frame(2)
        assert meet_subset(d, [1, 2]) == 0

    def test_chain_full_join(self):
        f = chain_frame(3)
        assert join_subset(f, [0, 1, 2]) == 2


def zoo():
    frames = [chain_frame(n) for n in range(2, 9)]
    frames += [boolean_frame(k) for k in range(0, 4)]
    frames += [
        product_frame(chain_frame(2), chain_frame(3)),
        product_frame(chain_frame(2), chain_frame(4)),
        product_frame(chain_frame(3), chain_frame(2)),
    ]
    return frames


class TestLaws:
    @pytest.mark.parametrize("f", zoo(), ids=lambda f: f"n{f.size}-{f.labels[-1]}")
    def test_residuation_adjunction(self, f):
        n = f.size
        for a, b, x in itertools.product(range(n), repeat=3):
            assert f.leq[f.meet[a, x], b] == f.leq[x, f.imp[a, b]]

    @pytest.mark.parametrize("f", zoo(), ids=lambda f: f"n{f.size}-{f.labels[-1]}")
    def test_imp_top_iff_le(self, f):
        for a in range(f.size):
            for b in range(f.size):
                assert (f.imp[a, b] == f.top) == f.leq[a, b]

    @pytest.mark.parametrize("f", zoo(), ids=lambda f: f"n{f.size}-{f.labels[-1]}")
    def test_lattice_identities(self, f):
        n = f.size
        idx = np.arange(n)
        assert np.array_equal(f.meet, f.meet.T)
        assert np.array_equal(f.join, f.join.T)
        assert np.array_equal(f.meet[idx, idx], idx)
        assert np.array_equal(f.join[idx, idx], idx)
        for a in range(n):
            # associativity and absorption
            assert np.array_equal(f.meet[f.meet[a, :][:, None], idx[None, :]],
                                  f.meet[a, f.meet])
            assert np.array_equal(f.join[f.join[a, :][:, None], idx[None, :]],
                                  f.join[a, f.join])
            assert np.array_equal(f.meet[a, f.join[a, :]], np.full(n, a))
            assert np.array_equal(f.join[a, f.meet[a, :]], np.full(n, a))

    @pytest.mark.parametrize("f", zoo(), ids=lambda f: f"n{f.size}-{f.labels[-1]}")
    def test_heyting_identities_hold(self, f):
        assert verify_heyting_identities(f) == []

    def test_imp_against_brute_oracle(self):
        for f in (chain_frame(4), boolean_frame(3), product_frame(chain_frame(2), chain_frame(3))):
            leq, meet = as_lists(f)
            for a in range(f.size):
                for b in range(f.size):
                    assert f.imp[a, b] == brute_residuum(leq, meet, a, b)


class TestSerialization:
    def test_round_trip(self):
        f = product_frame(chain_frame(2), chain_frame(3))
        doc = f.to_json()
        g = frame_from_json(doc)
        assert f == g and g.labels == f.labels

    def test_immutable(self):
        f = chain_frame(3)
        with pytest.raises(ValueError):
            f.meet[0, 0] = 1
