from itertools import combinations

import pytest
from hypothesis import given, settings

from msplit import gfp
from msplit.errors import ColoopPresent, DimensionMismatch, ForeignSubset, LabelCollision, LoopPresent, NotACircuit
from msplit.matroid import GroundSubset, Matroid, from_columns, from_matrix

from conftest import brute_circuits, labelsets, matroids, sets

K4_TRIANGLES = [{"e1", "e2", "e4"}, {"e2", "e3", "e5"}, {"e1", "e3", "e6"}, {"e4", "e5", "e6"}]
K4_SQUARES = [{"e1", "e2", "e5", "e6"}, {"e1", "e3", "e4", "e5"}, {"e2", "e3", "e4", "e6"}]


def all_subsets(m):
    return range(m.full_mask + 1)


class TestConstruction:
    def test_f1_is_u24(self, F1):
        assert F1.rank == 2
        for k, indep in ((2, True), (3, False)):
            for combo in combinations(F1.ground, k):
                assert F1.is_independent(combo) is indep

    def test_from_matrix_row_major(self):
        m = from_matrix(3, [[1, 0, 1], [0, 1, 1]], "abc")
        assert m.matrix.column(2) == (1, 1)

    def test_from_matrix_modulus_mismatch(self):
        with pytest.raises(DimensionMismatch):
            from_matrix(3, gfp.FieldMatrix(2, [[1, 1]]), "ab")

    def test_loop_rejected(self):
        with pytest.raises(LoopPresent) as err:
            from_columns(2, [(1, 0), (0, 0), (1, 0)], "abc")
        assert err.value.label == "b"

    def test_coloop_rejected(self):
        with pytest.raises(ColoopPresent) as err:
            from_columns(2, [(1, 0), (1, 0), (0, 1)], "abc")
        assert err.value.label == "c"

    def test_label_collision(self):
        with pytest.raises(LabelCollision):
            from_columns(2, [(1,), (1,)], "aa")

    def test_label_count(self):
        with pytest.raises(DimensionMismatch):
            from_columns(2, [(1,), (1,)], "abc")

    def test_derived_skips_checks(self):
        m = Matroid(gfp.FieldMatrix(2, [[1, 0]]), "ab", derived=True)
        assert m.circuits()[0].members.labels == ("b",)


class TestRank:
    def test_examples(self, F1, F2):
        assert F1.rank_of(list("abc")) == 2
        assert F1.rank_of([]) == 0
        assert F2.rank_of(["e1", "e2", "e4"]) == 2

    def test_independence(self, F1, F5):
        assert F1.is_independent(list("ab"))
        assert not F1.is_independent(list("abc"))
        assert F5.is_independent("a")

    def test_foreign_label(self, F1):
        with pytest.raises(ForeignSubset):
            F1.rank_of(["x"])

    def test_foreign_ground(self, F1, F4):
        with pytest.raises(ForeignSubset):
            F1.rank_of(F4.subset("a"))

    @given(matroids(max_cols=6))
    @settings(max_examples=30)
    def test_monotone_submodular(self, m):
        for a in all_subsets(m):
            for b in all_subsets(m):
                ra, rb = m.rank_of(a), m.rank_of(b)
                assert m.rank_of(a | b) + m.rank_of(a & b) <= ra + rb
                if a & b == a:
                    assert ra <= rb


class TestCircuits:
    def test_f1(self, F1):
        assert [c.members.labels for c in F1.circuits()] == [
            ("a", "b", "c"), ("a", "b", "d"), ("a", "c", "d"), ("b", "c", "d")]
        assert labelsets(F1.circuits()) == brute_circuits(F1)

    def test_f2(self, F2):
        found = labelsets(F2.circuits())
        assert found == {frozenset(s) for s in K4_TRIANGLES + K4_SQUARES}
        assert found == brute_circuits(F2)
        sizes = [len(c.members) for c in F2.circuits()]
        assert sizes == sorted(sizes)

    def test_f3(self, F3):
        assert labelsets(F3.circuits()) == sets("abc", "def") == brute_circuits(F3)

    def test_coefficients(self, F1, F4):
        assert F1.circuit_coefficients(list("abc")).entries == (1, 1, 2)
        assert F1.circuit_coefficients(list("acd")).entries == (1, 1, 1)
        assert F4.circuit_coefficients(list("abc")).entries == (1, 1, 2)

    def test_coefficients_not_a_circuit(self, F1):
        with pytest.raises(NotACircuit):
            F1.circuit_coefficients(list("ab"))
        with pytest.raises(NotACircuit):
            F1.circuit_coefficients(list("abcd"))

    @given(matroids())
    @settings(max_examples=40)
    def test_match_definition(self, m):
        assert labelsets(m.circuits()) == brute_circuits(m)

    @given(matroids())
    @settings(max_examples=40)
    def test_coefficients_are_normalized_dependencies(self, m):
        for c in m.circuits():
            assert c.coeffs[0] == 1 and all(c.coeffs)
            assert m.matrix.submatrix(c.members.indices).apply(c.coeffs).is_zero()

    @given(matroids())
    @settings(max_examples=40)
    def test_circuit_axioms(self, m):
        masks = [c.bits for c in m.circuits()]
        for a in masks:
            for b in masks:
                if a != b:
                    assert a & b != a
                    common = a & b
                    while common:
                        e = common & -common
                        common ^= e
                        rest = (a | b) & ~e
                        assert any(c & rest == c for c in masks)


class TestBases:
    def test_f1(self, F1):
        assert labelsets(F1.bases()) == {frozenset(c) for c in combinations("abcd", 2)}

    def test_f4(self, F4):
        assert labelsets(F4.bases()) == sets("ab", "ac", "bc")

    def test_f5(self, F5):
        assert labelsets(F5.bases()) == sets(*"abcde")

    @given(matroids())
    @settings(max_examples=40)
    def test_exchange(self, m):
        bases = {b.members.bits for b in m.bases()}
        for b1 in bases:
            for b2 in bases:
                for x in GroundSubset(b1 & ~b2, m.ground).indices:
                    assert any(((b1 & ~(1 << x)) | (1 << y)) in bases
                               for y in GroundSubset(b2 & ~b1, m.ground).indices)


def brute_cocircuits(m):
    """Minimal sets whose removal drops the rank."""
    r = m.rank
    hits = [s for s in range(1, m.full_mask + 1) if m.rank_of(m.full_mask & ~s) < r]
    return {frozenset(GroundSubset(s, m.ground)) for s in hits if not any(t != s and t & s == t for t in hits)}


class TestDual:
    def test_f1_self_dual(self, F1):
        d = F1.dual()
        assert d.rank == 2
        assert len(d.circuits()) == 4
        assert labelsets(d.circuits()) == labelsets(F1.circuits())

    def test_ranks(self, F2, F4):
        assert F4.dual().rank == 1
        assert F2.dual().rank == 3

    def test_cocircuits(self, F1, F2):
        assert F1.is_cocircuit(list("bcd"))
        assert F2.is_cocircuit(["e1", "e4", "e6"])
        assert not F1.is_cocircuit(list("cd"))

    @given(matroids())
    @settings(max_examples=40)
    def test_dual_circuits_are_cocircuits(self, m):
        d = m.dual()
        assert d.rank == m.size - m.rank
        assert labelsets(d.circuits()) == brute_cocircuits(m)

    @given(matroids())
    @settings(max_examples=40)
    def test_double_dual(self, m):
        assert labelsets(m.dual().dual().circuits()) == labelsets(m.circuits())


class TestGirth:
    def test_examples(self, F1, F2, F5):
        assert (F1.girth(), F2.girth(), F5.girth()) == (3, 3, 2)


class TestConnectivity:
    def test_separation_examples(self, F1, F2, F3):
        assert F1.connectivity_separation(1) is None
        x, y = F3.connectivity_separation(1)
        assert set(x) == set("abc") and set(y) == set("def")
        x, y = F2.connectivity_separation(3)
        assert set(x) in K4_TRIANGLES or set(y) in K4_TRIANGLES
        assert F2.rank_of(x) + F2.rank_of(y) - F2.rank <= 2

    def test_n_connected(self, F2, F3):
        assert F2.is_n_connected(3)
        assert not F2.is_n_connected(4)
        assert not F3.is_n_connected(2)
        assert not F3.is_connected()

    def test_vertical(self, F2, F3):
        assert F2.is_vertically_n_connected(3)
        assert F2.is_vertically_n_connected(4)
        assert not F3.is_vertically_n_connected(2)

    def test_bad_k(self, F1):
        with pytest.raises(ValueError):
            F1.connectivity_separation(0)

    @given(matroids())
    @settings(max_examples=60)
    def test_connected_iff_pairs_share_circuit(self, m):
        masks = [c.bits for c in m.circuits()]
        pairs_ok = all(any(c >> i & 1 and c >> j & 1 for c in masks)
                       for i, j in combinations(range(m.size), 2))
        assert m.is_connected() == pairs_ok


class TestEulerian:
    def test_f3(self, F3):
        assert labelsets(F3.eulerian_decomposition()) == sets("abc", "def")
        assert len(F3.all_eulerian_decompositions()) == 1

    def test_f4(self, F4):
        assert labelsets(F4.eulerian_decomposition()) == sets("abc")

    def test_f2_not_eulerian(self, F2):
        assert F2.eulerian_decomposition() is None
        assert F2.all_eulerian_decompositions() == []

    @given(matroids(max_cols=7))
    @settings(max_examples=40)
    def test_decompositions_partition(self, m):
        circuits = {c.bits for c in m.circuits()}
        for d in m.all_eulerian_decompositions():
            masks = [c.bits for c in d]
            assert all(c in circuits for c in masks)
            assert sum(c.bit_count() for c in masks) == m.size
            union = 0
            for c in masks:
                assert not union & c
                union |= c
            assert union == m.full_mask
