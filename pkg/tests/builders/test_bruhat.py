"""Tests for bruhat.py."""

import pytest

from poco.builders.bruhat import (
    BruhatOrder,
    bruhat_poset,
    interchange,
    inversions,
    minimal_swap_pair,
    swap_pairs,
)
from poco.cohomology.cellular import (
    cell_signs,
    hc,
    is_cellular,
    sign_violations,
)
from poco.cohomology.singular import (
    Simplex,
    hs,
)
from poco.errors.exceptions import PreconditionError
from poco.posets.presheaf import constant


class TestPermutations:

    def test_inversions(self):
        assert inversions("4321") == 6
        assert inversions("1243") == 1
        assert inversions("1234") == 0

    def test_swap_pairs(self):
        assert swap_pairs("4321") == [(2, 1), (3, 2), (4, 3)]
        assert swap_pairs("312") == [(3, 1), (3, 2)]
        assert swap_pairs("123") == []

    def test_minimal_swap_pair(self):
        assert minimal_swap_pair("4321") == (2, 1)
        with pytest.raises(PreconditionError):
            minimal_swap_pair("123")

    def test_interchange(self):
        assert interchange("4321", (2, 1)) == "4312"
        assert interchange("231", (3, 1)) == "213"


class TestBruhatOrder:

    def test_s3(self):
        order = BruhatOrder(3)
        poset = order.poset
        assert len(poset) == 5
        assert order.minimum == "321"
        assert poset.corank("321") == 2
        assert poset.upper_covers("231") == ("132", "213")
        assert poset.has_diamond_property()

    def test_s2(self):
        assert bruhat_poset(2).elements == ("21",)

    @pytest.mark.parametrize("n", [1, 6])
    def test_out_of_range(self, n):
        with pytest.raises(PreconditionError):
            BruhatOrder(n)

    def test_canonical_chain(self):
        chain = BruhatOrder(4).canonical_chain("4321")
        assert chain == Simplex(
            ("4321", "4312", "4132", "1432", "1423", "1243")
        )

    def test_canonical_generators(self):
        order = BruhatOrder(3)
        assert order.canonical_generators["132"] == Simplex(("132",))
        assert set(order.canonical_generators) == set(order.poset.elements)

    def test_s3_is_cellular(self):
        poset = bruhat_poset(3)
        presheaf = constant(poset, 1)
        assert is_cellular(poset).cellular
        assert hc(poset, presheaf).is_isomorphic(hs(poset, presheaf))


class TestSigns:

    @pytest.mark.parametrize("n", [3, 4])
    def test_sign_table_matches_cell_signs(self, n):
        order = BruhatOrder(n)
        table = order.sign_table()
        report = cell_signs(order.poset, order.canonical_generators)
        assert report.as_dict() == table
        assert sign_violations(order.poset, table) == []

    def test_minimal_swap_pair_sign(self):
        table = BruhatOrder(4).sign_table()
        assert table[("4321", "4312")] == 1
        assert table[("1432", "1423")] == 1
        assert table[("1432", "1342")] == -1

    def test_s4_cellular(self):
        poset = bruhat_poset(4)
        assert is_cellular(poset).cellular
        assert hc(poset, constant(poset, 1)).as_dict() == {
            n: ((1, ()) if n == 0 else (0, ())) for n in range(6)
        }

    @pytest.mark.slow
    def test_s5_signs(self):
        order = BruhatOrder(5)
        table = order.sign_table()
        assert sign_violations(order.poset, table) == []
        report = cell_signs(order.poset, order.canonical_generators)
        assert report.as_dict() == table
