"""Tests for miscellaneous utility functions."""

from random import Random

import pytest

from poco.algebra.abelian import (
    IntMatrix,
    determinant,
)
from poco.builders.cell_complexes import circle_poset
from poco.errors.exceptions import PreconditionError
from poco.posets.poset import from_covers
from poco.utils.misc import (
    random_monotone_map,
    random_poset,
    random_presheaf,
    random_subposet,
    random_unimodular,
    unimodular_inverse,
)


class TestUnimodular:

    @pytest.mark.parametrize("n", [0, 1, 2, 5])
    def test_determinant(self, n):
        matrix = random_unimodular(n, Random(n))
        assert matrix.shape == (n, n)
        if n:
            assert determinant(matrix) in (1, -1)

    def test_negative_size(self):
        with pytest.raises(ValueError):
            random_unimodular(-1, Random(0))

    @pytest.mark.parametrize("seed", range(5))
    def test_inverse(self, seed):
        matrix = random_unimodular(4, Random(seed))
        assert matrix @ unimodular_inverse(matrix) == IntMatrix.identity(4)

    def test_inverse_not_unimodular(self):
        with pytest.raises(ValueError):
            unimodular_inverse(IntMatrix.from_rows([[2, 0], [0, 1]]))
        with pytest.raises(ValueError):
            unimodular_inverse(IntMatrix.from_rows([[1, 1], [1, 1]]))

    def test_inverse_not_square(self):
        with pytest.raises(ValueError):
            unimodular_inverse(IntMatrix.from_rows([[1, 0]]))


class TestRandomPosets:

    def test_random_poset(self):
        poset = random_poset(8, Random(1))
        assert poset.elements == tuple(f"p{i}" for i in range(8))
        for x, y in poset.covers:
            assert int(x[1:]) < int(y[1:])

    def test_random_poset_reproducible(self):
        assert random_poset(6, Random(3)) == random_poset(6, Random(3))

    def test_random_presheaf_is_functorial(self):
        poset = random_poset(6, Random(2))
        presheaf = random_presheaf(poset, Random(2), summands=3)
        assert presheaf.validate().ok
        assert presheaf.base == poset

    def test_random_subposet(self):
        poset = random_poset(8, Random(4))
        sub = random_subposet(poset, Random(4), keep=0.0)
        assert len(sub) == 1
        assert set(random_subposet(poset, Random(5)).elements) <= set(
            poset.elements
        )


class TestRandomMonotoneMap:

    def test_monotone(self):
        source = random_poset(5, Random(6))
        target = circle_poset()
        mapping = random_monotone_map(source, target, Random(6))
        for x, y in source.covers:
            assert target.leq(mapping[x], mapping[y])

    def test_no_map(self):
        source = from_covers(["a", "b"], [("a", "b")])
        target = from_covers([], [])
        with pytest.raises(PreconditionError):
            random_monotone_map(source, target, Random(0), attempts=2)

    def test_constant_fallback(self):
        source = from_covers(["a", "b", "c"], [("a", "c"), ("b", "c")])
        target = circle_poset()
        mapping = random_monotone_map(source, target, Random(1), attempts=0)
        assert len(set(mapping.values())) == 1
        assert set(mapping) == {"a", "b", "c"}
