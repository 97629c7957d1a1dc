"""Tests for complexes.py."""

from typing import Optional

import pytest

from poco.algebra.abelian import (
    FpAbGroup,
    GroupMorphism,
    IntMatrix,
)
from poco.cohomology.complexes import (
    ChainMap,
    CochainComplex,
    cohomology,
)
from poco.errors.exceptions import BrokenComplexError


def _two_term(
    value: int,
    source: Optional[FpAbGroup] = None,
    target: Optional[FpAbGroup] = None,
) -> CochainComplex:
    source = source or FpAbGroup.free(1)
    target = target or FpAbGroup.free(1)
    return CochainComplex(
        groups={0: source, 1: target},
        differentials={
            0: GroupMorphism(source, target, IntMatrix.from_rows([[value]]))
        },
        name="test",
    )


class TestCochainComplex:

    def test_multiplication_by_two(self):
        """Z --2--> Z has cohomology 0, Z/2."""
        report = cohomology(_two_term(2))
        assert report.provenance == "test"
        assert report.as_dict() == {0: (0, ()), 1: (0, (2,))}

    def test_zero_map(self):
        report = cohomology(_two_term(0))
        assert report.ranks() == [1, 1]

    def test_torsion_groups(self):
        """Z/4 --1--> Z/2 has kernel 2Z/4 and trivial cokernel."""
        complex = _two_term(
            1, FpAbGroup.cyclic(4), FpAbGroup.cyclic(2)
        )
        complex.validate()
        assert not complex.is_free()
        report = cohomology(complex)
        assert report.as_dict() == {0: (0, (2,)), 1: (0, ())}

    def test_presented_but_free(self):
        """Groups with unit relations are simplified before computing."""
        group = FpAbGroup(2, IntMatrix.from_rows([[1], [-1]]))
        complex = _two_term(3, group.simplify().group)
        assert cohomology(complex).group(1) == (0, (3,))

    def test_not_well_defined(self):
        complex = _two_term(1, FpAbGroup.cyclic(3), FpAbGroup.cyclic(2))
        with pytest.raises(BrokenComplexError):
            complex.validate()

    def test_square_not_zero(self):
        z = FpAbGroup.free(1)
        one = IntMatrix.from_rows([[1]])
        complex = CochainComplex(
            groups={0: z, 1: z, 2: z},
            differentials={
                0: GroupMorphism(z, z, one),
                1: GroupMorphism(z, z, one),
            },
        )
        with pytest.raises(BrokenComplexError):
            complex.validate()

    def test_cohomology_of_free_broken_complex(self):
        """Z -> Z^2 -> Z with nonzero composite is rejected."""
        z = FpAbGroup.free(1)
        z2 = FpAbGroup.free(2)
        complex = CochainComplex(
            groups={0: z, 1: z2, 2: z},
            differentials={
                0: GroupMorphism(z, z2, IntMatrix.from_rows([[1], [0]])),
                1: GroupMorphism(z2, z, IntMatrix.from_rows([[1, 0]])),
            },
        )
        assert complex.is_free()
        with pytest.raises(BrokenComplexError):
            cohomology(complex)

    def test_cohomology_without_check(self):
        z = FpAbGroup.free(1)
        one = IntMatrix.from_rows([[1]])
        complex = CochainComplex(
            groups={0: z, 1: z, 2: z},
            differentials={
                0: GroupMorphism(z, z, one),
                1: GroupMorphism(z, z, one),
            },
        )
        with pytest.raises(BrokenComplexError):
            cohomology(complex)
        assert len(cohomology(complex, check=False).degrees) == 3

    def test_degrees_contiguous(self):
        with pytest.raises(ValueError):
            CochainComplex(groups={0: FpAbGroup.free(1),
                                   2: FpAbGroup.free(1)})

    def test_wrong_labels(self):
        with pytest.raises(ValueError):
            CochainComplex(
                groups={0: FpAbGroup.free(2)}, labels={0: ["only"]}
            )

    def test_wrong_differential(self):
        with pytest.raises(ValueError):
            CochainComplex(
                groups={0: FpAbGroup.free(1), 1: FpAbGroup.free(2)},
                differentials={0: GroupMorphism(
                    FpAbGroup.free(1), FpAbGroup.free(1),
                    IntMatrix.from_rows([[1]]),
                )},
            )

    def test_valid_through(self):
        complex = CochainComplex(
            groups={0: FpAbGroup.free(1), 1: FpAbGroup.free(1)},
            valid_through=0,
        )
        assert cohomology(complex).as_dict() == {0: (1, ())}

    def test_helpers(self):
        complex = CochainComplex(
            groups={0: FpAbGroup.free(2), 1: FpAbGroup.free(1)},
            labels={0: ["a", "b"], 1: ["c"]},
            name="small",
        )
        assert complex.index(0) == {"a": 0, "b": 1}
        assert complex.euler_characteristic() == 1
        assert complex.group(5).is_zero()
        assert complex.differential(0).is_zero()
        assert complex.describe() == "small complex (C^0: 2, C^1: 1)"

    def test_empty(self):
        complex = CochainComplex(groups={})
        assert cohomology(complex).degrees == []
        assert "zero" in complex.describe()


class TestChainMap:

    def test_induced(self):
        """Doubling Z in degree zero induces doubling on H^0."""
        z = FpAbGroup.free(1)
        point = CochainComplex(groups={0: z})
        doubling = ChainMap(point, point, {0: IntMatrix.from_rows([[2]])})
        assert doubling.is_chain_map()
        induced = doubling.induced(0)
        assert induced.cokernel().invariants == (0, (2,))

    def test_not_chain_map(self):
        source = _two_term(1)
        target = _two_term(1)
        wrong = ChainMap(source, target, {0: IntMatrix.from_rows([[1]])})
        assert not wrong.is_chain_map()

    def test_missing_matrix_is_zero(self):
        source = _two_term(2)
        zero = ChainMap(source, source, {})
        assert zero.is_chain_map()
        assert zero.matrix(1).is_zero()
        assert zero.induced(1).is_zero()
