"""Tests for abelian.py."""

from itertools import combinations
from math import gcd
from random import Random

import pytest
from sympy import Matrix

from poco.algebra.abelian import (
    FpAbGroup,
    GroupMorphism,
    IntMatrix,
    Lattice,
    determinant,
    hnf,
    in_span,
    induced_morphism,
    invariant_factors,
    kernel_lattice,
    rank,
    snf,
    subquotient,
    subquotient_homology,
)
from poco.errors.exceptions import BrokenComplexError

RNG_SEED = 20240607
MATRIX_2X2 = IntMatrix.from_rows([[2, 4], [6, 8]])


def _minor_oracle(rows):
    """Invariant factors as ratios of gcds of k x k minors."""
    m = Matrix(rows)
    r, c = m.shape
    divisors = [1]
    for k in range(1, min(r, c) + 1):
        g = 0
        for rs in combinations(range(r), k):
            for cs in combinations(range(c), k):
                g = gcd(g, int(m.extract(list(rs), list(cs)).det()))
        if g == 0:
            break
        divisors.append(g)
    return [b // a for a, b in zip(divisors, divisors[1:])]


def _random_rows(rng, r, c, bound=6):
    return [[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)]


class TestIntMatrix:

    def test_from_rows_shape(self):
        """Dense rows keep their shape."""
        m = IntMatrix.from_rows([[1, 0, 2]])
        assert m.shape == (1, 3)
        assert m[0, 2] == 2
        assert m.nnz == 2

    def test_from_rows_unequal(self):
        """Ragged rows are rejected."""
        with pytest.raises(ValueError):
            IntMatrix.from_rows([[1, 2], [3]])

    def test_empty_shapes(self):
        """Zero row and zero column matrices compose with the right
        shape."""
        a = IntMatrix(0, 3)
        b = IntMatrix(3, 0)
        assert (b @ a).shape == (3, 3)
        assert (a @ b).shape == (0, 0)
        assert (b @ a).is_zero()

    def test_negative_shape(self):
        with pytest.raises(ValueError):
            IntMatrix(-1, 2)

    def test_entry_out_of_range(self):
        with pytest.raises(IndexError):
            IntMatrix(1, 1, {0: {3: 1}})

    def test_matmul(self):
        a = IntMatrix.from_rows([[1, 2], [3, 4]])
        b = IntMatrix.from_rows([[0, 1], [1, 0]])
        assert (a @ b).to_rows() == [[2, 1], [4, 3]]

    def test_matmul_shape_mismatch(self):
        with pytest.raises(ValueError):
            IntMatrix(2, 3) @ IntMatrix(2, 3)

    def test_add_cancels_to_zero(self):
        a = IntMatrix.from_rows([[1, -2]])
        assert (a + (-a)).is_zero()
        assert a - a == IntMatrix(1, 2)

    def test_kron(self):
        a = IntMatrix.from_rows([[1, 2]])
        b = IntMatrix.from_rows([[0, 1], [1, 0]])
        assert a.kron(b).to_rows() == [[0, 1, 0, 2], [1, 0, 2, 0]]

    def test_block_diagonal_and_stacks(self):
        a = IntMatrix.from_rows([[1]])
        b = IntMatrix.from_rows([[2, 3]])
        assert IntMatrix.block_diagonal([a, b]).to_rows() == [
            [1, 0, 0], [0, 2, 3],
        ]
        assert IntMatrix.hstack(1, a, b).to_rows() == [[1, 2, 3]]
        assert IntMatrix.vstack(2, b, b).to_rows() == [[2, 3], [2, 3]]

    def test_transpose_and_columns(self):
        m = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
        assert m.transpose().to_rows() == [[1, 4], [2, 5], [3, 6]]
        assert m.columns() == [[1, 4], [2, 5], [3, 6]]
        assert m.column(1) == [2, 5]

    def test_apply(self):
        m = IntMatrix.from_rows([[1, 2], [0, -1]])
        assert m.apply([3, 1]) == [5, -1]

    def test_submatrix(self):
        m = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
        assert m.submatrix([1], [0, 2]).to_rows() == [[4, 6]]

    def test_hashable(self):
        a = IntMatrix.from_rows([[1, 0], [0, 1]])
        assert hash(a) == hash(IntMatrix.identity(2))
        assert a == IntMatrix.identity(2)

    def test_from_entries_sums(self):
        m = IntMatrix.from_entries(1, 1, [(0, 0, 2), (0, 0, -2)])
        assert m.is_zero()


class TestNormalForms:

    def test_hnf_identity(self):
        h, u = hnf(IntMatrix.identity(2))
        assert h == IntMatrix.identity(2)
        assert u == IntMatrix.identity(2)

    def test_hnf_reduced_above_pivots(self):
        h, u = hnf(MATRIX_2X2)
        assert h.to_rows() == [[2, 0], [0, 4]]
        assert u @ MATRIX_2X2 == h
        assert abs(determinant(u)) == 1

    def test_hnf_zero(self):
        h, u = hnf(IntMatrix(2, 3))
        assert h.is_zero()
        assert u == IntMatrix.identity(2)

    def test_hnf_echelon(self):
        rng = Random(RNG_SEED)
        for _ in range(20):
            m = IntMatrix.from_rows(_random_rows(rng, 3, 4))
            h, u = hnf(m)
            assert u @ m == h
            assert abs(determinant(u)) == 1
            rows = h.to_rows()
            last = -1
            for row in rows:
                nonzero = [j for j, v in enumerate(row) if v]
                if not nonzero:
                    last = len(row)
                    continue
                assert nonzero[0] > last
                assert row[nonzero[0]] > 0
                last = nonzero[0]

    @pytest.mark.parametrize("rows,diagonal", [
        ([[2, 4], [6, 8]], [2, 4]),
        ([[6, 0], [0, 4]], [2, 12]),
        ([[1, 0], [0, 1]], [1, 1]),
    ])
    def test_snf_examples(self, rows, diagonal):
        s, u, v = snf(IntMatrix.from_rows(rows))
        assert [s[i, i] for i in range(2)] == diagonal
        assert u @ IntMatrix.from_rows(rows) @ v == s

    def test_snf_random_against_minors(self):
        rng = Random(RNG_SEED)
        for _ in range(30):
            r, c = rng.randint(1, 4), rng.randint(1, 4)
            rows = _random_rows(rng, r, c)
            m = IntMatrix.from_rows(rows, cols=c)
            s, u, v = snf(m)
            assert u @ m @ v == s
            assert abs(determinant(u)) == 1
            assert abs(determinant(v)) == 1
            diagonal = [s[i, i] for i in range(min(r, c)) if s[i, i]]
            assert all(d > 0 for d in diagonal)
            assert all(b % a == 0 for a, b in zip(diagonal, diagonal[1:]))
            assert diagonal == _minor_oracle(rows)
            assert invariant_factors(m) == diagonal

    def test_invariant_factors_sparse_unit_pivots(self):
        m = IntMatrix.from_rows([
            [1, 0, 0, 0],
            [0, 2, 0, 0],
            [1, 0, 0, 3],
        ])
        assert invariant_factors(m) == [1, 1, 2]
        assert rank(m) == 3

    def test_determinant(self):
        assert determinant(MATRIX_2X2) == -8
        assert determinant(IntMatrix(0, 0)) == 1
        with pytest.raises(ValueError):
            determinant(IntMatrix(1, 2))


class TestKernelLattice:

    def test_symmetric(self):
        k = kernel_lattice(IntMatrix.from_rows([[1, -1]]))
        assert k.columns() in ([[1, 1]], [[-1, -1]])

    def test_injective(self):
        assert kernel_lattice(MATRIX_2X2).cols == 0

    def test_rank_two(self):
        m = IntMatrix.from_rows([[1, 1, 1]])
        k = kernel_lattice(m)
        assert k.cols == 2
        assert (m @ k).is_zero()
        # a basis, not just a generating set of finite index
        assert invariant_factors(k) == [1, 1]

    def test_random(self):
        rng = Random(RNG_SEED)
        for _ in range(20):
            m = IntMatrix.from_rows(_random_rows(rng, 2, 4, bound=3))
            k = kernel_lattice(m)
            assert (m @ k).is_zero()
            assert k.cols == 4 - rank(m)
            if k.cols:
                assert set(invariant_factors(k)) == {1}


class TestLattice:

    def test_contains(self):
        lattice = Lattice(IntMatrix.from_columns([[2, 0], [0, 3]], rows=2))
        assert lattice.contains([4, 3])
        assert not lattice.contains([1, 0])
        assert lattice.coordinates([4, -3]) is not None

    def test_in_span(self):
        basis = IntMatrix.from_columns([[1, 1]], rows=2)
        assert in_span(basis, IntMatrix.from_columns([[3, 3]], rows=2))
        assert not in_span(basis, IntMatrix.from_columns([[1, 0]], rows=2))
        assert in_span(IntMatrix(2, 0), IntMatrix(2, 1))


class TestFpAbGroup:

    def test_describe(self):
        group = FpAbGroup.from_invariants(2, [2])
        assert group.describe() == "Z^2 + Z/2"
        assert FpAbGroup.zero().describe() == "0"
        assert FpAbGroup.cyclic(1).is_zero()

    def test_invariants_canonical(self):
        group = FpAbGroup(2, IntMatrix.from_rows([[6, 0], [0, 4]]))
        assert group.invariants == (0, (2, 12))
        assert group.is_isomorphic(FpAbGroup.from_invariants(0, [2, 12]))
        assert not group.is_free()

    def test_wrong_relation_rows(self):
        with pytest.raises(ValueError):
            FpAbGroup(2, IntMatrix(3, 1))

    def test_direct_sum_and_tensor(self):
        group = FpAbGroup.cyclic(2).direct_sum(FpAbGroup.free(1))
        assert group.invariants == (1, (2,))
        assert group.tensor_free(2).invariants == (2, (2, 2))
        assert group.tensor_free(0).is_zero()

    def test_contains_relation(self):
        group = FpAbGroup.cyclic(3)
        assert group.contains_relation([6])
        assert not group.contains_relation([2])
        assert FpAbGroup.free(1).contains_relation([0])

    def test_simplify_keeps_isomorphism_type(self):
        relations = IntMatrix.from_columns(
            [[1, 1, 0], [0, 2, 2], [0, 0, 4]], rows=3
        )
        group = FpAbGroup(3, relations)
        simplified = group.simplify()
        assert group.invariants == (0, (2, 4))
        assert simplified.group.invariants == group.invariants
        assert simplified.group.generators == 2
        # to_new . from_new is the identity on the simplified group
        roundtrip = simplified.to_new @ simplified.from_new
        diff = roundtrip - IntMatrix.identity(simplified.group.generators)
        assert all(
            simplified.group.contains_relation(c) for c in diff.columns()
        )

    def test_simplify_random(self):
        rng = Random(RNG_SEED)
        for _ in range(20):
            g = rng.randint(1, 4)
            rows = _random_rows(rng, g, rng.randint(0, 4), bound=4)
            group = FpAbGroup(g, IntMatrix.from_rows(rows, cols=len(rows[0])))
            simplified = group.simplify()
            assert simplified.group.invariants == group.invariants
            assert simplified.to_new.shape == (
                simplified.group.generators, g
            )
            # relations map to relations
            assert GroupMorphism(
                group, simplified.group, simplified.to_new
            ).is_well_defined()
            assert GroupMorphism(
                simplified.group, group, simplified.from_new
            ).is_well_defined()


class TestMorphisms:

    def test_shape_checked(self):
        with pytest.raises(ValueError):
            GroupMorphism(
                FpAbGroup.free(1), FpAbGroup.free(2), IntMatrix(1, 1)
            )

    def test_well_defined(self):
        z2 = FpAbGroup.cyclic(2)
        z4 = FpAbGroup.cyclic(4)
        assert GroupMorphism(z2, z4, IntMatrix.from_rows([[2]])) \
            .is_well_defined()
        bad = GroupMorphism(z2, z4, IntMatrix.from_rows([[1]]))
        assert not bad.is_well_defined()
        with pytest.raises(BrokenComplexError):
            bad.validate()

    def test_zero_modulo_relations(self):
        z2 = FpAbGroup.cyclic(2)
        assert GroupMorphism(z2, z2, IntMatrix.from_rows([[2]])).is_zero()
        assert GroupMorphism(z2, z2, IntMatrix.from_rows([[3]])).equals(
            GroupMorphism(z2, z2, IntMatrix.identity(1))
        )

    def test_cokernel(self):
        z = FpAbGroup.free(1)
        assert GroupMorphism(z, z, IntMatrix.from_rows([[3]])) \
            .cokernel().invariants == (0, (3,))


class TestSubquotient:

    def test_multiplication_by_two(self):
        """0 -> Z --2--> Z -> 0 has homology Z/2 in the middle."""
        z = FpAbGroup.free(1)
        f = GroupMorphism(z, z, IntMatrix.from_rows([[2]]))
        g = GroupMorphism.zero(z, FpAbGroup.zero())
        assert subquotient_homology(f, g).invariants == (0, (2,))

    def test_exact(self):
        z = FpAbGroup.free(1)
        z2 = FpAbGroup.free(2)
        f = GroupMorphism(z, z2, IntMatrix.from_rows([[1], [1]]))
        g = GroupMorphism(z2, z, IntMatrix.from_rows([[1, -1]]))
        assert subquotient_homology(f, g).is_zero()

    def test_kernel_modulo_target_relations(self):
        """Z --2--> Z/4 has kernel 2Z."""
        z = FpAbGroup.free(1)
        zero = GroupMorphism.zero(FpAbGroup.zero(), z)
        g = GroupMorphism(z, FpAbGroup.cyclic(4), IntMatrix.from_rows([[2]]))
        result = subquotient(zero, g)
        assert result.group.invariants == (1, ())
        assert result.basis.column(0) in ([2], [-2])

    def test_nonzero_composite(self):
        z = FpAbGroup.free(1)
        f = GroupMorphism(z, z, IntMatrix.identity(1))
        with pytest.raises(BrokenComplexError):
            subquotient(f, f)

    def test_not_composable(self):
        z = FpAbGroup.free(1)
        f = GroupMorphism(z, z, IntMatrix.identity(1))
        g = GroupMorphism.zero(FpAbGroup.free(2), z)
        with pytest.raises(ValueError):
            subquotient(f, g)

    def test_induced_morphism(self):
        """Multiplication by 3 on Z/2 is the identity."""
        z = FpAbGroup.free(1)
        f = GroupMorphism(z, z, IntMatrix.from_rows([[2]]))
        g = GroupMorphism.zero(z, FpAbGroup.zero())
        h = subquotient(f, g)
        induced = induced_morphism(IntMatrix.from_rows([[3]]), h, h)
        identity = GroupMorphism(h.group, h.group, IntMatrix.identity(1))
        assert induced.equals(identity)

    def test_classes_outside_kernel(self):
        z = FpAbGroup.free(1)
        zero = GroupMorphism.zero(FpAbGroup.zero(), z)
        g = GroupMorphism(z, z, IntMatrix.identity(1))
        h = subquotient(zero, g)
        with pytest.raises(BrokenComplexError):
            h.classes(IntMatrix.from_rows([[1]]))
