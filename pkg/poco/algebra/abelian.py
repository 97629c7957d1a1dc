"""Exact integer linear algebra and finitely presented abelian groups.

Matrices act on column vectors: an ``m x n`` matrix is a homomorphism
``Z^n -> Z^m``. A finitely presented abelian group ``Z^g / span(R)`` is
given by its number of generators ``g`` and a ``g x k`` relation matrix
``R`` whose columns are the relations.
"""

from collections import defaultdict
from dataclasses import (dataclass, field)
from functools import cached_property
import logging
from typing import (
    Dict,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
)

from poco.errors.exceptions import BrokenComplexError

logger = logging.getLogger(__name__)

Row = Dict[int, int]


class IntMatrix:
    """Immutable integer matrix with sparse row-major storage.

    Args:
        rows: Number of rows.
        cols: Number of columns.
        data: Nonzero entries, keyed by row index and then column index.

    Attributes:
        rows: Number of rows.
        cols: Number of columns.

    Raises:
        ValueError: The shape is negative.
        IndexError: An entry lies outside of the shape.

    Example:
        >>> IntMatrix.from_rows([[1, 2], [3, 4]]) @ IntMatrix.identity(2)
        IntMatrix.from_rows([[1, 2], [3, 4]], cols=2)
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(
        self,
        rows: int,
        cols: int,
        data: Optional[Mapping[int, Mapping[int, int]]] = None,
    ) -> None:
        if rows < 0 or cols < 0:
            raise ValueError(f"illegal matrix shape: {rows}x{cols}")
        store: Dict[int, Row] = {}
        for i, row in (data or {}).items():
            if not 0 <= i < rows:
                raise IndexError(f"row index {i} outside of {rows} rows")
            clean: Row = {}
            for j, value in row.items():
                if not 0 <= j < cols:
                    raise IndexError(
                        f"column index {j} outside of {cols} columns"
                    )
                if value:
                    clean[j] = int(value)
            if clean:
                store[i] = clean
        self.rows = rows
        self.cols = cols
        self._data = store

    @classmethod
    def _trusted(cls, rows: int, cols: int, store: Dict[int, Row]):
        """Wrap storage that is known to be clean without copying it."""
        obj = cls.__new__(cls)
        obj.rows = rows
        obj.cols = cols
        obj._data = store
        return obj

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls._trusted(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def diagonal(
        cls,
        values: Sequence[int],
        rows: Optional[int] = None,
        cols: Optional[int] = None,
    ) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        return cls(rows, cols, {i: {i: v} for i, v in enumerate(values)})

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence[int]],
        cols: Optional[int] = None,
    ) -> "IntMatrix":
        """Build a matrix from dense rows.

        Args:
            rows: Dense rows of equal length.
            cols: Number of columns; required if `rows` is empty.

        Returns:
            The matrix.

        Raises:
            ValueError: Rows have unequal lengths or disagree with `cols`.
        """
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ValueError("rows of unequal length")
        width = widths.pop() if widths else (cols or 0)
        if cols is not None and width != cols:
            raise ValueError(
                f"rows have length {width} but {cols} columns were requested"
            )
        return cls(len(rows), width, {
            i: {j: v for j, v in enumerate(r) if v}
            for i, r in enumerate(rows)
        })

    @classmethod
    def from_columns(
        cls,
        columns: Sequence[Sequence[int]],
        rows: int,
    ) -> "IntMatrix":
        data: Dict[int, Row] = defaultdict(dict)
        for j, column in enumerate(columns):
            if len(column) != rows:
                raise ValueError(
                    f"column {j} has length {len(column)}, expected {rows}"
                )
            for i, v in enumerate(column):
                if v:
                    data[i][j] = v
        return cls(rows, len(columns), data)

    @classmethod
    def from_entries(
        cls,
        rows: int,
        cols: int,
        entries: Iterable[Tuple[int, int, int]],
    ) -> "IntMatrix":
        """Build a matrix by summing ``(row, column, value)`` triples."""
        data: Dict[int, Row] = defaultdict(dict)
        for i, j, v in entries:
            row = data[i]
            row[j] = row.get(j, 0) + v
        return cls(rows, cols, data)

    @classmethod
    def hstack(cls, rows: int, *blocks: "IntMatrix") -> "IntMatrix":
        """Concatenate blocks with `rows` rows side by side."""
        data: Dict[int, Row] = defaultdict(dict)
        offset = 0
        for block in blocks:
            if block.rows != rows:
                raise ValueError("blocks differ in their number of rows")
            for i, row in block._data.items():
                target = data[i]
                for j, v in row.items():
                    target[offset + j] = v
            offset += block.cols
        return cls._trusted(rows, offset, dict(data))

    @classmethod
    def vstack(cls, cols: int, *blocks: "IntMatrix") -> "IntMatrix":
        """Stack blocks with `cols` columns on top of each other."""
        data: Dict[int, Row] = {}
        offset = 0
        for block in blocks:
            if block.cols != cols:
                raise ValueError("blocks differ in their number of columns")
            for i, row in block._data.items():
                data[offset + i] = dict(row)
            offset += block.rows
        return cls._trusted(offset, cols, data)

    @classmethod
    def block_diagonal(cls, blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        data: Dict[int, Row] = {}
        row_offset = col_offset = 0
        for block in blocks:
            for i, row in block._data.items():
                data[row_offset + i] = {
                    col_offset + j: v for j, v in row.items()
                }
            row_offset += block.rows
            col_offset += block.cols
        return cls._trusted(row_offset, col_offset, data)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._data.values())

    def __getitem__(self, key: Tuple[int, int]) -> int:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry {key} outside of shape {self.shape}")
        return self._data.get(i, {}).get(j, 0)

    def row(self, i: int) -> Row:
        return dict(self._data.get(i, {}))

    def column(self, j: int) -> List[int]:
        return [self._data.get(i, {}).get(j, 0) for i in range(self.rows)]

    def columns(self) -> List[List[int]]:
        return self.transpose().to_rows()

    def to_rows(self) -> List[List[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for i, row in self._data.items():
            for j, v in row.items():
                dense[i][j] = v
        return dense

    def items(self) -> Iterator[Tuple[int, int, int]]:
        for i in sorted(self._data):
            row = self._data[i]
            for j in sorted(row):
                yield i, j, row[j]

    def is_zero(self) -> bool:
        return not self._data

    def transpose(self) -> "IntMatrix":
        data: Dict[int, Row] = defaultdict(dict)
        for i, row in self._data.items():
            for j, v in row.items():
                data[j][i] = v
        return IntMatrix._trusted(self.cols, self.rows, dict(data))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.shape} by {other.shape} matrix"
            )
        data: Dict[int, Row] = {}
        for i, row in self._data.items():
            acc: Row = {}
            for k, a in row.items():
                for j, b in other._data.get(k, {}).items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                data[i] = acc
        return IntMatrix._trusted(self.rows, other.cols, data)

    def _combine(self, other: "IntMatrix", sign: int) -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(
                f"shapes {self.shape} and {other.shape} differ"
            )
        data = {i: dict(row) for i, row in self._data.items()}
        for i, row in other._data.items():
            target = data.setdefault(i, {})
            for j, v in row.items():
                value = target.get(j, 0) + sign * v
                if value:
                    target[j] = value
                else:
                    target.pop(j, None)
            if not target:
                del data[i]
        return IntMatrix._trusted(self.rows, self.cols, data)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "IntMatrix":
        return self.scaled(-1)

    def scaled(self, factor: int) -> "IntMatrix":
        if not factor:
            return IntMatrix(self.rows, self.cols)
        return IntMatrix._trusted(self.rows, self.cols, {
            i: {j: factor * v for j, v in row.items()}
            for i, row in self._data.items()
        })

    def kron(self, other: "IntMatrix") -> "IntMatrix":
        """Kronecker product; entry ``(i*p + a, j*q + b)`` is
        ``self[i, j] * other[a, b]`` for `other` of shape ``(p, q)``."""
        p, q = other.shape
        data: Dict[int, Row] = defaultdict(dict)
        for i, row in self._data.items():
            for j, v in row.items():
                for a, orow in other._data.items():
                    target = data[i * p + a]
                    for b, w in orow.items():
                        target[j * q + b] = v * w
        return IntMatrix._trusted(self.rows * p, self.cols * q, dict(data))

    def submatrix(
        self,
        rows: Sequence[int],
        cols: Sequence[int],
    ) -> "IntMatrix":
        col_index = {j: k for k, j in enumerate(cols)}
        data: Dict[int, Row] = {}
        for k, i in enumerate(rows):
            row = {
                col_index[j]: v for j, v in self._data.get(i, {}).items()
                if j in col_index
            }
            if row:
                data[k] = row
        return IntMatrix._trusted(len(rows), len(cols), data)

    def apply(self, vector: Sequence[int]) -> List[int]:
        if len(vector) != self.cols:
            raise ValueError(
                f"vector of length {len(vector)} for {self.shape} matrix"
            )
        result = [0] * self.rows
        for i, row in self._data.items():
            result[i] = sum(v * vector[j] for j, v in row.items())
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.shape, tuple(self.items())))

    def __repr__(self) -> str:
        return f"IntMatrix.from_rows({self.to_rows()}, cols={self.cols})"


def _axpy(target: List[int], source: List[int], factor: int) -> None:
    """target += factor * source, in place."""
    for j, v in enumerate(source):
        if v:
            target[j] += factor * v


def _identity_rows(n: int) -> List[List[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _row_hnf(
    a: List[List[int]],
    ncols: int,
    track: bool,
) -> Tuple[List[List[int]], Optional[List[List[int]]], List[int]]:
    """Row Hermite normal form of a dense matrix.

    Returns ``(H, U, pivots)`` with ``H = U A``; pivots are positive, entries
    above a pivot lie in ``[0, pivot)`` and zero rows come last.
    """
    m = len(a)
    h = [list(r) for r in a]
    u = _identity_rows(m) if track else None
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            nonzero = [i for i in range(r, m) if h[i][c]]
            if not nonzero:
                break
            p = min(nonzero, key=lambda i: abs(h[i][c]))
            if p != r:
                h[p], h[r] = h[r], h[p]
                if u is not None:
                    u[p], u[r] = u[r], u[p]
            pivot = h[r][c]
            done = True
            for i in range(r + 1, m):
                if h[i][c]:
                    q = h[i][c] // pivot
                    _axpy(h[i], h[r], -q)
                    if u is not None:
                        _axpy(u[i], u[r], -q)
                    if h[i][c]:
                        done = False
            if done:
                break
        if not h[r][c]:
            continue
        if h[r][c] < 0:
            h[r] = [-v for v in h[r]]
            if u is not None:
                u[r] = [-v for v in u[r]]
        pivot = h[r][c]
        for i in range(r):
            q = h[i][c] // pivot
            if q:
                _axpy(h[i], h[r], -q)
                if u is not None:
                    _axpy(u[i], u[r], -q)
        pivots.append(c)
        r += 1
    return h, u, pivots


def hnf(m: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Args:
        m: Matrix to reduce.

    Returns:
        Tuple ``(H, U)`` with ``U`` unimodular and ``H = U m`` in row
        echelon form: pivots are positive, entries above each pivot are
        reduced into ``[0, pivot)`` and zero rows come last.

    Example:
        >>> hnf(IntMatrix.from_rows([[2, 4], [6, 8]]))[0].to_rows()
        [[2, 0], [0, 4]]
    """
    h, u, _ = _row_hnf(m.to_rows(), m.cols, track=True)
    return (
        IntMatrix.from_rows(h, cols=m.cols),
        IntMatrix.from_rows(u, cols=m.rows),  # type: ignore[arg-type]
    )


def _snf_dense(
    a: List[List[int]],
    m: int,
    n: int,
    track: bool,
) -> Tuple[List[int], Optional[List[List[int]]], Optional[List[List[int]]],
           Optional[List[List[int]]]]:
    """Smith normal form of a dense ``m x n`` matrix.

    Returns the diagonal and, if `track` is set, ``U``, ``U^-1`` and ``V``
    with ``U A V`` diagonal.
    """
    s = [list(r) for r in a]
    u = _identity_rows(m) if track else None
    u_inv = _identity_rows(m) if track else None
    v = _identity_rows(n) if track else None

    def swap_rows(i: int, j: int) -> None:
        s[i], s[j] = s[j], s[i]
        if u is not None and u_inv is not None:
            u[i], u[j] = u[j], u[i]
            for row in u_inv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i: int, j: int) -> None:
        for row in s:
            row[i], row[j] = row[j], row[i]
        if v is not None:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(target: int, source: int, factor: int) -> None:
        _axpy(s[target], s[source], factor)
        if u is not None and u_inv is not None:
            _axpy(u[target], u[source], factor)
            for row in u_inv:
                row[source] -= factor * row[target]

    def add_col(target: int, source: int, factor: int) -> None:
        for row in s:
            if row[source]:
                row[target] += factor * row[source]
        if v is not None:
            for row in v:
                if row[source]:
                    row[target] += factor * row[source]

    diagonal: List[int] = []
    t = 0
    while t < min(m, n):
        best: Optional[Tuple[int, int, int]] = None
        for i in range(t, m):
            row = s[i]
            for j in range(t, n):
                value = row[j]
                if value and (best is None or abs(value) < best[0]):
                    best = (abs(value), i, j)
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            pivot = s[t][t]
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // pivot))
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // pivot))
            remainders = [
                (abs(s[i][t]), i, t) for i in range(t + 1, m) if s[i][t]
            ] + [
                (abs(s[t][j]), t, j) for j in range(t + 1, n) if s[t][j]
            ]
            if remainders:
                _, i, j = min(remainders)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            offender = next(
                (
                    i for i in range(t + 1, m)
                    if any(s[i][j] % pivot for j in range(t + 1, n))
                ),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            if u is not None and u_inv is not None:
                u[t] = [-x for x in u[t]]
                for row in u_inv:
                    row[t] = -row[t]
        diagonal.append(s[t][t])
        t += 1
    return diagonal, u, u_inv, v


def snf(m: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form.

    Args:
        m: Matrix to reduce.

    Returns:
        Tuple ``(S, U, V)`` with ``U`` and ``V`` unimodular, ``S = U m V``
        diagonal, nonnegative and each diagonal entry dividing the next.

    Example:
        >>> snf(IntMatrix.from_rows([[2, 4], [6, 8]]))[0].to_rows()
        [[2, 0], [0, 4]]
    """
    diagonal, u, _, v = _snf_dense(m.to_rows(), m.rows, m.cols, track=True)
    return (
        IntMatrix.diagonal(diagonal, rows=m.rows, cols=m.cols),
        IntMatrix.from_rows(u, cols=m.rows),  # type: ignore[arg-type]
        IntMatrix.from_rows(v, cols=m.cols),  # type: ignore[arg-type]
    )


def _eliminate_unit_pivots(
    rows: Dict[int, Row],
) -> List[Tuple[int, int, int, Row]]:
    """Sparse elimination of unit pivots, in place.

    Repeatedly picks an entry ``+-1`` (preferring sparse columns), clears its
    column from all other rows and removes its row and column. What is left
    in `rows` is a matrix whose invariant factors, together with one ``1``
    per pivot, are those of the input.

    Returns:
        The pivots in elimination order as ``(row, column, value, row
        entries at elimination time)``.
    """
    cols: Dict[int, Set[int]] = defaultdict(set)
    for i, row in rows.items():
        for j in row:
            cols[j].add(i)
    eliminated: List[Tuple[int, int, int, Row]] = []
    progress = True
    while progress:
        progress = False
        for i in sorted(rows, key=lambda k: (len(rows[k]), k)):
            row = rows.get(i)
            if row is None:
                continue
            best: Optional[int] = None
            for j, value in row.items():
                if value in (1, -1) and (
                    best is None or len(cols[j]) < len(cols[best])
                ):
                    best = j
            if best is None:
                continue
            pivot = row[best]
            for k in list(cols[best]):
                if k == i:
                    continue
                other = rows[k]
                factor = other[best] * pivot
                for j, value in row.items():
                    new = other.get(j, 0) - factor * value
                    if new:
                        if j not in other:
                            cols[j].add(k)
                        other[j] = new
                    elif j in other:
                        del other[j]
                        cols[j].discard(k)
                if not other:
                    del rows[k]
            for j in row:
                cols[j].discard(i)
            cols.pop(best, None)
            del rows[i]
            eliminated.append((i, best, pivot, row))
            progress = True
    return eliminated


def _compress(rows: Dict[int, Row]) -> Tuple[List[List[int]], int, int]:
    """Dense copy of the nonzero rows and columns of sparse storage."""
    used = sorted({j for row in rows.values() for j in row})
    index = {j: k for k, j in enumerate(used)}
    dense = []
    for i in sorted(rows):
        line = [0] * len(used)
        for j, v in rows[i].items():
            line[index[j]] = v
        dense.append(line)
    return dense, len(dense), len(used)


def invariant_factors(m: IntMatrix) -> List[int]:
    """Nonzero diagonal entries of the Smith normal form of `m`.

    Unit pivots are eliminated sparsely first; only the remainder is
    reduced densely.

    Example:
        >>> invariant_factors(IntMatrix.from_rows([[2, 4], [6, 8]]))
        [2, 4]
    """
    rows = {i: dict(row) for i, row in m._data.items()}
    units = len(_eliminate_unit_pivots(rows))
    dense, r, c = _compress(rows)
    diagonal, _, _, _ = _snf_dense(dense, r, c, track=False)
    return [1] * units + [d for d in diagonal if d]


def rank(m: IntMatrix) -> int:
    return len(invariant_factors(m))


def determinant(m: IntMatrix) -> int:
    """Determinant of a square matrix (fraction-free Bareiss elimination)."""
    if m.rows != m.cols:
        raise ValueError(f"determinant of non-square {m.shape} matrix")
    a = m.to_rows()
    n = m.rows
    sign = 1
    previous = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous
        previous = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def kernel_lattice(m: IntMatrix) -> IntMatrix:
    """Basis of ``{x : m x = 0}`` as the columns of the returned matrix.

    Example:
        >>> kernel_lattice(IntMatrix.from_rows([[1, -1]])).to_rows()
        [[1], [1]]
    """
    h, u, pivots = _row_hnf(m.transpose().to_rows(), m.rows, track=True)
    assert u is not None
    return IntMatrix.from_columns(u[len(pivots):], rows=m.cols)


class Lattice:
    """Sublattice of ``Z^n`` spanned by the columns of a matrix.

    Args:
        generators: Matrix whose columns span the lattice.

    Attributes:
        dimension: Dimension ``n`` of the ambient space.
        rank: Rank of the lattice.
    """

    def __init__(self, generators: IntMatrix) -> None:
        self.dimension = generators.rows
        if generators.is_zero():
            self._basis: List[List[int]] = []
            self._pivots: List[int] = []
        else:
            h, _, pivots = _row_hnf(
                generators.transpose().to_rows(), generators.rows, track=False
            )
            self._basis = h[:len(pivots)]
            self._pivots = pivots
        self.rank = len(self._pivots)

    def basis(self) -> IntMatrix:
        """Echelon basis of the lattice as matrix columns."""
        return IntMatrix.from_columns(self._basis, rows=self.dimension)

    def coordinates(self, vector: Sequence[int]) -> Optional[List[int]]:
        """Coordinates of `vector` in the echelon basis, or ``None`` if the
        vector does not lie in the lattice."""
        if len(vector) != self.dimension:
            raise ValueError(
                f"vector of length {len(vector)} in dimension {self.dimension}"
            )
        residual = list(vector)
        coords: List[int] = []
        for row, pivot in zip(self._basis, self._pivots):
            value = residual[pivot]
            if value % row[pivot]:
                return None
            c = value // row[pivot]
            coords.append(c)
            if c:
                _axpy(residual, row, -c)
        if any(residual):
            return None
        return coords

    def contains(self, vector: Sequence[int]) -> bool:
        return self.coordinates(vector) is not None


def in_span(basis: IntMatrix, vectors: IntMatrix) -> bool:
    """Whether every column of `vectors` lies in the column span of
    `basis`."""
    if vectors.is_zero():
        return True
    if basis.is_zero():
        return False
    lattice = Lattice(basis)
    return all(lattice.contains(c) for c in vectors.columns())


@dataclass(frozen=True)
class Simplification:
    """Change of presentation produced by :meth:`FpAbGroup.simplify`.

    Attributes:
        group: Isomorphic group with fewer generators.
        to_new: Matrix mapping old generator coordinates to new ones.
        from_new: Matrix lifting new generator coordinates to old ones.
    """
    group: "FpAbGroup"
    to_new: IntMatrix
    from_new: IntMatrix


@dataclass(frozen=True)
class FpAbGroup:
    """Finitely presented abelian group ``Z^generators / span(relations)``.

    Args:
        generators: Number of generators.
        relations: Relation matrix with one row per generator and one column
            per relation.

    Raises:
        ValueError: The relation matrix does not have one row per generator.

    Example:
        >>> FpAbGroup(1, IntMatrix.from_rows([[2]])).describe()
        'Z/2'
    """
    generators: int
    relations: IntMatrix = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.relations is None:
            object.__setattr__(
                self, "relations", IntMatrix(self.generators, 0)
            )
        if self.relations.rows != self.generators:
            raise ValueError(
                f"relation matrix has {self.relations.rows} rows for "
                f"{self.generators} generators"
            )

    @classmethod
    def free(cls, rank: int) -> "FpAbGroup":
        return cls(rank, IntMatrix(rank, 0))

    @classmethod
    def zero(cls) -> "FpAbGroup":
        return cls.free(0)

    @classmethod
    def cyclic(cls, order: int) -> "FpAbGroup":
        return cls(1, IntMatrix.from_rows([[order]]))

    @classmethod
    def from_invariants(
        cls,
        rank: int,
        torsion: Sequence[int] = (),
    ) -> "FpAbGroup":
        """Group ``Z^rank + Z/t_1 + ... + Z/t_k``."""
        n = rank + len(torsion)
        return cls(n, IntMatrix(n, len(torsion), {
            rank + k: {k: t} for k, t in enumerate(torsion)
        }))

    @cached_property
    def invariants(self) -> Tuple[int, Tuple[int, ...]]:
        """Normal form as free rank and torsion coefficients ``> 1``, each
        dividing the next."""
        factors = invariant_factors(self.relations)
        return (
            self.generators - len(factors),
            tuple(f for f in factors if f > 1),
        )

    @property
    def rank(self) -> int:
        return self.invariants[0]

    @property
    def torsion(self) -> Tuple[int, ...]:
        return self.invariants[1]

    @cached_property
    def relation_lattice(self) -> Lattice:
        return Lattice(self.relations)

    def is_free(self) -> bool:
        return not self.torsion

    def is_zero(self) -> bool:
        return self.invariants == (0, ())

    def is_isomorphic(self, other: "FpAbGroup") -> bool:
        return self.invariants == other.invariants

    def contains_relation(self, vector: Sequence[int]) -> bool:
        """Whether `vector` represents zero in the group."""
        if not any(vector):
            return True
        if self.relations.is_zero():
            return False
        return self.relation_lattice.contains(vector)

    def describe(self) -> str:
        """Human readable normal form, e.g. ``Z^2 + Z/2``."""
        rank, torsion = self.invariants
        parts = []
        if rank == 1:
            parts.append("Z")
        elif rank > 1:
            parts.append(f"Z^{rank}")
        parts.extend(f"Z/{t}" for t in torsion)
        return " + ".join(parts) if parts else "0"

    def direct_sum(self, other: "FpAbGroup") -> "FpAbGroup":
        return FpAbGroup(
            self.generators + other.generators,
            IntMatrix.block_diagonal([self.relations, other.relations]),
        )

    def tensor_free(self, k: int) -> "FpAbGroup":
        """Tensor product with ``Z^k``; generator ``(i, c)`` has index
        ``i * k + c``."""
        return FpAbGroup(
            self.generators * k,
            self.relations.kron(IntMatrix.identity(k)),
        )

    def simplify(self) -> Simplification:
        """Isomorphic presentation without superfluous generators.

        Relations with a unit coefficient are used to eliminate generators;
        the remaining relations are brought into Smith normal form, after
        which generators of order one are dropped.

        Returns:
            The simplified group together with the coordinate changes in
            both directions.
        """
        g = self.generators
        rows = {
            i: dict(row) for i, row in self.relations.transpose()._data.items()
        }
        eliminated = _eliminate_unit_pivots(rows)
        gone = {j for _, j, _, _ in eliminated}
        kept = [j for j in range(g) if j not in gone]
        kept_index = {j: k for k, j in enumerate(kept)}
        # coordinates of every old generator in terms of the kept ones
        expressions: Dict[int, Row] = {j: {kept_index[j]: 1} for j in kept}
        for _, j, pivot, row in reversed(eliminated):
            expr: Row = {}
            for h, coeff in row.items():
                if h == j:
                    continue
                for k, value in expressions[h].items():
                    expr[k] = expr.get(k, 0) - pivot * coeff * value
            expressions[j] = {k: v for k, v in expr.items() if v}
        sub_data: Dict[int, Row] = defaultdict(dict)
        for j, expr in expressions.items():
            for k, v in expr.items():
                sub_data[k][j] = v
        substitution = IntMatrix._trusted(len(kept), g, dict(sub_data))
        remaining = [
            [rows[i].get(j, 0) for i in sorted(rows)] for j in kept
        ]
        diagonal, u, u_inv, _ = _snf_dense(
            remaining, len(kept), len(rows), track=True
        )
        assert u is not None and u_inv is not None
        keep = [
            i for i in range(len(kept))
            if i >= len(diagonal) or diagonal[i] != 1
        ]
        torsion = [
            (k, diagonal[i]) for k, i in enumerate(keep)
            if i < len(diagonal) and diagonal[i] > 1
        ]
        group = FpAbGroup(len(keep), IntMatrix(len(keep), len(torsion), {
            k: {c: d} for c, (k, d) in enumerate(torsion)
        }))
        u_rows = IntMatrix.from_rows(
            [u[i] for i in keep], cols=len(kept)
        )
        inclusion = IntMatrix(g, len(kept), {
            j: {k: 1} for k, j in enumerate(kept)
        })
        u_inv_cols = IntMatrix.from_rows(
            [[u_inv[r][i] for i in keep] for r in range(len(kept))],
            cols=len(keep),
        )
        return Simplification(
            group=group,
            to_new=u_rows @ substitution,
            from_new=inclusion @ u_inv_cols,
        )


@dataclass(frozen=True)
class GroupMorphism:
    """Homomorphism of finitely presented abelian groups.

    Args:
        source: Source group.
        target: Target group.
        matrix: Matrix with one row per target generator and one column per
            source generator.

    Raises:
        ValueError: The matrix shape does not fit the groups.
    """
    source: FpAbGroup
    target: FpAbGroup
    matrix: IntMatrix

    def __post_init__(self) -> None:
        if self.matrix.shape != (
            self.target.generators, self.source.generators
        ):
            raise ValueError(
                f"matrix of shape {self.matrix.shape} does not map "
                f"{self.source.generators} onto {self.target.generators} "
                "generators"
            )

    @classmethod
    def zero(cls, source: FpAbGroup, target: FpAbGroup) -> "GroupMorphism":
        return cls(source, target, IntMatrix(target.generators,
                                             source.generators))

    def _vanishes(self, matrix: IntMatrix) -> bool:
        if matrix.is_zero():
            return True
        if self.target.relations.is_zero():
            return False
        return all(
            self.target.contains_relation(c) for c in matrix.columns()
        )

    def is_well_defined(self) -> bool:
        """Whether relations of the source map into relations of the
        target."""
        return self._vanishes(self.matrix @ self.source.relations)

    def validate(self) -> None:
        """Raise :class:`BrokenComplexError` unless well defined."""
        if not self.is_well_defined():
            raise BrokenComplexError(
                "morphism does not map relations into relations"
            )

    def is_zero(self) -> bool:
        return self._vanishes(self.matrix)

    def equals(self, other: "GroupMorphism") -> bool:
        """Equality as maps, i.e. modulo the relations of the target."""
        return self._vanishes(self.matrix - other.matrix)

    def compose(self, other: "GroupMorphism") -> "GroupMorphism":
        """The composite ``self . other``."""
        return GroupMorphism(other.source, self.target,
                             self.matrix @ other.matrix)

    def transported(
        self,
        source: Simplification,
        target: Simplification,
    ) -> "GroupMorphism":
        """The same map between simplified presentations."""
        return GroupMorphism(
            source.group,
            target.group,
            target.to_new @ self.matrix @ source.from_new,
        )

    def cokernel(self) -> FpAbGroup:
        return FpAbGroup(
            self.target.generators,
            IntMatrix.hstack(
                self.target.generators, self.target.relations, self.matrix
            ),
        )


@dataclass(frozen=True)
class Subquotient:
    """``ker g / im f`` together with the data to compute classes in it.

    Attributes:
        group: Presentation of the subquotient.
        basis: Generators of the kernel lift, one column per generator of
            `group`, in coordinates of the middle group.
        lattice: Lattice spanned by `basis`.
    """
    group: FpAbGroup
    basis: IntMatrix
    lattice: Lattice

    def classes(self, vectors: IntMatrix) -> IntMatrix:
        """Coordinates of the classes of the columns of `vectors`.

        Raises:
            BrokenComplexError: A column does not lie in the kernel.
        """
        columns = []
        for column in vectors.columns():
            coords = self.lattice.coordinates(column)
            if coords is None:
                raise BrokenComplexError(
                    "vector does not lie in the kernel of the subquotient"
                )
            columns.append(coords)
        return IntMatrix.from_columns(columns, rows=self.group.generators)


def subquotient(f: GroupMorphism, g: GroupMorphism) -> Subquotient:
    """Compute ``ker g / im f`` for ``A --f--> B --g--> C``.

    The kernel of ``g`` is taken modulo the relations of ``C``; the image
    of ``f`` is enlarged by the relations of ``B``.

    Args:
        f: Incoming morphism.
        g: Outgoing morphism.

    Returns:
        The subquotient.

    Raises:
        ValueError: `f` and `g` are not composable.
        BrokenComplexError: ``g . f`` does not vanish.
    """
    middle = g.source
    if f.target.generators != middle.generators:
        raise ValueError("morphisms are not composable")
    if not g.compose(f).is_zero():
        raise BrokenComplexError("composite of consecutive maps is nonzero")
    stacked = IntMatrix.hstack(
        g.target.generators, g.matrix, g.target.relations
    )
    kernel = kernel_lattice(stacked)
    lift = kernel.submatrix(range(middle.generators), range(kernel.cols))
    lattice = Lattice(lift)
    denominator = IntMatrix.hstack(
        middle.generators, f.matrix, middle.relations
    )
    coords = []
    for column in denominator.columns():
        c = lattice.coordinates(column)
        if c is None:
            raise BrokenComplexError("image does not lie in the kernel")
        coords.append(c)
    group = FpAbGroup(
        lattice.rank, IntMatrix.from_columns(coords, rows=lattice.rank)
    )
    return Subquotient(group=group, basis=lattice.basis(), lattice=lattice)


def subquotient_homology(f: GroupMorphism, g: GroupMorphism) -> FpAbGroup:
    """Presentation of ``ker g / im f``, cf. :func:`subquotient`."""
    return subquotient(f, g).group


def induced_morphism(
    matrix: IntMatrix,
    source: Subquotient,
    target: Subquotient,
) -> GroupMorphism:
    """Map between subquotients induced by a cochain level `matrix`."""
    return GroupMorphism(
        source.group,
        target.group,
        target.classes(matrix @ source.basis),
    )
