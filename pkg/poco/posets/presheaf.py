"""Presheaves of free abelian groups on finite posets."""

from dataclasses import dataclass
import logging
from typing import (
    Any,
    Dict,
    List,
    Mapping,
    Optional,
    Tuple,
)

from poco.algebra.abelian import IntMatrix
from poco.errors.exceptions import (
    BaseMismatchError,
    FunctorialityError,
    InputError,
    NonMonotoneMapError,
    PresheafShapeError,
    UnknownElementError,
)
from poco.posets.poset import (
    Cover,
    Poset,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FunctorialityReport:
    """Outcome of a path independence check.

    Attributes:
        ok: Whether all composites agree.
        lower: Bottom of the first offending interval.
        upper: Top of the first offending interval.
        chains: Two saturated chains from `lower` to `upper` whose
            composites differ.
    """
    ok: bool
    lower: Optional[str] = None
    upper: Optional[str] = None
    chains: Tuple[Tuple[str, ...], ...] = ()

    def describe(self) -> str:
        if self.ok:
            return "restriction maps are path independent"
        first, second = self.chains
        return (
            f"composites from '{self.lower}' to '{self.upper}' differ along "
            f"{' < '.join(first)} and {' < '.join(second)}"
        )


class Presheaf:
    """Contravariant functor from a poset to free abelian groups.

    Each element ``x`` carries ``Z^dims[x]``; each cover ``x < y`` carries
    the restriction ``F^y_x : F(y) -> F(x)`` as a ``dims[x] x dims[y]``
    matrix.

    Args:
        base: The poset.
        dims: Rank of the group at each element.
        cover_maps: Restriction matrix for each cover pair. Covers between
            elements one of which carries the zero group may be omitted.
        check: Whether path independence is verified eagerly.

    Attributes:
        base: The poset.
        dims: Rank of the group at each element.
        cover_maps: Restriction matrix for each cover pair.

    Raises:
        PresheafShapeError: Dimensions or matrices do not fit the poset.
        FunctorialityError: Composites along different chains differ.
    """

    def __init__(
        self,
        base: Poset,
        dims: Mapping[str, int],
        cover_maps: Mapping[Cover, IntMatrix],
        check: bool = True,
    ) -> None:
        if set(dims) != set(base.elements):
            raise PresheafShapeError(
                "dimensions must be given for exactly the poset elements"
            )
        if any(d < 0 for d in dims.values()):
            raise PresheafShapeError("dimensions must be nonnegative")
        extra = set(cover_maps) - base.covers
        if extra:
            raise PresheafShapeError(
                f"map given for non-cover pair {sorted(extra)[0]}"
            )
        maps: Dict[Cover, IntMatrix] = {}
        for x, y in sorted(base.covers):
            shape = (dims[x], dims[y])
            matrix = cover_maps.get((x, y))
            if matrix is None:
                if 0 not in shape:
                    raise PresheafShapeError(
                        f"missing map for cover ('{x}', '{y}')"
                    )
                matrix = IntMatrix(*shape)
            if matrix.shape != shape:
                raise PresheafShapeError(
                    f"map for cover ('{x}', '{y}') has shape {matrix.shape}, "
                    f"expected {shape}"
                )
            maps[(x, y)] = matrix
        self.base = base
        self.dims: Dict[str, int] = {x: int(dims[x]) for x in base.elements}
        self.cover_maps = maps
        self._restrictions: Dict[Cover, IntMatrix] = {}
        if check:
            report = self.validate()
            if not report.ok:
                raise FunctorialityError(report.describe())

    def __repr__(self) -> str:
        return f"Presheaf(on {self.base!r}, total rank {self.total_rank})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Presheaf):
            return NotImplemented
        return (
            self.base == other.base
            and self.dims == other.dims
            and self.cover_maps == other.cover_maps
        )

    def describe(self) -> str:
        return f"presheaf of total rank {self.total_rank}"

    @property
    def total_rank(self) -> int:
        return sum(self.dims.values())

    def _first_cover(self, x: str, y: str) -> str:
        return next(
            z for z in self.base.upper_covers(x)
            if z == y or self.base.lt(z, y)
        )

    def restriction(self, x: str, y: str) -> IntMatrix:
        """``F^y_x : F(y) -> F(x)`` for ``x <= y``.

        Raises:
            UnknownElementError: An element is not in the base.
            InputError: ``x`` is not below ``y``.
        """
        if x not in self.base or y not in self.base:
            raise UnknownElementError(f"unknown element in ('{x}', '{y}')")
        if x == y:
            return IntMatrix.identity(self.dims[x])
        key = (x, y)
        cached = self._restrictions.get(key)
        if cached is not None:
            return cached
        if not self.base.lt(x, y):
            raise InputError(f"'{x}' is not below '{y}'")
        z = self._first_cover(x, y)
        matrix = self.cover_maps[(x, z)] @ self.restriction(z, y)
        self._restrictions[key] = matrix
        return matrix

    def _canonical_chain(self, x: str, y: str) -> Tuple[str, ...]:
        chain = [x]
        while chain[-1] != y:
            chain.append(self._first_cover(chain[-1], y))
        return tuple(chain)

    def validate(self) -> FunctorialityReport:
        """Check that composites of restrictions along saturated chains
        only depend on their end points.

        Intervals are visited by increasing size, so the first violation
        reported is a minimal one.

        Returns:
            Report naming the first offending interval and two chains.
        """
        pairs = sorted(
            (len(set(self.base.up(x)) & set(self.base.down(y))), x, y)
            for x in self.base.elements
            for y in self.base.up(x)
        )
        for _, x, y in pairs:
            expected = self.restriction(x, y)
            first = self._first_cover(x, y)
            for z in self.base.upper_covers(x):
                if z == first or not (z == y or self.base.lt(z, y)):
                    continue
                composite = self.cover_maps[(x, z)] @ self.restriction(z, y)
                if composite != expected:
                    return FunctorialityReport(
                        ok=False,
                        lower=x,
                        upper=y,
                        chains=(
                            self._canonical_chain(x, y),
                            (x,) + self._canonical_chain(z, y),
                        ),
                    )
        return FunctorialityReport(ok=True)

    def restrict(self, sub: Poset) -> "Presheaf":
        """Restriction to an induced subposet."""
        missing = [x for x in sub.elements if x not in self.base]
        if missing:
            raise BaseMismatchError(
                f"element '{missing[0]}' is not in the base poset"
            )
        return Presheaf(
            sub,
            {x: self.dims[x] for x in sub.elements},
            {(x, y): self.restriction(x, y) for x, y in sub.covers},
            check=False,
        )

    def pullback(
        self, mapping: Mapping[str, str], source: Poset
    ) -> "Presheaf":
        """Pullback ``f^* F`` along a monotone map ``f : source -> base``.

        Raises:
            NonMonotoneMapError: The map does not preserve the order.
        """
        for x, y in source.covers:
            if not self.base.leq(mapping[x], mapping[y]):
                raise NonMonotoneMapError(
                    f"map sends cover ('{x}', '{y}') to non-comparable pair"
                )
        return Presheaf(
            source,
            {x: self.dims[mapping[x]] for x in source.elements},
            {
                (x, y): self.restriction(mapping[x], mapping[y])
                for x, y in source.covers
            },
            check=False,
        )

    def direct_sum(self, other: "Presheaf") -> "Presheaf":
        if other.base != self.base:
            raise BaseMismatchError("presheaves live on different posets")
        return Presheaf(
            self.base,
            {x: self.dims[x] + other.dims[x] for x in self.base.elements},
            {
                c: IntMatrix.block_diagonal(
                    [self.cover_maps[c], other.cover_maps[c]]
                )
                for c in self.base.covers
            },
            check=False,
        )

    def change_basis(
        self,
        bases: Mapping[str, IntMatrix],
        inverses: Mapping[str, IntMatrix],
    ) -> "Presheaf":
        """Isomorphic presheaf ``U_x F^y_x U_y^-1``.

        Args:
            bases: Unimodular matrix ``U_x`` per element.
            inverses: Inverse of each ``U_x``.

        Returns:
            The transformed presheaf.
        """
        return Presheaf(
            self.base,
            self.dims,
            {
                (x, y): bases[x] @ self.cover_maps[(x, y)] @ inverses[y]
                for x, y in self.base.covers
            },
            check=False,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dims": dict(self.dims),
            "maps": {
                f"{x}<{y}": m.to_rows()
                for (x, y), m in sorted(self.cover_maps.items())
            },
        }


@dataclass(frozen=True)
class PresheafMorphism:
    """Natural transformation ``kappa : F -> G`` given by one matrix
    ``kappa_x : F(x) -> G(x)`` per element.

    Raises:
        BaseMismatchError: The presheaves live on different posets.
        PresheafShapeError: A component has the wrong shape.
        FunctorialityError: A naturality square fails to commute.
    """
    source: Presheaf
    target: Presheaf
    components: Mapping[str, IntMatrix]

    def __post_init__(self) -> None:
        if self.source.base != self.target.base:
            raise BaseMismatchError("presheaves live on different posets")
        base = self.source.base
        for x in base.elements:
            shape = (self.target.dims[x], self.source.dims[x])
            if x not in self.components or self.components[x].shape != shape:
                raise PresheafShapeError(
                    f"component at '{x}' must have shape {shape}"
                )
        for x, y in sorted(base.covers):
            left = self.components[x] @ self.source.cover_maps[(x, y)]
            right = self.target.cover_maps[(x, y)] @ self.components[y]
            if left != right:
                raise FunctorialityError(
                    f"naturality fails on cover ('{x}', '{y}')"
                )


def constant(base: Poset, k: int) -> Presheaf:
    """Constant presheaf ``Delta Z^k``."""
    identity = IntMatrix.identity(k)
    return Presheaf(
        base,
        {x: k for x in base.elements},
        {c: identity for c in base.covers},
        check=False,
    )


def yoneda(base: Poset, x: str, k: int = 1) -> Presheaf:
    """Presheaf ``Z^k`` on ``P_{<=x}`` and zero elsewhere."""
    if x not in base:
        raise UnknownElementError(f"unknown element '{x}'")
    below = set(base.down(x)) | {x}
    dims = {y: (k if y in below else 0) for y in base.elements}
    return Presheaf(
        base,
        dims,
        {
            (a, b): (
                IntMatrix.identity(k) if b in below
                else IntMatrix(dims[a], dims[b])
            )
            for a, b in base.covers
        },
        check=False,
    )


def canonical_kappa(presheaf: Presheaf, x: str) -> PresheafMorphism:
    """``kappa : F|P_{>=x} -> Delta F(x)`` with ``kappa_y = F^y_x``."""
    interval = presheaf.base.closed_interval(x)
    return PresheafMorphism(
        presheaf.restrict(interval),
        constant(interval, presheaf.dims[x]),
        {y: presheaf.restriction(x, y) for y in interval.elements},
    )


def presheaf_from_dict(base: Poset, data: Mapping[str, Any],
                       check: bool = True) -> Presheaf:
    """Build a presheaf from its JSON form ``{"dims": ..., "maps": ...}``.

    Raises:
        PresheafShapeError: Keys or shapes do not fit the poset.
    """
    dims = dict(data.get("dims", {}))
    missing = set(base.elements) - set(dims)
    if missing:
        raise PresheafShapeError(
            f"no dimension given for '{sorted(missing)[0]}'"
        )
    maps: Dict[Cover, IntMatrix] = {}
    for key, rows in data.get("maps", {}).items():
        x, sep, y = key.partition("<")
        if not sep:
            raise PresheafShapeError(f"map key '{key}' is not of form 'x<y'")
        if x not in dims or y not in dims:
            raise PresheafShapeError(f"map key '{key}' names unknown element")
        try:
            maps[(x, y)] = IntMatrix.from_rows(
                rows, cols=dims[y]
            ) if rows else IntMatrix(dims[x], dims[y])
        except ValueError as exc:
            raise PresheafShapeError(
                f"map for '{key}' is not a matrix of shape "
                f"{(dims[x], dims[y])}"
            ) from exc
    return Presheaf(base, dims, maps, check=check)


def direct_sum(presheaves: List[Presheaf]) -> Presheaf:
    result = presheaves[0]
    for other in presheaves[1:]:
        result = result.direct_sum(other)
    return result
