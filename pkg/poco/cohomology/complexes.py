"""Cochain complexes of finitely presented abelian groups."""

from dataclasses import (dataclass, field)
import logging
from typing import (
    Dict,
    Hashable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

from poco.algebra.abelian import (
    FpAbGroup,
    GroupMorphism,
    IntMatrix,
    Subquotient,
    invariant_factors,
    subquotient,
)
from poco.errors.exceptions import BrokenComplexError
from poco.models.reports import (
    CohomologyReport,
    DegreeGroup,
)
from poco.utils.logging import log_computation

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CochainComplex:
    """Bounded cochain complex ``... -> C^n --d^n--> C^{n+1} -> ...``.

    Args:
        groups: Group per degree over a contiguous range of degrees.
        differentials: ``d^n : C^n -> C^{n+1}`` keyed by ``n``; missing
            differentials are zero.
        labels: Label of every generator, per degree.
        name: Provenance recorded in cohomology reports.
        valid_through: Highest degree whose cohomology is meaningful, for
            complexes truncated from above; defaults to the top degree.

    Raises:
        ValueError: Degrees are not contiguous or maps do not fit.
    """
    groups: Mapping[int, FpAbGroup]
    differentials: Mapping[int, GroupMorphism] = field(default_factory=dict)
    labels: Mapping[int, Sequence[Hashable]] = field(default_factory=dict)
    name: str = "complex"
    valid_through: Optional[int] = None

    def __post_init__(self) -> None:
        degrees = sorted(self.groups)
        if degrees and degrees != list(range(degrees[0], degrees[-1] + 1)):
            raise ValueError("degrees of a complex must be contiguous")
        for n, d in self.differentials.items():
            if d.source.generators != self.group(n).generators:
                raise ValueError(f"differential d^{n} has the wrong source")
            if d.target.generators != self.group(n + 1).generators:
                raise ValueError(f"differential d^{n} has the wrong target")
        for n, names in self.labels.items():
            if len(names) != self.group(n).generators:
                raise ValueError(f"wrong number of labels in degree {n}")

    @property
    def degrees(self) -> List[int]:
        return sorted(self.groups)

    def group(self, n: int) -> FpAbGroup:
        return self.groups.get(n, FpAbGroup.zero())

    def differential(self, n: int) -> GroupMorphism:
        d = self.differentials.get(n)
        if d is None:
            return GroupMorphism.zero(self.group(n), self.group(n + 1))
        return d

    def index(self, n: int) -> Dict[Hashable, int]:
        """Position of each generator label in degree `n`."""
        return {label: k for k, label in enumerate(self.labels.get(n, ()))}

    def is_free(self) -> bool:
        return all(g.relations.is_zero() for g in self.groups.values())

    def describe(self) -> str:
        sizes = ", ".join(
            f"C^{n}: {self.groups[n].generators}" for n in self.degrees
        )
        return f"{self.name} complex ({sizes or 'zero'})"

    def validate(self) -> None:
        """Verify that maps are well defined and ``d . d`` vanishes.

        Raises:
            BrokenComplexError: A check fails.
        """
        for n in self.degrees:
            d = self.differential(n)
            if not d.is_well_defined():
                raise BrokenComplexError(
                    f"{self.name}: d^{n} does not respect relations"
                )
            if not self.differential(n + 1).compose(d).is_zero():
                raise BrokenComplexError(
                    f"{self.name}: d^{n + 1} . d^{n} does not vanish"
                )

    def subquotient(self, n: int) -> Subquotient:
        """``H^n`` together with the data to compute classes in it."""
        return subquotient(self.differential(n - 1), self.differential(n))

    def euler_characteristic(self) -> int:
        return sum(
            (-1) ** n * self.group(n).rank for n in self.degrees
        )


@dataclass(frozen=True, eq=False)
class ChainMap:
    """Degreewise matrices between two cochain complexes."""
    source: CochainComplex
    target: CochainComplex
    matrices: Mapping[int, IntMatrix]

    def matrix(self, n: int) -> IntMatrix:
        m = self.matrices.get(n)
        if m is None:
            return IntMatrix(
                self.target.group(n).generators,
                self.source.group(n).generators,
            )
        return m

    def is_chain_map(self) -> bool:
        """Whether ``d . f = f . d`` in every degree."""
        degrees = set(self.source.degrees) | set(self.target.degrees)
        for n in sorted(degrees):
            left = self.target.differential(n).matrix @ self.matrix(n)
            right = self.matrix(n + 1) @ self.source.differential(n).matrix
            if left != right:
                return False
        return True

    def induced(self, n: int) -> GroupMorphism:
        """The map ``H^n(source) -> H^n(target)``."""
        source = self.source.subquotient(n)
        target = self.target.subquotient(n)
        return GroupMorphism(
            source.group,
            target.group,
            target.classes(self.matrix(n) @ source.basis),
        )


def _report(
    name: str,
    groups: Sequence[Tuple[int, int, Tuple[int, ...]]],
) -> CohomologyReport:
    return CohomologyReport(
        provenance=name,
        degrees=[
            DegreeGroup(n=n, rank=r, torsion=list(t)) for n, r, t in groups
        ],
    )


def _free_cohomology(
    matrices: Mapping[int, IntMatrix],
    sizes: Mapping[int, int],
    degrees: Sequence[int],
) -> List[Tuple[int, int, Tuple[int, ...]]]:
    """Cohomology of a complex of free groups from invariant factors."""
    factors: Dict[int, List[int]] = {}

    def factors_of(n: int) -> List[int]:
        if n not in factors:
            m = matrices.get(n)
            factors[n] = invariant_factors(m) if m is not None else []
        return factors[n]

    result = []
    for n in degrees:
        outgoing = len(factors_of(n))
        incoming = factors_of(n - 1)
        result.append((
            n,
            sizes[n] - outgoing - len(incoming),
            tuple(f for f in incoming if f > 1),
        ))
    return result


@log_computation
def cohomology(
    complex: CochainComplex,
    check: bool = True,
) -> CohomologyReport:
    """Cohomology groups of a complex in every meaningful degree.

    Complexes of free groups are handled by invariant factors of the
    differentials. Otherwise every group is simplified first; if torsion
    remains, each degree is computed as a subquotient.

    Args:
        complex: The complex.
        check: Whether ``d . d = 0`` is verified first; callers that built
            and checked the complex themselves may skip it.

    Returns:
        Report with one entry per degree up to ``valid_through``.

    Raises:
        BrokenComplexError: A differential is not well defined or two
            consecutive ones do not compose to zero.
    """
    if check:
        complex.validate()
    degrees = [
        n for n in complex.degrees
        if complex.valid_through is None or n <= complex.valid_through
    ]
    if complex.is_free():
        return _report(complex.name, _free_cohomology(
            {n: d.matrix for n, d in complex.differentials.items()},
            {n: g.generators for n, g in complex.groups.items()},
            degrees,
        ))
    simplified = {n: complex.group(n).simplify() for n in complex.degrees}
    if all(s.group.relations.is_zero() for s in simplified.values()):
        matrices = {}
        for n, d in complex.differentials.items():
            if n in simplified and n + 1 in simplified:
                matrices[n] = d.transported(
                    simplified[n], simplified[n + 1]
                ).matrix
        return _report(complex.name, _free_cohomology(
            matrices,
            {n: s.group.generators for n, s in simplified.items()},
            degrees,
        ))
    reduced = CochainComplex(
        groups={n: s.group for n, s in simplified.items()},
        differentials={
            n: d.transported(simplified[n], simplified[n + 1])
            for n, d in complex.differentials.items()
            if n in simplified and n + 1 in simplified
        },
        name=complex.name,
    )
    result = []
    for n in degrees:
        rank, torsion = reduced.subquotient(n).group.invariants
        result.append((n, rank, torsion))
    return _report(complex.name, result)
