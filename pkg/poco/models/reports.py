"""Models for computation reports."""

from typing import (Dict, List, Optional, Tuple)

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_validator,
)


class PocoBaseReport(BaseModel):
    """Base for report models."""
    model_config = ConfigDict(extra='forbid')


class AbelianGroupModel(PocoBaseReport):
    """Finitely generated abelian group in normal form.

    Args:
        rank: Free rank.
        torsion: Torsion coefficients, each greater than one and dividing
            the next.

    Raises:
        pydantic.ValidationError: Torsion coefficients are not a
            divisibility chain of integers greater than one.

    Example:
        >>> AbelianGroupModel(rank=1, torsion=[2])
        AbelianGroupModel(rank=1, torsion=[2])
    """
    rank: int = Field(0, ge=0)
    torsion: List[int] = []

    @field_validator("torsion")
    @classmethod
    def validate_divisibility(cls, value: List[int]) -> List[int]:
        if any(t < 2 for t in value):
            raise ValueError("torsion coefficients must exceed one")
        if any(b % a for a, b in zip(value, value[1:])):
            raise ValueError("torsion coefficients must divide each other")
        return value

    def invariants(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.rank, tuple(self.torsion))

    def describe(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


class DegreeGroup(AbelianGroupModel):
    """Cohomology group in a single degree.

    Args:
        n: Degree.
        rank: Free rank.
        torsion: Torsion coefficients.
    """
    n: int


class CohomologyReport(PocoBaseReport):
    """Cohomology groups of a complex, one entry per computed degree.

    Args:
        provenance: Which complex the groups were computed from, e.g.
            ``singular`` or ``cellular``.
        degrees: Group per degree, in increasing order of degree.
    """
    provenance: str
    degrees: List[DegreeGroup] = []

    def group(self, n: int) -> Tuple[int, Tuple[int, ...]]:
        """Invariants in degree `n`; zero outside the computed range."""
        for entry in self.degrees:
            if entry.n == n:
                return entry.invariants()
        return (0, ())

    def ranks(self) -> List[int]:
        return [entry.rank for entry in self.degrees]

    def as_dict(self) -> Dict[int, Tuple[int, Tuple[int, ...]]]:
        return {entry.n: entry.invariants() for entry in self.degrees}

    def is_isomorphic(self, other: "CohomologyReport") -> bool:
        """Degreewise isomorphism, treating missing degrees as zero."""
        degrees = {e.n for e in self.degrees} | {e.n for e in other.degrees}
        return all(self.group(n) == other.group(n) for n in degrees)

    def describe(self) -> str:
        groups = ", ".join(
            f"H^{e.n} = {e.describe()}" for e in self.degrees
        )
        return f"{self.provenance}: {groups or 'no degrees'}"


class Witness(PocoBaseReport):
    """Element and degree witnessing a failed cellularity condition."""
    element: str
    degree: int


class DegreeComparison(PocoBaseReport):
    """Singular and cellular groups in one degree."""
    n: int
    hs: AbelianGroupModel
    hc: AbelianGroupModel
    isomorphic: bool


class ComparisonReport(PocoBaseReport):
    """Comparison of singular and cellular cohomology.

    Args:
        cellular: Whether the poset is cellular.
        witness: First violation of cellularity, if any.
        degrees: Per degree comparison.
        theorem_consistent: Whether cellularity implied an isomorphism in
            every degree, i.e. ``False`` only if a cellular poset has
            differing groups.
    """
    cellular: bool
    witness: Optional[Witness] = None
    degrees: List[DegreeComparison] = []
    theorem_consistent: bool = True

    def describe(self) -> str:
        differing = [d.n for d in self.degrees if not d.isomorphic]
        return (
            f"cellular={self.cellular}, differing degrees={differing}, "
            f"consistent={self.theorem_consistent}"
        )


class CheckReport(PocoBaseReport):
    """Structural properties of a poset."""
    graded: bool
    diamond: Optional[bool] = None
    cellular: Optional[bool] = None
    witness: Optional[Witness] = None


class SignEntry(PocoBaseReport):
    """Incidence sign ``[x, y]`` of a cover pair."""
    x: str
    y: str
    sign: int = Field(..., ge=-1, le=1)

    @field_validator("sign")
    @classmethod
    def validate_sign(cls, value: int) -> int:
        if value == 0:
            raise ValueError("sign must be +1 or -1")
        return value


class SignReport(PocoBaseReport):
    """Incidence signs of all cover pairs, sorted by pair."""
    signs: List[SignEntry] = []

    def as_dict(self) -> Dict[Tuple[str, str], int]:
        return {(e.x, e.y): e.sign for e in self.signs}
