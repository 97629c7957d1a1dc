"""Models for poset, presheaf and simplicial complex input files."""

from typing import (
    Dict,
    List,
    Optional,
    Tuple,
)

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_validator,
)

from poco.builders.cell_complexes import SimplicialComplexInput
from poco.posets.poset import (
    Poset,
    from_covers,
)
from poco.posets.presheaf import (
    Presheaf,
    presheaf_from_dict,
)


class PocoBaseSchema(BaseModel):
    """Base for input file models."""
    model_config = ConfigDict(extra='forbid')


class PosetSchema(PocoBaseSchema):
    """Poset given by its cover relation.

    Args:
        elements: Element identifiers.
        covers: Pairs ``[x, y]`` with ``y`` covering ``x``.
        rank: Optional rank function; inferred if omitted.

    Example:
        >>> PosetSchema(elements=["a", "b"], covers=[("a", "b")]).to_poset()
        Poset(2 elements, 1 covers)
    """
    elements: List[str]
    covers: List[Tuple[str, str]] = []
    rank: Optional[Dict[str, int]] = None

    @field_validator("elements")
    @classmethod
    def validate_identifiers(cls, value: List[str]) -> List[str]:
        for x in value:
            if not x or "<" in x:
                raise ValueError(
                    f"element identifier '{x}' must be nonempty and must "
                    "not contain '<'"
                )
        return value

    def to_poset(self) -> Poset:
        return from_covers(self.elements, self.covers, self.rank)

    @classmethod
    def from_poset(cls, poset: Poset) -> "PosetSchema":
        return cls(**poset.to_dict())


class PresheafSchema(PocoBaseSchema):
    """Presheaf given by ranks and cover restriction matrices.

    Args:
        dims: Rank of the group at each element.
        maps: Restriction matrix per cover, keyed ``x<y`` and given as a
            list of rows.
    """
    dims: Dict[str, int]
    maps: Dict[str, List[List[int]]] = {}

    @field_validator("dims")
    @classmethod
    def validate_dims(cls, value: Dict[str, int]) -> Dict[str, int]:
        negative = sorted(x for x, d in value.items() if d < 0)
        if negative:
            raise ValueError(f"negative rank at '{negative[0]}'")
        return value

    def to_presheaf(self, poset: Poset, check: bool = True) -> Presheaf:
        return presheaf_from_dict(poset, self.model_dump(), check=check)

    @classmethod
    def from_presheaf(cls, presheaf: Presheaf) -> "PresheafSchema":
        return cls(**presheaf.to_dict())


class SimplicialSchema(PocoBaseSchema):
    """Simplicial complex given by its facets."""
    facets: List[List[str]] = Field(..., min_length=1)
    vertices: Optional[List[str]] = None

    def to_complex(self) -> SimplicialComplexInput:
        return SimplicialComplexInput.from_facets(self.facets, self.vertices)
