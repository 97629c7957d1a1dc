"""Reading and writing input and report files."""

import json
import logging
from pathlib import Path
from typing import (
    Any,
    Union,
)

from poco.builders.cell_complexes import SimplicialComplexInput
from poco.builders.khovanov import LinkDiagram
from poco.models.schemas import (
    PosetSchema,
    PresheafSchema,
    SimplicialSchema,
)
from poco.posets.poset import Poset
from poco.posets.presheaf import Presheaf

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def read_json(path: PathLike) -> Any:
    """Parse a JSON file.

    Raises:
        OSError: The file cannot be read.
        json.JSONDecodeError: The file is not valid JSON.
    """
    with open(path, encoding="utf-8") as fp:
        return json.load(fp)


def dumps(data: Any) -> str:
    """Deterministic JSON text with sorted keys and two space indents."""
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def write_json(path: PathLike, data: Any) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        fp.write(dumps(data))
    logger.debug(f"Wrote '{path}'")


def read_poset(path: PathLike) -> Poset:
    return PosetSchema(**read_json(path)).to_poset()


def read_presheaf(path: PathLike, poset: Poset, check: bool = True
                  ) -> Presheaf:
    return PresheafSchema(**read_json(path)).to_presheaf(poset, check=check)


def read_simplicial(path: PathLike) -> SimplicialComplexInput:
    """Read ``{"facets": [["v1", "v2", ...], ...]}``."""
    return SimplicialSchema(**read_json(path)).to_complex()


def read_pd(path: PathLike) -> LinkDiagram:
    """Read a planar diagram code, one crossing per line."""
    with open(path, encoding="utf-8") as fp:
        return LinkDiagram.from_pd_text(fp.read())


def write_poset(path: PathLike, poset: Poset) -> None:
    write_json(path, PosetSchema.from_poset(poset).model_dump())


def write_presheaf(path: PathLike, presheaf: Presheaf) -> None:
    write_json(path, PresheafSchema.from_presheaf(presheaf).model_dump())
