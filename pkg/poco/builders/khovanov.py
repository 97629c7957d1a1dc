"""Khovanov cube of a link diagram as a presheaf on a suspension poset.

A link diagram is given by its planar diagram code, one crossing
``(a, b, c, d)`` per line. The 0-resolution of a crossing joins the strands
``a, b`` and ``c, d``; the 1-resolution joins ``a, d`` and ``b, c``. Each
resolution is a set of circles, and a circle carries ``V = Z<1, X>``.
"""

from dataclasses import dataclass
from itertools import (combinations, product)
import logging
import re
from typing import (
    Dict,
    FrozenSet,
    List,
    Sequence,
    Tuple,
)

import networkx as nx

from poco.algebra.abelian import (
    FpAbGroup,
    GroupMorphism,
    IntMatrix,
)
from poco.builders.cell_complexes import (
    APEXES,
    subset_id,
    suspension_simplex_poset,
)
from poco.cohomology.complexes import CochainComplex
from poco.errors.exceptions import (
    MalformedLinkError,
    PreconditionError,
)
from poco.posets.poset import Poset
from poco.posets.presheaf import Presheaf

logger = logging.getLogger(__name__)

MAX_CROSSINGS = 8

Crossing = Tuple[int, int, int, int]
Circle = FrozenSet[int]

_CROSSING = re.compile(r"^X\[?\s*([-\d,\s]+?)\s*\]?$")


@dataclass(frozen=True)
class LinkDiagram:
    """Planar diagram code.

    Attributes:
        crossings: Strand labels around each crossing; crossing ``k`` is
            the ``k``-th entry, counted from one.

    Raises:
        MalformedLinkError: A crossing does not have four strands or a
            strand label does not occur exactly twice.
    """
    crossings: Tuple[Crossing, ...] = ()

    def __post_init__(self) -> None:
        counts: Dict[int, int] = {}
        for crossing in self.crossings:
            if len(crossing) != 4:
                raise MalformedLinkError(
                    f"crossing {crossing} does not have four strands"
                )
            for label in crossing:
                counts[label] = counts.get(label, 0) + 1
        odd = sorted(label for label, k in counts.items() if k != 2)
        if odd:
            raise MalformedLinkError(
                f"strand {odd[0]} occurs {counts[odd[0]]} times"
            )

    @classmethod
    def from_pd_text(cls, text: str) -> "LinkDiagram":
        """Parse one crossing per line, written ``Xa,b,c,d`` or
        ``X[a,b,c,d]``; blank lines and ``#`` comments are ignored.

        Raises:
            MalformedLinkError: A line cannot be parsed.
        """
        crossings = []
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            match = _CROSSING.match(line)
            try:
                if match is None:
                    raise ValueError(line)
                labels = tuple(
                    int(v) for v in match.group(1).split(",") if v.strip()
                )
            except ValueError as exc:
                raise MalformedLinkError(
                    f"line {number} is not a crossing: '{line}'"
                ) from exc
            crossings.append(labels)
        return cls(tuple(crossings))  # type: ignore[arg-type]

    def to_pd_text(self) -> str:
        return "".join(
            "X" + ",".join(str(v) for v in c) + "\n" for c in self.crossings
        )

    def __len__(self) -> int:
        return len(self.crossings)


def trefoil_pd() -> LinkDiagram:
    """Right handed trefoil."""
    return LinkDiagram(((1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)))


def unknot_pd() -> LinkDiagram:
    """Crossingless unknot."""
    return LinkDiagram(())


def resolution_circles(
    diagram: LinkDiagram,
    resolved: FrozenSet[int],
) -> List[Circle]:
    """Circles of the resolution taking the 1-resolution exactly at the
    crossings in `resolved`, ordered by least strand label.

    The crossingless diagram has a single circle, labelled by the empty
    set.
    """
    if not diagram.crossings:
        return [frozenset()]
    graph = nx.MultiGraph()
    for k, (a, b, c, d) in enumerate(diagram.crossings, start=1):
        graph.add_nodes_from((a, b, c, d))
        if k in resolved:
            graph.add_edges_from(((a, d), (b, c)))
        else:
            graph.add_edges_from(((a, b), (c, d)))
    return sorted(
        (frozenset(component) for component in nx.connected_components(graph)),
        key=min,
    )


def _basis(circles: int) -> List[Tuple[int, ...]]:
    """Basis of ``V^circles``: ``0`` stands for ``1`` and ``1`` for ``X``."""
    return list(product((0, 1), repeat=circles))


def _merge(a: int, b: int) -> List[int]:
    if a and b:
        return []
    return [a + b]


def _split(a: int) -> List[Tuple[int, int]]:
    if a:
        return [(1, 1)]
    return [(0, 1), (1, 0)]


def edge_map(
    before: Sequence[Circle],
    after: Sequence[Circle],
) -> IntMatrix:
    """Frobenius map between the resolutions on either side of one
    crossing change: multiplication when two circles merge,
    comultiplication when one splits.

    Raises:
        MalformedLinkError: The circles neither merge nor split.
    """
    kept = set(before) & set(after)
    gone = [k for k, c in enumerate(before) if c not in kept]
    new = [k for k, c in enumerate(after) if c not in kept]
    position = {c: k for k, c in enumerate(after)}
    index = {v: k for k, v in enumerate(_basis(len(after)))}
    entries = []
    for col, vector in enumerate(_basis(len(before))):
        image = [0] * len(after)
        for k, c in enumerate(before):
            if c in kept:
                image[position[c]] = vector[k]
        if len(gone) == 2 and len(new) == 1:
            for value in _merge(vector[gone[0]], vector[gone[1]]):
                image[new[0]] = value
                entries.append((index[tuple(image)], col, 1))
        elif len(gone) == 1 and len(new) == 2:
            for first, second in _split(vector[gone[0]]):
                image[new[0]], image[new[1]] = first, second
                entries.append((index[tuple(image)], col, 1))
        else:
            raise MalformedLinkError(
                "a crossing change must merge or split circles"
            )
    return IntMatrix.from_entries(
        2 ** len(after), 2 ** len(before), entries
    )


def _check_size(diagram: LinkDiagram) -> None:
    if len(diagram) > MAX_CROSSINGS:
        raise PreconditionError(
            f"diagrams with more than {MAX_CROSSINGS} crossings are not "
            "supported"
        )


def khovanov(diagram: LinkDiagram) -> Tuple[Poset, Presheaf]:
    """Suspension poset of the crossings with the Khovanov presheaf.

    The group at a nonempty set ``T`` of crossings is ``V`` tensored once
    per circle of the ``T``-resolution; both maxima carry the group of the
    all-zero resolution. Restrictions are the Frobenius edge maps.
    """
    _check_size(diagram)
    n = len(diagram)
    poset = suspension_simplex_poset(n)
    crossings = range(1, n + 1)
    subsets = [frozenset()] + [
        frozenset(c) for k in crossings for c in combinations(crossings, k)
    ]
    circles = {t: resolution_circles(diagram, t) for t in subsets}
    ids = {t: subset_id(t) for t in subsets if t}
    dims = {ids[t]: 2 ** len(circles[t]) for t in ids}
    dims.update({apex: 2 ** len(circles[frozenset()]) for apex in APEXES})
    maps = {}
    for t in subsets:
        if not t:
            continue
        for c in sorted(t):
            smaller = t - {c}
            matrix = edge_map(circles[smaller], circles[t])
            if smaller:
                maps[(ids[t], ids[smaller])] = matrix
            else:
                for apex in APEXES:
                    maps[(ids[t], apex)] = matrix
    presheaf = Presheaf(poset, dims, maps)
    logger.info(
        f"Khovanov presheaf of a {n}-crossing diagram: "
        f"{presheaf.describe()}"
    )
    return poset, presheaf


def cube_complex(diagram: LinkDiagram) -> CochainComplex:
    """The Khovanov cube complex without grading shifts.

    ``C^k`` is the sum over ``k``-element sets of crossings; the edge from
    ``T`` to ``T + {c}`` carries the sign ``(-1)^#{c' in T : c' < c}``.
    """
    _check_size(diagram)
    n = len(diagram)
    crossings = range(1, n + 1)
    layers = {
        k: [frozenset(c) for c in combinations(crossings, k)]
        for k in range(n + 1)
    }
    circles = {
        t: resolution_circles(diagram, t)
        for layer in layers.values() for t in layer
    }
    offsets: Dict[FrozenSet[int], int] = {}
    groups = {}
    labels = {}
    for k, layer in layers.items():
        names = []
        for t in layer:
            offsets[t] = len(names)
            names.extend(
                (subset_id(t), v) for v in _basis(len(circles[t]))
            )
        groups[k] = FpAbGroup.free(len(names))
        labels[k] = names
    differentials = {}
    for k in range(n):
        entries = []
        for t in layers[k]:
            for c in crossings:
                if c in t:
                    continue
                larger = t | {c}
                sign = -1 if sum(1 for e in t if e < c) % 2 else 1
                block = edge_map(circles[t], circles[larger])
                entries.extend(
                    (offsets[larger] + i, offsets[t] + j, sign * v)
                    for i, j, v in block.items()
                )
        differentials[k] = GroupMorphism(
            groups[k], groups[k + 1],
            IntMatrix.from_entries(
                groups[k + 1].generators, groups[k].generators, entries
            ),
        )
    complex = CochainComplex(
        groups=groups,
        differentials=differentials,
        labels=labels,
        name="khovanov",
    )
    complex.validate()
    return complex
