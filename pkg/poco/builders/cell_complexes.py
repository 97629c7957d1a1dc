"""Cell posets of simplicial complexes, polygons, suspensions and trees."""

from dataclasses import dataclass
from itertools import combinations
import logging
from typing import (
    FrozenSet,
    Iterable,
    List,
    Optional,
    Tuple,
)

from poco.errors.exceptions import (
    InputError,
    PreconditionError,
)
from poco.posets.poset import (
    Poset,
    from_covers,
)

logger = logging.getLogger(__name__)

APEXES = ("1", "1'")


def subset_id(subset: Iterable[object]) -> str:
    """Identifier of a finite set, e.g. ``{1,2}``; members are sorted."""
    members = sorted(subset, key=lambda m: (len(str(m)), str(m)))
    return "{" + ",".join(str(m) for m in members) + "}"


def face_id(face: Iterable[str]) -> str:
    """Identifier of a simplex: its sorted vertices joined by dashes."""
    return "-".join(sorted(face))


@dataclass(frozen=True)
class SimplicialComplexInput:
    """Finite simplicial complex given by its facets.

    Attributes:
        vertices: Vertex labels in lexicographic order.
        facets: Facets as vertex sets; every face of a facet belongs to the
            complex.

    Raises:
        InputError: A facet is empty or repeated, or names an unknown
            vertex, or a vertex lies on no facet.
    """
    vertices: Tuple[str, ...]
    facets: Tuple[FrozenSet[str], ...]

    def __post_init__(self) -> None:
        if not self.facets:
            raise InputError("a simplicial complex needs at least one facet")
        known = set(self.vertices)
        if len(known) != len(self.vertices):
            raise InputError("duplicate vertex labels")
        if any(not facet for facet in self.facets):
            raise InputError("facets must be nonempty")
        if len(set(self.facets)) != len(self.facets):
            raise InputError("duplicate facets")
        used = set()
        for facet in self.facets:
            unknown = facet - known
            if unknown:
                raise InputError(
                    f"facet {face_id(facet)} names unknown vertex "
                    f"'{sorted(unknown)[0]}'"
                )
            used |= facet
        if used != known:
            raise InputError(
                f"vertex '{sorted(known - used)[0]}' lies on no facet"
            )

    @classmethod
    def from_facets(
        cls,
        facets: Iterable[Iterable[object]],
        vertices: Optional[Iterable[object]] = None,
    ) -> "SimplicialComplexInput":
        """Complex from facets given as vertex lists.

        Raises:
            InputError: A facet repeats a vertex, or see the class.
        """
        sets = []
        for facet in facets:
            labels = [str(v) for v in facet]
            if len(set(labels)) != len(labels):
                raise InputError(f"facet {labels} repeats a vertex")
            sets.append(frozenset(labels))
        if vertices is None:
            vertices = set().union(*sets) if sets else set()
        return cls(
            tuple(sorted(str(v) for v in vertices)), tuple(sets)
        )

    @property
    def dimension(self) -> int:
        return max(len(facet) for facet in self.facets) - 1

    def is_pure(self) -> bool:
        return all(len(f) == self.dimension + 1 for f in self.facets)

    def faces(self) -> List[FrozenSet[str]]:
        """All nonempty faces, ordered by dimension and then vertices."""
        faces = set()
        for facet in self.facets:
            for k in range(1, len(facet) + 1):
                faces.update(
                    frozenset(c) for c in combinations(sorted(facet), k)
                )
        return sorted(faces, key=lambda f: (len(f), sorted(f)))


def face_poset(
    complex: SimplicialComplexInput,
    adjoin_minimum: bool = False,
) -> Poset:
    """Cell poset of a simplicial complex: faces under reverse inclusion.

    The corank of a face is its dimension. With `adjoin_minimum`, a formal
    least element ``_0`` of corank ``dim + 1`` is added below all facets.

    Raises:
        InputError: A minimum is requested for a complex that is not pure.
    """
    faces = complex.faces()
    top = complex.dimension
    covers = [
        (face_id(face), face_id(face - {v}))
        for face in faces if len(face) > 1
        for v in sorted(face)
    ]
    poset = from_covers(
        [face_id(f) for f in faces],
        covers,
        {face_id(f): top - (len(f) - 1) for f in faces},
    )
    if adjoin_minimum:
        if not complex.is_pure():
            raise InputError("adjoining a minimum needs a pure complex")
        poset = poset.add_minimum()
    logger.debug(f"Face poset: {poset.describe()}")
    return poset


def boundary_simplex(n: int) -> SimplicialComplexInput:
    """Boundary of the ``n``-simplex on vertices ``0..n``."""
    if n < 1:
        raise InputError("the boundary of a simplex needs n >= 1")
    vertices = [str(v) for v in range(n + 1)]
    return SimplicialComplexInput.from_facets(combinations(vertices, n))


def rp2_triangulation() -> SimplicialComplexInput:
    """Six vertex triangulation of the real projective plane."""
    facets = [
        "124", "126", "135", "136", "145",
        "234", "235", "256", "346", "456",
    ]
    return SimplicialComplexInput.from_facets(list(f) for f in facets)


def rp2_poset() -> Poset:
    """Face poset of :func:`rp2_triangulation` with a minimum adjoined."""
    return face_poset(rp2_triangulation(), adjoin_minimum=True)


def suspension(complex: SimplicialComplexInput) -> SimplicialComplexInput:
    """Suspension by two cone points ``n`` and ``s``, primed until unused."""
    apexes = []
    for name in ("n", "s"):
        while name in complex.vertices or name in apexes:
            name += "'"
        apexes.append(name)
    return SimplicialComplexInput.from_facets(
        [sorted(facet) + [apex] for apex in apexes
         for facet in complex.facets],
        list(complex.vertices) + apexes,
    )


def polygon_poset(k: int) -> Poset:
    """Cell poset of a ``k``-gon: vertices ``v0..`` and edges ``e0..`` with
    ``e_i`` below ``v_i`` and ``v_{i+1}``.

    Raises:
        InputError: `k` is less than two.
    """
    if k < 2:
        raise InputError("a polygon needs at least two edges")
    covers = []
    for i in range(k):
        covers.append((f"e{i}", f"v{i}"))
        covers.append((f"e{i}", f"v{(i + 1) % k}"))
    elements = [f"v{i}" for i in range(k)] + [f"e{i}" for i in range(k)]
    ranks = {x: (1 if x.startswith("v") else 0) for x in elements}
    return from_covers(elements, covers, ranks)


def circle_poset() -> Poset:
    """The circle with two vertices and two edges."""
    return polygon_poset(2)


def suspension_simplex_poset(n: int) -> Poset:
    """Cell poset of the suspension of the ``(n-1)``-simplex.

    Elements are the nonempty subsets ``T`` of ``{1..n}``, of corank
    ``|T|`` and ordered by reverse inclusion, plus two maxima ``1`` and
    ``1'`` above every singleton. For ``n = 0`` only the maxima remain.

    Raises:
        PreconditionError: `n` is negative or larger than eight.
    """
    if not 0 <= n <= 8:
        raise PreconditionError(f"suspension size {n} is out of range")
    crossings = range(1, n + 1)
    subsets = [
        frozenset(c) for k in range(1, n + 1)
        for c in combinations(crossings, k)
    ]
    covers = [
        (subset_id(t), subset_id(t - {c}))
        for t in subsets if len(t) > 1 for c in sorted(t)
    ]
    covers.extend(
        (subset_id({c}), apex) for c in crossings for apex in APEXES
    )
    ranks = {subset_id(t): n - len(t) for t in subsets}
    ranks.update({apex: n for apex in APEXES})
    return from_covers(list(ranks), covers, ranks)


def tree_poset(depth: int, branching: int) -> Poset:
    """Rooted tree ordered away from its root.

    The root ``r`` has `branching` children and every other inner vertex
    has ``branching - 1``, so that all inner vertices but the root have
    valence `branching`. Vertices are named by their path, e.g. ``r.0.1``;
    all leaves lie at distance `depth` from the root.

    Raises:
        InputError: ``depth < 1`` or ``branching < 2``.
    """
    if depth < 1 or branching < 2:
        raise InputError("a tree needs depth >= 1 and branching >= 2")
    elements = ["r"]
    covers = []
    ranks = {"r": 0}
    level = ["r"]
    for d in range(1, depth + 1):
        children = branching if d == 1 else branching - 1
        nxt = []
        for parent in level:
            for i in range(children):
                child = f"{parent}.{i}"
                elements.append(child)
                covers.append((parent, child))
                ranks[child] = d
                nxt.append(child)
        level = nxt
    return from_covers(elements, covers, ranks)


def facet_lists(complex: SimplicialComplexInput) -> List[List[str]]:
    """Facets as sorted vertex lists, for serialization."""
    return sorted(sorted(facet) for facet in complex.facets)
