"""Finite posets given by their cover relation."""

from functools import cached_property
import logging
from typing import (
    Any,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
)

import networkx as nx

from poco.errors.exceptions import (
    InputError,
    PosetCycleError,
    PreconditionError,
    RedundantCoverError,
    UngradedPosetError,
    UnknownElementError,
)

logger = logging.getLogger(__name__)

Cover = Tuple[str, str]

# identifiers of adjoined extremal elements
FORMAL_MINIMUM = "_0"
FORMAL_MAXIMUM = "_1"


def _infer_ranks(
    elements: Sequence[str],
    graph: nx.DiGraph,
) -> Optional[Dict[str, int]]:
    """Rank function increasing by one along covers, or ``None``.

    Each connected component is shifted so that its maximal rank agrees
    with the global maximal rank; ranks are then normalized to start at 0.
    """
    coranks: Dict[str, int] = {}
    undirected = graph.to_undirected(as_view=True)
    for component in nx.connected_components(undirected):
        start = min(component)
        level = {start: 0}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in graph.successors(x):
                if y not in level:
                    level[y] = level[x] + 1
                    stack.append(y)
                elif level[y] != level[x] + 1:
                    return None
            for y in graph.predecessors(x):
                if y not in level:
                    level[y] = level[x] - 1
                    stack.append(y)
                elif level[y] != level[x] - 1:
                    return None
        top = max(level.values())
        for x, value in level.items():
            coranks[x] = top - value
    height = max(coranks.values(), default=0)
    return {x: height - coranks[x] for x in elements}


def _check_ranks(
    ranks: Mapping[str, int],
    elements: Sequence[str],
    covers: Iterable[Cover],
) -> Dict[str, int]:
    """Validate explicit ranks against the covers and shift them to 0."""
    if set(ranks) != set(elements):
        raise InputError("ranks must be given for exactly the elements")
    for x, y in covers:
        if ranks[y] != ranks[x] + 1:
            raise InputError(
                f"rank of '{y}' is not one more than rank of '{x}'"
            )
    low = min(ranks.values(), default=0)
    return {x: int(ranks[x]) - low for x in elements}


class Poset:
    """Finite poset with optional grading.

    Use :func:`from_covers` (or :meth:`Poset.from_covers`) to build
    instances; the constructor trusts its arguments.

    Attributes:
        elements: Element identifiers in lexicographic order.
        covers: Cover pairs ``(x, y)`` with ``x`` covered by ``y``.
        top: Largest rank; coranks are measured from it. Subposets that
            keep coranks carry the top of the poset they came from.
    """

    def __init__(
        self,
        elements: Sequence[str],
        covers: Iterable[Cover],
        up: Mapping[str, FrozenSet[str]],
        ranks: Optional[Mapping[str, int]],
        top: Optional[int] = None,
    ) -> None:
        self.elements: Tuple[str, ...] = tuple(sorted(elements))
        self.covers: FrozenSet[Cover] = frozenset(covers)
        self._up: Dict[str, FrozenSet[str]] = dict(up)
        self._ranks: Optional[Dict[str, int]] = (
            dict(ranks) if ranks is not None else None
        )
        if top is None:
            top = max(self._ranks.values(), default=0) if self._ranks else 0
        self.top = top
        self._index = {x: k for k, x in enumerate(self.elements)}
        self._mobius: Dict[str, Dict[str, int]] = {}

    @classmethod
    def from_covers(
        cls,
        elements: Iterable[str],
        covers: Iterable[Cover],
        rank: Optional[Mapping[str, int]] = None,
    ) -> "Poset":
        return from_covers(elements, covers, rank)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return (
            self.elements == other.elements
            and self.covers == other.covers
            and self._ranks == other._ranks
            and self.top == other.top
        )

    def __hash__(self) -> int:
        return hash((self.elements, self.covers, self.top))

    def __repr__(self) -> str:
        return f"Poset({len(self)} elements, {len(self.covers)} covers)"

    def describe(self) -> str:
        grading = (
            f"graded of height {self.top}" if self.is_graded else "ungraded"
        )
        return f"{len(self)} elements, {len(self.covers)} covers, {grading}"

    def _require(self, *xs: str) -> None:
        for x in xs:
            if x not in self._index:
                raise UnknownElementError(f"unknown element '{x}'")

    def leq(self, x: str, y: str) -> bool:
        self._require(x, y)
        return x == y or y in self._up[x]

    def lt(self, x: str, y: str) -> bool:
        self._require(x, y)
        return y in self._up[x]

    def up(self, x: str) -> Tuple[str, ...]:
        """Elements strictly above `x`."""
        self._require(x)
        return tuple(sorted(self._up[x]))

    def down(self, x: str) -> Tuple[str, ...]:
        """Elements strictly below `x`."""
        self._require(x)
        return tuple(sorted(self._down[x]))

    @cached_property
    def _down(self) -> Dict[str, Set[str]]:
        down: Dict[str, Set[str]] = {x: set() for x in self.elements}
        for x, ups in self._up.items():
            for y in ups:
                down[y].add(x)
        return down

    @cached_property
    def _upper_covers(self) -> Dict[str, Tuple[str, ...]]:
        result: Dict[str, List[str]] = {x: [] for x in self.elements}
        for x, y in self.covers:
            result[x].append(y)
        return {x: tuple(sorted(ys)) for x, ys in result.items()}

    @cached_property
    def _lower_covers(self) -> Dict[str, Tuple[str, ...]]:
        result: Dict[str, List[str]] = {x: [] for x in self.elements}
        for x, y in self.covers:
            result[y].append(x)
        return {y: tuple(sorted(xs)) for y, xs in result.items()}

    def upper_covers(self, x: str) -> Tuple[str, ...]:
        self._require(x)
        return self._upper_covers[x]

    def lower_covers(self, x: str) -> Tuple[str, ...]:
        self._require(x)
        return self._lower_covers[x]

    def maximal_elements(self) -> Tuple[str, ...]:
        return tuple(x for x in self.elements if not self._up[x])

    def minimal_elements(self) -> Tuple[str, ...]:
        return tuple(x for x in self.elements if not self._down[x])

    @cached_property
    def _topological(self) -> Tuple[str, ...]:
        """Elements sorted so that smaller elements come first."""
        return tuple(sorted(
            self.elements, key=lambda x: (-len(self._up[x]), x)
        ))

    def longest_chain_length(self) -> int:
        """Number of elements in a longest chain, minus one; ``-1`` if
        empty."""
        height: Dict[str, int] = {}
        for x in reversed(self._topological):
            height[x] = 1 + max(
                (height[y] for y in self._upper_covers[x]), default=-1
            )
        return max(height.values(), default=-1)

    # Grading

    @property
    def is_graded(self) -> bool:
        return self._ranks is not None

    def _graded_ranks(self) -> Dict[str, int]:
        if self._ranks is None:
            raise UngradedPosetError("poset is not graded")
        return self._ranks

    def rank(self, x: str) -> int:
        self._require(x)
        return self._graded_ranks()[x]

    def corank(self, x: str) -> int:
        """``top - rank(x)``; written ``|x|``."""
        self._require(x)
        return self.top - self._graded_ranks()[x]

    def max_corank(self) -> int:
        ranks = self._graded_ranks()
        return max((self.top - r for r in ranks.values()), default=-1)

    def of_corank(self, k: int) -> Tuple[str, ...]:
        ranks = self._graded_ranks()
        return tuple(x for x in self.elements if self.top - ranks[x] == k)

    # Subposets

    def induced_subposet(
        self,
        elements: Iterable[str],
        keep_corank: bool = True,
    ) -> "Poset":
        """Subposet on `elements` with the induced order.

        Args:
            elements: Elements to keep.
            keep_corank: Whether ranks and the top are inherited, so that
                coranks agree with those in this poset. Otherwise the
                subposet is graded afresh.

        Returns:
            The induced subposet.
        """
        keep = set(elements)
        self._require(*keep)
        up = {x: frozenset(self._up[x] & keep) for x in keep}
        covers = []
        for x in keep:
            above = up[x]
            for y in above:
                if not any(z in above and y in up[z] for z in above):
                    covers.append((x, y))
        if keep_corank:
            ranks = (
                {x: self._ranks[x] for x in keep}
                if self._ranks is not None else None
            )
            if ranks is not None and any(
                ranks[y] != ranks[x] + 1 for x, y in covers
            ):
                ranks = None
            return Poset(sorted(keep), covers, up, ranks, self.top)
        return from_covers(sorted(keep), covers)

    def closed_interval(self, x: str) -> "Poset":
        """``P_{>=x}`` with coranks inherited."""
        self._require(x)
        return self.induced_subposet(self._up[x] | {x})

    def open_interval(self, x: str) -> "Poset":
        """``P_{>x}`` with coranks inherited."""
        self._require(x)
        return self.induced_subposet(self._up[x])

    def lower_interval(self, x: str) -> "Poset":
        """``P_{<=x}`` with coranks inherited."""
        self._require(x)
        return self.induced_subposet(self._down[x] | {x})

    def interval(self, x: str, y: str) -> "Poset":
        """Closed interval ``[x, y]`` with coranks inherited."""
        self._require(x, y)
        return self.induced_subposet(
            {z for z in self._up[x] | {x} if z == y or z in self._down[y]}
        )

    def filtration_level(self, k: int) -> "Poset":
        """``P^k``: the elements of corank at most `k`."""
        ranks = self._graded_ranks()
        return self.induced_subposet(
            x for x in self.elements if self.top - ranks[x] <= k
        )

    def without(self, elements: Iterable[str]) -> "Poset":
        """Poset with `elements` removed, graded afresh."""
        drop = set(elements)
        self._require(*drop)
        return self.induced_subposet(
            (x for x in self.elements if x not in drop), keep_corank=False
        )

    def add_minimum(self, name: str = FORMAL_MINIMUM) -> "Poset":
        """Poset with a new least element adjoined."""
        if name in self:
            raise InputError(f"element '{name}' already exists")
        covers = set(self.covers) | {
            (name, x) for x in self.minimal_elements()
        }
        ranks = None
        if self._ranks is not None:
            ranks = {x: r + 1 for x, r in self._ranks.items()}
            ranks[name] = 0
        return from_covers(self.elements + (name,), covers, ranks)

    def add_maximum(self, name: str = FORMAL_MAXIMUM) -> "Poset":
        """Poset with a new greatest element adjoined."""
        if name in self:
            raise InputError(f"element '{name}' already exists")
        covers = set(self.covers) | {
            (x, name) for x in self.maximal_elements()
        }
        ranks = None
        if self._ranks is not None:
            ranks = dict(self._ranks)
            ranks[name] = self.top + 1
        return from_covers(self.elements + (name,), covers, ranks)

    def remove_top(self) -> "Poset":
        """Poset without its greatest element.

        Raises:
            InputError: There is no greatest element.
        """
        maxima = self.maximal_elements()
        if len(maxima) != 1 or len(self._down[maxima[0]]) != len(self) - 1:
            raise InputError("poset has no greatest element")
        return self.without(maxima)

    # Combinatorics

    def mobius(self, x: str, y: str) -> int:
        """Moebius function ``mu(x, y)`` for ``x <= y``.

        Raises:
            PreconditionError: ``x`` is not below ``y``.
        """
        self._require(x, y)
        if not self.leq(x, y):
            raise PreconditionError(f"mu({x}, {y}) needs {x} <= {y}")
        if x not in self._mobius:
            values = {x: 1}
            for z in self._topological:
                if z in self._up[x]:
                    values[z] = -sum(
                        v for w, v in values.items()
                        if w == x or w in self._down[z]
                    )
            self._mobius[x] = values
        return self._mobius[x].get(y, 0)

    def has_diamond_property(self) -> bool:
        """Whether every interval of length two has exactly two interior
        elements."""
        ranks = self._graded_ranks()
        for x in self.elements:
            for y in self._up[x]:
                if ranks[y] - ranks[x] == 2:
                    middle = [
                        z for z in self._upper_covers[x] if y in self._up[z]
                    ]
                    if len(middle) != 2:
                        return False
        return True

    def join(self, x: str, y: str) -> Optional[str]:
        """Least upper bound, or ``None`` if there is none."""
        bounds = (self._up[x] | {x}) & (self._up[y] | {y})
        least = [b for b in bounds if bounds <= self._up[b] | {b}]
        return least[0] if least else None

    def meet(self, x: str, y: str) -> Optional[str]:
        """Greatest lower bound, or ``None`` if there is none."""
        bounds = (self._down[x] | {x}) & (self._down[y] | {y})
        greatest = [b for b in bounds if bounds <= self._down[b] | {b}]
        return greatest[0] if greatest else None

    def is_lattice(self) -> bool:
        return all(
            self.join(x, y) is not None and self.meet(x, y) is not None
            for k, x in enumerate(self.elements)
            for y in self.elements[k + 1:]
        )

    def is_semimodular(self) -> bool:
        """Whether ``rk(x v y) + rk(x ^ y) <= rk(x) + rk(y)`` throughout.

        Raises:
            InputError: The poset is not a lattice.
        """
        ranks = self._graded_ranks()
        for k, x in enumerate(self.elements):
            for y in self.elements[k + 1:]:
                upper, lower = self.join(x, y), self.meet(x, y)
                if upper is None or lower is None:
                    raise InputError("poset is not a lattice")
                if ranks[upper] + ranks[lower] > ranks[x] + ranks[y]:
                    return False
        return True

    def is_atomic(self) -> bool:
        """Whether every element is the join of the atoms below it."""
        minima = self.minimal_elements()
        if len(minima) != 1:
            raise InputError("poset has no least element")
        bottom = minima[0]
        atoms = set(self._upper_covers[bottom])
        for x in self.elements:
            if x == bottom:
                continue
            below = [a for a in atoms if a == x or a in self._down[x]]
            if not below:
                return False
            current = below[0]
            for a in below[1:]:
                joined = self.join(current, a)
                if joined is None:
                    return False
                current = joined
            if current != x:
                return False
        return True

    # Serialization

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "elements": list(self.elements),
            "covers": [list(c) for c in sorted(self.covers)],
        }
        if self._ranks is not None:
            data["rank"] = {x: self._ranks[x] for x in self.elements}
        return data


def from_covers(
    elements: Iterable[str],
    covers: Iterable[Cover],
    rank: Optional[Mapping[str, int]] = None,
) -> Poset:
    """Build a poset from its cover relation.

    Args:
        elements: Element identifiers.
        covers: Pairs ``(x, y)`` with ``y`` covering ``x``.
        rank: Optional explicit rank function; if omitted, a grading is
            inferred where possible.

    Returns:
        The poset, graded if a rank function exists.

    Raises:
        InputError: Elements are duplicated or ranks are inconsistent.
        UnknownElementError: A cover names an unknown element.
        PosetCycleError: The covers contain a directed cycle.
        RedundantCoverError: A cover is implied by other covers.

    Example:
        >>> from_covers(["a", "b"], [("a", "b")]).corank("a")
        1
    """
    elements = list(elements)
    if len(set(elements)) != len(elements):
        raise InputError("duplicate element identifiers")
    known = set(elements)
    covers = [tuple(c) for c in covers]
    for c in covers:
        if len(c) != 2:
            raise InputError(f"cover {c} is not a pair")
        for z in c:
            if z not in known:
                raise UnknownElementError(
                    f"cover {c} names unknown element '{z}'"
                )
    if len(set(covers)) != len(covers):
        raise InputError("duplicate cover pairs")
    graph = nx.DiGraph()
    graph.add_nodes_from(elements)
    graph.add_edges_from(covers)
    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        raise PosetCycleError(
            "covers contain a cycle: "
            + " -> ".join(str(e[0]) for e in cycle)
        )
    reduced = nx.transitive_reduction(graph)
    redundant = sorted(set(graph.edges) - set(reduced.edges))
    if redundant:
        x, y = redundant[0]
        raise RedundantCoverError(
            f"cover ('{x}', '{y}') is implied by other covers"
        )
    up = {x: frozenset(nx.descendants(graph, x)) for x in elements}
    if rank is not None:
        ranks: Optional[Dict[str, int]] = _check_ranks(
            rank, elements, covers
        )
    else:
        ranks = _infer_ranks(elements, graph)
    poset = Poset(elements, covers, up, ranks)
    logger.debug(f"Built poset: {poset.describe()}")
    return poset
