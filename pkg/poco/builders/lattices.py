"""Boolean and partition lattices."""

from itertools import combinations
import logging
from typing import (
    List,
    Tuple,
)

from poco.builders.cell_complexes import subset_id
from poco.errors.exceptions import PreconditionError
from poco.posets.poset import (
    Poset,
    from_covers,
)

logger = logging.getLogger(__name__)

MAX_LATTICE_SIZE = 6

Partition = Tuple[Tuple[int, ...], ...]


def _check_size(n: int) -> None:
    if not 1 <= n <= MAX_LATTICE_SIZE:
        raise PreconditionError(
            f"lattice size must lie between 1 and {MAX_LATTICE_SIZE}, "
            f"got {n}"
        )


def boolean_lattice(n: int) -> Poset:
    """Subsets of ``{1..n}`` ordered by inclusion, ranked by cardinality.

    Example:
        >>> b = boolean_lattice(3)
        >>> len(b), len(b.covers)
        (8, 12)
    """
    _check_size(n)
    subsets = [
        frozenset(c) for k in range(n + 1)
        for c in combinations(range(1, n + 1), k)
    ]
    covers = [
        (subset_id(s - {i}), subset_id(s))
        for s in subsets for i in sorted(s)
    ]
    return from_covers(
        [subset_id(s) for s in subsets],
        covers,
        {subset_id(s): len(s) for s in subsets},
    )


def set_partitions(n: int) -> List[Partition]:
    """Set partitions of ``{1..n}``; blocks sorted by least element."""
    partitions: List[List[List[int]]] = [[]]
    for i in range(1, n + 1):
        grown = []
        for blocks in partitions:
            for k in range(len(blocks)):
                grown.append(
                    blocks[:k] + [blocks[k] + [i]] + blocks[k + 1:]
                )
            grown.append(blocks + [[i]])
        partitions = grown
    return sorted(
        tuple(tuple(block) for block in blocks) for blocks in partitions
    )


def partition_id(partition: Partition) -> str:
    """Identifier such as ``12|3``."""
    return "|".join("".join(str(i) for i in block) for block in partition)


def partition_lattice(n: int) -> Poset:
    """Set partitions of ``{1..n}`` ordered by refinement, ranked by
    ``n`` minus the number of blocks.

    Example:
        >>> p = partition_lattice(3)
        >>> p.mobius("1|2|3", "123")
        2
    """
    _check_size(n)
    partitions = set_partitions(n)
    covers = []
    for partition in partitions:
        for a, b in combinations(range(len(partition)), 2):
            merged = sorted(partition[a] + partition[b])
            rest = [
                block for k, block in enumerate(partition) if k not in (a, b)
            ]
            coarser = tuple(sorted(rest + [tuple(merged)]))
            covers.append((partition_id(partition), partition_id(coarser)))
    return from_covers(
        [partition_id(p) for p in partitions],
        covers,
        {partition_id(p): n - len(p) for p in partitions},
    )
