"""Random posets, presheaves and maps for property checks."""

from random import Random
from typing import (
    Dict,
    List,
    Optional,
)

import networkx as nx

from poco.algebra.abelian import IntMatrix
from poco.errors.exceptions import PreconditionError
from poco.posets.poset import (
    Poset,
    from_covers,
)
from poco.posets.presheaf import (
    Presheaf,
    constant,
    direct_sum,
    yoneda,
)


def random_unimodular(n: int, rng: Random, steps: int = 6) -> IntMatrix:
    """Random product of elementary matrices of size `n`.

    Returns:
        A matrix of determinant ``1`` or ``-1``.
    """
    if n < 0:
        raise ValueError(f"size must be nonnegative: {n}")
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        factor = rng.choice((-2, -1, 1, 2))
        rows[i] = [a + factor * b for a, b in zip(rows[i], rows[j])]
    if n and rng.random() < 0.5:
        rows[0] = [-a for a in rows[0]]
    return IntMatrix.from_rows(rows, cols=n)


def unimodular_inverse(matrix: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix by exact Gauss-Jordan elimination.

    Raises:
        ValueError: The matrix is not unimodular.
    """
    n = matrix.rows
    if matrix.cols != n:
        raise ValueError(f"matrix of shape {matrix.shape} is not square")
    a = matrix.to_rows()
    inv = [[int(i == j) for j in range(n)] for i in range(n)]
    for c in range(n):
        while True:
            nonzero = [i for i in range(c, n) if a[i][c]]
            if not nonzero:
                raise ValueError("matrix is not unimodular")
            p = min(nonzero, key=lambda i: abs(a[i][c]))
            a[c], a[p] = a[p], a[c]
            inv[c], inv[p] = inv[p], inv[c]
            rest = [i for i in range(c + 1, n) if a[i][c]]
            if not rest:
                break
            for i in rest:
                q = a[i][c] // a[c][c]
                a[i] = [x - q * y for x, y in zip(a[i], a[c])]
                inv[i] = [x - q * y for x, y in zip(inv[i], inv[c])]
        if a[c][c] not in (1, -1):
            raise ValueError("matrix is not unimodular")
        if a[c][c] == -1:
            a[c] = [-x for x in a[c]]
            inv[c] = [-x for x in inv[c]]
        for i in range(n):
            if i != c and a[i][c]:
                q = a[i][c]
                a[i] = [x - q * y for x, y in zip(a[i], a[c])]
                inv[i] = [x - q * y for x, y in zip(inv[i], inv[c])]
    return IntMatrix.from_rows(inv, cols=n)


def random_poset(
    size: int,
    rng: Random,
    density: float = 0.4,
    prefix: str = "p",
) -> Poset:
    """Random poset on ``size`` elements named ``p0``, ``p1``, ...

    A random acyclic relation is drawn and reduced to its covers.
    """
    elements = [f"{prefix}{i}" for i in range(size)]
    graph = nx.DiGraph()
    graph.add_nodes_from(elements)
    for i in range(size):
        for j in range(i + 1, size):
            if rng.random() < density:
                graph.add_edge(elements[i], elements[j])
    reduced = nx.transitive_reduction(graph)
    return from_covers(elements, sorted(reduced.edges))


def random_presheaf(
    poset: Poset,
    rng: Random,
    summands: int = 2,
) -> Presheaf:
    """Random presheaf: a sum of constant and Yoneda presheaves in a
    random basis at every element."""
    parts: List[Presheaf] = []
    for _ in range(max(summands, 1)):
        if poset.elements and rng.random() < 0.6:
            parts.append(yoneda(poset, rng.choice(poset.elements)))
        else:
            parts.append(constant(poset, 1))
    presheaf = direct_sum(parts)
    bases = {
        x: random_unimodular(presheaf.dims[x], rng) for x in poset.elements
    }
    inverses = {x: unimodular_inverse(u) for x, u in bases.items()}
    return presheaf.change_basis(bases, inverses)


def random_monotone_map(
    source: Poset,
    target: Poset,
    rng: Random,
    attempts: int = 20,
) -> Dict[str, str]:
    """Random order preserving map, built bottom up.

    Falls back to a random constant map when no extension was found within
    `attempts` tries.

    Raises:
        PreconditionError: The target is empty but the source is not.
    """
    order = sorted(source.elements, key=lambda x: (len(source.down(x)), x))
    for _ in range(attempts):
        mapping: Optional[Dict[str, str]] = {}
        for x in order:
            assert mapping is not None
            below = [mapping[z] for z in source.lower_covers(x)]
            candidates = [
                y for y in target.elements
                if all(target.leq(b, y) for b in below)
            ]
            if not candidates:
                mapping = None
                break
            mapping[x] = rng.choice(candidates)
        if mapping is not None:
            return mapping
    if not target.elements:
        raise PreconditionError("no monotone map into the empty poset")
    y = rng.choice(target.elements)
    return {x: y for x in source.elements}


def random_subposet(poset: Poset, rng: Random, keep: float = 0.6) -> Poset:
    """Induced subposet on a random nonempty subset of elements."""
    chosen = [x for x in poset.elements if rng.random() < keep]
    if not chosen and poset.elements:
        chosen = [rng.choice(poset.elements)]
    return poset.induced_subposet(chosen, keep_corank=False)
