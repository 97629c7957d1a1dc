"""Singular cohomology of posets with coefficients in a presheaf.

A ``n``-simplex of the nerve is a chain ``s_n <= ... <= s_0`` stored bottom
first; the face ``d_i`` removes ``s_i``. Cochains assign to each simplex a
value in the group at its bottom element, and the coboundary is

    (ds)(s) = sum_{i<n} (-1)^i s(d_i s) + (-1)^n F(s_n <= s_{n-1}) s(d_n s).

``t_complex`` uses nondegenerate simplices only, ``s_complex`` all of them.
"""

from dataclasses import (dataclass, field)
import logging
from typing import (
    Callable,
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from poco.algebra.abelian import (
    FpAbGroup,
    GroupMorphism,
    IntMatrix,
    Subquotient,
    induced_morphism,
    kernel_lattice,
    subquotient_homology,
)
from poco.cohomology.complexes import (
    ChainMap,
    CochainComplex,
    cohomology,
)
from poco.errors.exceptions import (
    BaseMismatchError,
    DegreeBoundError,
    NonMonotoneMapError,
    PreconditionError,
)
from poco.models.reports import (
    CohomologyReport,
    DegreeGroup,
)
from poco.posets.poset import (
    Poset,
    from_covers,
)
from poco.posets.presheaf import (
    Presheaf,
    PresheafMorphism,
    constant,
)
from poco.utils.logging import log_computation

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Simplex:
    """Simplex of the nerve of a poset.

    Attributes:
        vertices: The chain ``s_n <= ... <= s_0``, bottom element first. The
            empty tuple is the basepoint of degree ``-1``.
    """
    vertices: Tuple[str, ...]

    @property
    def degree(self) -> int:
        return len(self.vertices) - 1

    @property
    def bottom(self) -> str:
        """``s_n``, the element whose group holds cochain values."""
        return self.vertices[0]

    def vertex(self, i: int) -> str:
        """``s_i``."""
        return self.vertices[self.degree - i]

    def face(self, i: int) -> "Simplex":
        """``d_i``: the simplex with ``s_i`` removed."""
        if not 0 <= i <= self.degree:
            raise IndexError(f"face {i} of a {self.degree}-simplex")
        k = self.degree - i
        return Simplex(self.vertices[:k] + self.vertices[k + 1:])

    def degeneracy(self, i: int) -> "Simplex":
        """``s_i``: the simplex with ``s_i`` repeated."""
        if not 0 <= i <= self.degree:
            raise IndexError(f"degeneracy {i} of a {self.degree}-simplex")
        k = self.degree - i
        return Simplex(
            self.vertices[:k + 1] + self.vertices[k:]
        )

    def is_degenerate(self) -> bool:
        return any(
            a == b for a, b in zip(self.vertices, self.vertices[1:])
        )

    def __str__(self) -> str:
        return " <= ".join(self.vertices) if self.vertices else "*"


BASEPOINT = Simplex(())

Label = Tuple[Simplex, int]


def _chains(
    poset: Poset,
    top_degree: int,
    degenerate: bool,
) -> Dict[int, List[Simplex]]:
    """All simplices of degree ``0..top_degree`` in lexicographic order."""
    result: Dict[int, List[Simplex]] = {
        n: [] for n in range(top_degree + 1)
    }
    above = {
        x: (
            tuple(sorted((x,) + poset.up(x))) if degenerate else poset.up(x)
        )
        for x in poset.elements
    }

    def extend(chain: List[str]) -> None:
        result[len(chain) - 1].append(Simplex(tuple(chain)))
        if len(chain) > top_degree:
            return
        for y in above[chain[-1]]:
            chain.append(y)
            extend(chain)
            chain.pop()

    if top_degree >= 0:
        for x in poset.elements:
            extend([x])
    for simplices in result.values():
        simplices.sort()
    return result


def nondegenerate_simplices(poset: Poset, n: int) -> List[Simplex]:
    """Strict chains with ``n + 1`` elements, lexicographically ordered.

    Example:
        >>> from poco.posets.poset import from_covers
        >>> p = from_covers(["a", "b"], [("a", "b")])
        >>> [str(s) for s in nondegenerate_simplices(p, 1)]
        ['a <= b']
    """
    if n < 0:
        return [BASEPOINT] if n == -1 else []
    return _chains(poset, n, degenerate=False)[n]


def simplices(poset: Poset, n: int) -> List[Simplex]:
    """Weak chains with ``n + 1`` elements, degenerate ones included."""
    if n < 0:
        return [BASEPOINT] if n == -1 else []
    return _chains(poset, n, degenerate=True)[n]


def _assemble(
    presheaf: Presheaf,
    by_degree: Mapping[int, Sequence[Simplex]],
    name: str,
    dimension: Callable[[Simplex], int],
    check: bool,
    valid_through: Optional[int] = None,
) -> CochainComplex:
    """Cochain complex on the given simplices with the nerve coboundary.

    Faces that are not among the simplices of the adjacent degree are
    treated as zero, which yields relative complexes.
    """
    labels: Dict[int, List[Label]] = {}
    offsets: Dict[int, Dict[Simplex, int]] = {}
    for n, simps in by_degree.items():
        offset: Dict[Simplex, int] = {}
        names: List[Label] = []
        for s in simps:
            offset[s] = len(names)
            names.extend((s, a) for a in range(dimension(s)))
        labels[n] = names
        offsets[n] = offset
    groups = {n: FpAbGroup.free(len(names)) for n, names in labels.items()}
    differentials: Dict[int, GroupMorphism] = {}
    for n in sorted(by_degree):
        if n - 1 not in by_degree:
            continue
        entries: List[Tuple[int, int, int]] = []
        faces = offsets[n - 1]
        for s in by_degree[n]:
            row = offsets[n][s]
            for i in range(n + 1):
                t = s.face(i)
                col = faces.get(t)
                if col is None:
                    continue
                sign = -1 if i % 2 else 1
                if i < n or not t.vertices:
                    entries.extend(
                        (row + a, col + a, sign) for a in range(dimension(s))
                    )
                else:
                    block = presheaf.restriction(s.bottom, t.bottom)
                    entries.extend(
                        (row + a, col + b, sign * v)
                        for a, b, v in block.items()
                    )
        differentials[n - 1] = GroupMorphism(
            groups[n - 1],
            groups[n],
            IntMatrix.from_entries(
                groups[n].generators, groups[n - 1].generators, entries
            ),
        )
    complex = CochainComplex(
        groups=groups,
        differentials=differentials,
        labels=labels,
        name=name,
        valid_through=valid_through,
    )
    if check:
        complex.validate()
    return complex


def _require_base(poset: Poset, presheaf: Presheaf) -> None:
    if presheaf.base != poset:
        raise BaseMismatchError("presheaf lives on a different poset")


@log_computation
def t_complex(
    poset: Poset,
    presheaf: Presheaf,
    check: bool = True,
) -> CochainComplex:
    """Cochain complex on the nondegenerate simplices.

    Args:
        poset: The poset ``P``.
        presheaf: Coefficients ``F`` on ``P``.
        check: Whether ``d . d = 0`` is verified.

    Returns:
        The complex in degrees ``0`` up to the length of a longest chain.
    """
    _require_base(poset, presheaf)
    top = poset.longest_chain_length()
    chains = _chains(poset, top, degenerate=False)
    return _assemble(
        presheaf, chains, "singular",
        lambda s: presheaf.dims[s.bottom], check,
    )


@log_computation
def s_complex(
    poset: Poset,
    presheaf: Presheaf,
    max_degree: int,
    check: bool = True,
) -> CochainComplex:
    """Cochain complex on all simplices, degenerate ones included.

    The complex is truncated at `max_degree`, so its cohomology is only
    reported below that degree.

    Raises:
        DegreeBoundError: `max_degree` does not exceed the length of a
            longest chain.
    """
    _require_base(poset, presheaf)
    longest = poset.longest_chain_length()
    if max_degree < longest + 1:
        raise DegreeBoundError(
            f"degree bound {max_degree} must be at least {longest + 1}"
        )
    chains = _chains(poset, max_degree, degenerate=True)
    return _assemble(
        presheaf, chains, "singular-degenerate",
        lambda s: presheaf.dims[s.bottom], check,
        valid_through=max_degree - 1,
    )


def _as_subposet(poset: Poset, sub: Union[Poset, Iterable[str]]) -> Poset:
    """Induced subposet given as a poset or as element identifiers."""
    if isinstance(sub, Poset):
        missing = [x for x in sub.elements if x not in poset]
        if missing:
            raise PreconditionError(
                f"element '{missing[0]}' of the subposet is not in the poset"
            )
        for x in sub.elements:
            for y in sub.elements:
                if sub.leq(x, y) != poset.leq(x, y):
                    raise PreconditionError(
                        "subposet does not carry the induced order"
                    )
        return sub
    return poset.induced_subposet(sub)


@log_computation
def relative_t_complex(
    poset: Poset,
    sub: Union[Poset, Iterable[str]],
    presheaf: Presheaf,
    check: bool = True,
) -> CochainComplex:
    """Cochains of ``P`` vanishing on simplices of the subposet ``Q``.

    Args:
        poset: The poset ``P``.
        sub: Induced subposet ``Q``, or its elements.
        presheaf: Coefficients on ``P``.
        check: Whether ``d . d = 0`` is verified.

    Returns:
        The relative complex.
    """
    _require_base(poset, presheaf)
    inner = set(_as_subposet(poset, sub).elements)
    top = poset.longest_chain_length()
    chains = {
        n: [s for s in simps if not set(s.vertices) <= inner]
        for n, simps in _chains(poset, top, degenerate=False).items()
    }
    return _assemble(
        presheaf, chains, "relative",
        lambda s: presheaf.dims[s.bottom], check,
    )


@log_computation
def reduced_t_complex(
    poset: Poset,
    k: int = 1,
    check: bool = True,
) -> CochainComplex:
    """Augmented complex with constant coefficients ``Z^k``.

    Degree ``-1`` carries ``Z^k`` on the basepoint, mapped diagonally to
    the vertices. The empty poset has ``Z^k`` in degree ``-1``.
    """
    presheaf = constant(poset, k)
    top = poset.longest_chain_length()
    chains: Dict[int, List[Simplex]] = {-1: [BASEPOINT]}
    chains.update(_chains(poset, top, degenerate=False))
    return _assemble(presheaf, chains, "reduced", lambda s: k, check)


def hs(poset: Poset, presheaf: Presheaf, check: bool = True
       ) -> CohomologyReport:
    """Singular cohomology ``HS*(P; F)``."""
    return cohomology(t_complex(poset, presheaf, check=False), check=check)


# Cochains and maps of posets


@dataclass(frozen=True)
class Cochain:
    """Cochain of a given degree; simplices not listed take value zero.

    Attributes:
        degree: Degree ``n``.
        values: Value at each ``n``-simplex, as coordinates in the group at
            its bottom element.
    """
    degree: int
    values: Mapping[Simplex, Tuple[int, ...]] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not any(any(v) for v in self.values.values())

    def support(self) -> Dict[Simplex, Tuple[int, ...]]:
        """Simplices with nonzero value."""
        return {s: tuple(v) for s, v in self.values.items() if any(v)}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.support() == other.support()
        )


def coboundary(presheaf: Presheaf, cochain: Cochain) -> Cochain:
    """Coboundary of a cochain of nondegenerate simplices, evaluated
    simplex by simplex."""
    n = cochain.degree + 1
    poset = presheaf.base
    result: Dict[Simplex, Tuple[int, ...]] = {}
    for s in nondegenerate_simplices(poset, n):
        acc = [0] * presheaf.dims[s.bottom]
        for i in range(n + 1):
            t = s.face(i)
            value = cochain.values.get(t)
            if not value or not any(value):
                continue
            sign = -1 if i % 2 else 1
            if i < n:
                contribution = list(value)
            else:
                contribution = presheaf.restriction(
                    s.bottom, t.bottom
                ).apply(list(value))
            acc = [a + sign * c for a, c in zip(acc, contribution)]
        if any(acc):
            result[s] = tuple(acc)
    return Cochain(n, result)


def cochain_to_vector(complex: CochainComplex, cochain: Cochain) -> List[int]:
    index = complex.index(cochain.degree)
    vector = [0] * complex.group(cochain.degree).generators
    for s, value in cochain.values.items():
        for a, v in enumerate(value):
            if v:
                vector[index[(s, a)]] = v
    return vector


def vector_to_cochain(
    complex: CochainComplex,
    n: int,
    vector: Sequence[int],
) -> Cochain:
    values: Dict[Simplex, List[int]] = {}
    labels = complex.labels.get(n, ())
    for (s, a), v in zip(labels, vector):
        entry = values.setdefault(s, [])
        entry.append(v)
    return Cochain(n, {
        s: tuple(v) for s, v in values.items() if any(v)
    })


@dataclass(frozen=True)
class PosetMap:
    """Monotone map of posets.

    Raises:
        BaseMismatchError: The mapping does not fit the posets.
        NonMonotoneMapError: A cover is not mapped to a comparable pair.
    """
    source: Poset
    target: Poset
    mapping: Mapping[str, str]

    def __post_init__(self) -> None:
        if set(self.mapping) != set(self.source.elements):
            raise BaseMismatchError("map must be defined on every element")
        if any(y not in self.target for y in self.mapping.values()):
            raise BaseMismatchError("map has values outside of the target")
        for x, y in sorted(self.source.covers):
            if not self.target.leq(self.mapping[x], self.mapping[y]):
                raise NonMonotoneMapError(
                    f"cover ('{x}', '{y}') is mapped to a non-comparable pair"
                )

    def __call__(self, x: str) -> str:
        return self.mapping[x]

    def image(self, simplex: Simplex) -> Simplex:
        return Simplex(tuple(self.mapping[v] for v in simplex.vertices))

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.mapping)

    def compose(self, other: "PosetMap") -> "PosetMap":
        """The composite ``self . other``."""
        if other.target != self.source:
            raise BaseMismatchError("maps are not composable")
        return PosetMap(other.source, self.target, {
            x: self.mapping[y] for x, y in other.mapping.items()
        })


def pullback(f: PosetMap, presheaf: Presheaf, cochain: Cochain) -> Cochain:
    """``f^* s``, a cochain of the source with coefficients ``f^* F``.

    Simplices mapped to degenerate ones get value zero.
    """
    if presheaf.base != f.target:
        raise BaseMismatchError("presheaf does not live on the target")
    values: Dict[Simplex, Tuple[int, ...]] = {}
    for s in nondegenerate_simplices(f.source, cochain.degree):
        image = f.image(s)
        if image.is_degenerate():
            continue
        value = cochain.values.get(image)
        if value and any(value):
            values[s] = tuple(value)
    return Cochain(cochain.degree, values)


def pushforward(f: PosetMap, presheaf: Presheaf, cochain: Cochain) -> Cochain:
    """``f_* s`` for injective ``f``: extension by zero along ``f``.

    Raises:
        PreconditionError: `f` is not injective.
    """
    if presheaf.base != f.target:
        raise BaseMismatchError("presheaf does not live on the target")
    if not f.is_injective():
        raise PreconditionError("pushforward needs an injective map")
    return Cochain(cochain.degree, {
        f.image(s): tuple(v) for s, v in cochain.values.items() if any(v)
    })


def pullback_map(f: PosetMap, presheaf: Presheaf) -> ChainMap:
    """``f^*`` as a map ``T*(target; F) -> T*(source; f^* F)``."""
    if presheaf.base != f.target:
        raise BaseMismatchError("presheaf does not live on the target")
    source = t_complex(f.target, presheaf)
    target = t_complex(f.source, presheaf.pullback(f.mapping, f.source))
    matrices = {}
    for n in target.degrees:
        index = source.index(n)
        entries = []
        for k, (s, a) in enumerate(target.labels[n]):
            image = f.image(s)
            if not image.is_degenerate():
                entries.append((k, index[(image, a)], 1))
        matrices[n] = IntMatrix.from_entries(
            target.group(n).generators, source.group(n).generators, entries
        )
    return ChainMap(source, target, matrices)


def morphism_induced(kappa: PresheafMorphism) -> ChainMap:
    """Chain map ``T*(P; F) -> T*(P; G)`` induced by ``kappa : F -> G``."""
    poset = kappa.source.base
    source = t_complex(poset, kappa.source)
    target = t_complex(poset, kappa.target)
    matrices = {}
    for n in source.degrees:
        blocks = [
            kappa.components[s.bottom]
            for s in nondegenerate_simplices(poset, n)
        ]
        matrices[n] = IntMatrix.block_diagonal(blocks)
    return ChainMap(source, target, matrices)


# Long exact sequences


@dataclass(frozen=True)
class ExactnessReport:
    """Outcome of an exactness check.

    Attributes:
        exact: Whether the sequence is exact everywhere.
        location: First term where exactness fails.
    """
    exact: bool
    location: Optional[str] = None

    def describe(self) -> str:
        return "exact" if self.exact else f"not exact at {self.location}"


def label_matrix(
    source: CochainComplex,
    target: CochainComplex,
    n: int,
) -> IntMatrix:
    """Matrix sending each generator to the generator with equal label."""
    index = target.index(n)
    entries = [
        (index[label], k, 1)
        for k, label in enumerate(source.labels.get(n, ()))
        if label in index
    ]
    return IntMatrix.from_entries(
        target.group(n).generators, source.group(n).generators, entries
    )


def connecting_matrix(
    quotient: CochainComplex,
    middle: CochainComplex,
    sub: CochainComplex,
    n: int,
) -> IntMatrix:
    """Cochain level connecting map: extend by zero, apply ``d``, read off
    the relative part."""
    return (
        label_matrix(middle, sub, n + 1)
        @ middle.differential(n).matrix
        @ label_matrix(quotient, middle, n)
    )


def _sequence_is_exact(
    sub: CochainComplex,
    middle: CochainComplex,
    quotient: CochainComplex,
) -> ExactnessReport:
    """Exactness of the long sequence of ``0 -> sub -> middle -> quotient
    -> 0``, with inclusion and restriction given by labels."""
    degrees = sorted(
        set(sub.degrees) | set(middle.degrees) | set(quotient.degrees)
    )
    if not degrees:
        return ExactnessReport(exact=True)
    terms: List[Tuple[str, Subquotient]] = []
    maps: List[GroupMorphism] = []
    homology = {
        (name, n): complex.subquotient(n)
        for name, complex in (
            ("sub", sub), ("middle", middle), ("quotient", quotient)
        )
        for n in range(degrees[0], degrees[-1] + 2)
    }
    for n in range(degrees[0], degrees[-1] + 1):
        h_sub = homology[("sub", n)]
        h_mid = homology[("middle", n)]
        h_quo = homology[("quotient", n)]
        h_next = homology[("sub", n + 1)]
        terms.extend([
            (f"H^{n}({sub.name})", h_sub),
            (f"H^{n}({middle.name})", h_mid),
            (f"H^{n}({quotient.name})", h_quo),
        ])
        maps.extend([
            induced_morphism(
                label_matrix(sub, middle, n), h_sub, h_mid
            ),
            induced_morphism(
                label_matrix(middle, quotient, n), h_mid, h_quo
            ),
            induced_morphism(
                connecting_matrix(quotient, middle, sub, n), h_quo, h_next
            ),
        ])
    first = terms[0][1].group
    incoming = GroupMorphism.zero(FpAbGroup.zero(), first)
    for (name, _), outgoing in zip(terms, maps):
        if not outgoing.compose(incoming).is_zero():
            return ExactnessReport(exact=False, location=name)
        if not subquotient_homology(incoming, outgoing).is_zero():
            return ExactnessReport(exact=False, location=name)
        incoming = outgoing
    return ExactnessReport(exact=True)


def _nested(poset: Poset, outer: Poset, inner: Poset) -> None:
    if not set(inner.elements) <= set(outer.elements):
        raise PreconditionError("subposets are not nested")
    _as_subposet(poset, outer)
    _as_subposet(poset, inner)


@log_computation
def triple_les_check(
    poset: Poset,
    sub: Poset,
    inner: Poset,
    presheaf: Presheaf,
) -> ExactnessReport:
    """Exactness of the long sequence of a triple ``R <= Q <= P``.

    The sequence runs through ``HS(P,Q) -> HS(P,R) -> HS(Q,R) ->
    HS^{+1}(P,Q)``.
    """
    _nested(poset, sub, inner)
    return _sequence_is_exact(
        _renamed(relative_t_complex(poset, sub, presheaf), "P,Q"),
        _renamed(relative_t_complex(poset, inner, presheaf), "P,R"),
        _renamed(
            relative_t_complex(sub, inner, presheaf.restrict(sub)), "Q,R"
        ),
    )


def pair_les_check(
    poset: Poset,
    sub: Poset,
    presheaf: Presheaf,
) -> ExactnessReport:
    """Exactness of ``HS(P,Q) -> HS(P) -> HS(Q) -> HS^{+1}(P,Q)``."""
    return triple_les_check(poset, sub, from_covers([], []), presheaf)


def _renamed(complex: CochainComplex, name: str) -> CochainComplex:
    return CochainComplex(
        groups=complex.groups,
        differentials=complex.differentials,
        labels=complex.labels,
        name=name,
        valid_through=complex.valid_through,
    )


def connecting_map_factorizes(
    poset: Poset,
    sub: Poset,
    inner: Poset,
    presheaf: Presheaf,
) -> bool:
    """Whether the connecting map of the triple ``R <= Q <= P`` equals the
    composite ``HS(Q,R) -> HS(Q) -> HS^{+1}(P,Q)`` in every degree."""
    _nested(poset, sub, inner)
    p_q = relative_t_complex(poset, sub, presheaf)
    p_r = relative_t_complex(poset, inner, presheaf)
    restricted = presheaf.restrict(sub)
    q_r = relative_t_complex(sub, inner, restricted)
    q = t_complex(sub, restricted)
    p = t_complex(poset, presheaf)
    for n in q_r.degrees:
        h_qr = q_r.subquotient(n)
        h_q = q.subquotient(n)
        h_pq = p_q.subquotient(n + 1)
        direct = induced_morphism(
            connecting_matrix(q_r, p_r, p_q, n), h_qr, h_pq
        )
        composite = induced_morphism(
            connecting_matrix(q, p, p_q, n), h_q, h_pq
        ).compose(induced_morphism(label_matrix(q_r, q, n), h_qr, h_q))
        if not direct.equals(composite):
            return False
    return True


# Limits and reduced cohomology


def limit(presheaf: Presheaf) -> Tuple[FpAbGroup, IntMatrix]:
    """Compatible families ``(a_x)`` with ``a_x = F^y_x a_y`` for all
    covers.

    Returns:
        The group of compatible families and a basis of it, with one row
        per coordinate of ``F(x)``, elements in lexicographic order.
    """
    poset = presheaf.base
    offsets: Dict[str, int] = {}
    total = 0
    for x in poset.elements:
        offsets[x] = total
        total += presheaf.dims[x]
    entries = []
    row = 0
    for x, y in sorted(poset.covers):
        block = presheaf.cover_maps[(x, y)]
        for a in range(presheaf.dims[x]):
            entries.append((row + a, offsets[x] + a, 1))
        entries.extend(
            (row + a, offsets[y] + b, -v) for a, b, v in block.items()
        )
        row += presheaf.dims[x]
    basis = kernel_lattice(IntMatrix.from_entries(row, total, entries))
    return FpAbGroup.free(basis.cols), basis


def reduced_by_collapse(poset: Poset, k: int = 1) -> CohomologyReport:
    """Reduced cohomology as the cokernel of the map induced by collapsing
    the poset to a point, in nonnegative degrees."""
    point = from_covers(["*"], [])
    collapse = PosetMap(poset, point, {x: "*" for x in poset.elements})
    chain_map = pullback_map(collapse, constant(point, k))
    unreduced = cohomology(chain_map.target)
    degrees = []
    for entry in unreduced.degrees:
        if entry.n == 0:
            rank, torsion = chain_map.induced(0).cokernel().invariants
            degrees.append(DegreeGroup(n=0, rank=rank, torsion=list(torsion)))
        else:
            degrees.append(entry)
    return CohomologyReport(provenance="reduced", degrees=degrees)
