"""Cellular cohomology of graded posets.

For ``x`` of corank ``n`` the group ``A_x`` is generated by the maximal
chains ``x = s_n < ... < s_0`` from ``x`` to corank zero, modulo one relation
per compatible family: the chains that agree outside a single corank level
sum to zero. The cellular complex is ``C^n = sum_{|x|=n} A_x (x) F(x)`` with
matrix elements ``(s, a) -> (-1)^|x| (x s, F(x<y) a)`` for covers ``x < y``.
"""

from dataclasses import (dataclass, field)
import logging
from typing import (
    Dict,
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
    Simplification,
    induced_morphism,
)
from poco.cohomology.complexes import (
    CochainComplex,
    cohomology,
)
from poco.cohomology.singular import (
    Simplex,
    connecting_matrix,
    hs,
    reduced_t_complex,
    relative_t_complex,
)
from poco.errors.exceptions import (
    BaseMismatchError,
    NotCellPosetError,
    PreconditionError,
)
from poco.models.reports import (
    AbelianGroupModel,
    CohomologyReport,
    ComparisonReport,
    DegreeComparison,
    DegreeGroup,
    SignEntry,
    SignReport,
    Witness,
)
from poco.posets.poset import Poset
from poco.posets.presheaf import (
    Presheaf,
    constant,
)
from poco.utils.logging import log_computation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompatibleFamily:
    """Maximal chains from a common bottom that differ at one corank level.

    Attributes:
        anchor: The chain with corank level `level` left out.
        level: Corank of the missing element.
        members: All maximal chains filling the gap, in lexicographic order.
    """
    anchor: Simplex
    level: int
    members: Tuple[Simplex, ...]


def maximal_chains(poset: Poset, x: str) -> List[Simplex]:
    """Saturated chains from `x` up to corank zero, lexicographically
    ordered.

    Raises:
        UngradedPosetError: The poset is not graded.
    """
    chains: List[Simplex] = []

    def extend(chain: List[str]) -> None:
        if poset.corank(chain[-1]) == 0:
            chains.append(Simplex(tuple(chain)))
            return
        for y in poset.upper_covers(chain[-1]):
            chain.append(y)
            extend(chain)
            chain.pop()

    extend([x])
    return sorted(chains)


def compatible_families(
    poset: Poset,
    x: str,
    chains: Optional[Sequence[Simplex]] = None,
) -> List[CompatibleFamily]:
    """Compatible families of maximal chains from `x`, including singletons.

    Families are grouped by the missing corank level and the anchor, and
    listed in that order.
    """
    if chains is None:
        chains = maximal_chains(poset, x)
    n = poset.corank(x)
    groups: Dict[Tuple[int, Simplex], List[Simplex]] = {}
    for level in range(n):
        k = n - level
        for chain in chains:
            anchor = Simplex(chain.vertices[:k] + chain.vertices[k + 1:])
            groups.setdefault((level, anchor), []).append(chain)
    return [
        CompatibleFamily(anchor=anchor, level=level, members=tuple(members))
        for (level, anchor), members in sorted(groups.items())
    ]


def a_group_presentation(
    poset: Poset,
    x: str,
) -> Tuple[List[Simplex], FpAbGroup]:
    """``A_x`` on its maximal chains with one relation per compatible
    family.

    Returns:
        The chains indexing the generators and the presented group.
    """
    chains = maximal_chains(poset, x)
    index = {chain: k for k, chain in enumerate(chains)}
    families = compatible_families(poset, x, chains)
    relations = IntMatrix.from_entries(
        len(chains),
        len(families),
        [
            (index[member], k, 1)
            for k, family in enumerate(families)
            for member in family.members
        ],
    )
    return chains, FpAbGroup(len(chains), relations)


def a_group(poset: Poset, x: str) -> FpAbGroup:
    """The group ``A_x``.

    Example:
        >>> from poco.builders.cell_complexes import circle_poset
        >>> p = circle_poset()
        >>> a_group(p, p.of_corank(1)[0]).describe()
        'Z'
    """
    return a_group_presentation(poset, x)[1]


@dataclass(frozen=True)
class CellularityVerdict:
    """Outcome of the cellularity test.

    Attributes:
        cellular: Whether every open upper interval has reduced cohomology
            concentrated in degree ``corank - 1``.
        witness: First offending element and degree.
    """
    cellular: bool
    witness: Optional[Tuple[str, int]] = None

    def describe(self) -> str:
        if self.cellular:
            return "cellular"
        x, degree = self.witness  # type: ignore[misc]
        return f"not cellular at '{x}' in degree {degree}"

    def witness_model(self) -> Optional[Witness]:
        if self.witness is None:
            return None
        return Witness(element=self.witness[0], degree=self.witness[1])


@log_computation
def is_cellular(poset: Poset) -> CellularityVerdict:
    """Test whether the poset is cellular.

    Elements are visited by corank, then identifier; the witness names the
    first element whose open upper interval has nonzero reduced cohomology
    outside degree ``corank - 1``, and the lowest such degree.

    Raises:
        UngradedPosetError: The poset is not graded.
    """
    for x in sorted(poset.elements, key=lambda e: (poset.corank(e), e)):
        expected = poset.corank(x) - 1
        report = cohomology(reduced_t_complex(poset.open_interval(x)))
        for entry in report.degrees:
            if entry.n != expected and entry.invariants() != (0, ()):
                logger.info(
                    f"Open interval above '{x}' has reduced cohomology "
                    f"{entry.describe()} in degree {entry.n}"
                )
                return CellularityVerdict(cellular=False, witness=(x, entry.n))
    return CellularityVerdict(cellular=True)


@dataclass(frozen=True, eq=False)
class CellularComplex(CochainComplex):
    """Cellular cochain complex together with its cells.

    Attributes:
        chains: Maximal chains indexing the generators of each ``A_x``.
        a_groups: The groups ``A_x``, presented or simplified.
        coordinates: Per element, the map from chain coordinates to the
            generators used in the complex.
    """
    chains: Mapping[str, Sequence[Simplex]] = field(default_factory=dict)
    a_groups: Mapping[str, FpAbGroup] = field(default_factory=dict)
    coordinates: Mapping[str, IntMatrix] = field(default_factory=dict)


def _cells(
    poset: Poset,
    simplify: bool,
) -> Dict[str, Tuple[List[Simplex], Simplification]]:
    cells = {}
    for x in poset.elements:
        chains, group = a_group_presentation(poset, x)
        if simplify:
            reduced = group.simplify()
        else:
            identity = IntMatrix.identity(group.generators)
            reduced = Simplification(group, identity, identity)
        cells[x] = (chains, reduced)
    return cells


@log_computation
def cellular_complex(
    poset: Poset,
    presheaf: Presheaf,
    simplify: bool = True,
    check: bool = True,
) -> CellularComplex:
    """The cellular complex ``C*(P; F)``.

    Args:
        poset: Graded poset.
        presheaf: Coefficients on `poset`.
        simplify: Whether each ``A_x`` is replaced by a simplified
            presentation; otherwise generators are labelled ``(x, chain,
            coordinate)``.
        check: Whether ``d . d = 0`` is verified.

    Returns:
        The complex in degrees ``0`` up to the largest corank.

    Raises:
        UngradedPosetError: The poset is not graded.
        BaseMismatchError: The presheaf lives on a different poset.
    """
    if presheaf.base != poset:
        raise BaseMismatchError("presheaf lives on a different poset")
    cells = _cells(poset, simplify)
    top = poset.max_corank()
    groups: Dict[int, FpAbGroup] = {}
    labels: Dict[int, List[tuple]] = {}
    offsets: Dict[str, int] = {}
    for n in range(top + 1):
        group = FpAbGroup.zero()
        names: List[tuple] = []
        for x in poset.of_corank(n):
            chains, reduced = cells[x]
            offsets[x] = group.generators
            group = group.direct_sum(
                reduced.group.tensor_free(presheaf.dims[x])
            )
            if simplify:
                names.extend(
                    (x, k, a)
                    for k in range(reduced.group.generators)
                    for a in range(presheaf.dims[x])
                )
            else:
                names.extend(
                    (x, chain, a)
                    for chain in chains
                    for a in range(presheaf.dims[x])
                )
        groups[n] = group
        labels[n] = names
    differentials: Dict[int, GroupMorphism] = {}
    for n in range(top):
        entries: List[Tuple[int, int, int]] = []
        sign = -1 if (n + 1) % 2 else 1
        for x in poset.of_corank(n + 1):
            chains_x, reduced_x = cells[x]
            index = {chain: k for k, chain in enumerate(chains_x)}
            for y in poset.upper_covers(x):
                chains_y, reduced_y = cells[y]
                prepend = IntMatrix.from_entries(
                    len(chains_x), len(chains_y),
                    [
                        (index[Simplex((x,) + chain.vertices)], j, 1)
                        for j, chain in enumerate(chains_y)
                    ],
                )
                cell_map = reduced_x.to_new @ prepend @ reduced_y.from_new
                block = cell_map.kron(presheaf.cover_maps[(x, y)])
                entries.extend(
                    (offsets[x] + i, offsets[y] + j, sign * v)
                    for i, j, v in block.items()
                )
        differentials[n] = GroupMorphism(
            groups[n],
            groups[n + 1],
            IntMatrix.from_entries(
                groups[n + 1].generators, groups[n].generators, entries
            ),
        )
    complex = CellularComplex(
        groups=groups,
        differentials=differentials,
        labels=labels,
        name="cellular",
        chains={x: tuple(c) for x, (c, _) in cells.items()},
        a_groups={x: r.group for x, (_, r) in cells.items()},
        coordinates={x: r.to_new for x, (_, r) in cells.items()},
    )
    if check:
        complex.validate()
    return complex


def hc(poset: Poset, presheaf: Presheaf, check: bool = True
       ) -> CohomologyReport:
    """Cellular cohomology ``HC*(P; F)``."""
    return cohomology(
        cellular_complex(poset, presheaf, check=False), check=check
    )


@log_computation
def filtration_complex(
    poset: Poset,
    presheaf: Presheaf,
) -> CochainComplex:
    """Cellular complex built from the corank filtration.

    ``C^n`` is the relative cohomology ``HS^n(P^n, P^{n-1})`` and the
    differential is the connecting map of the triple ``(P^{n+1}, P^n,
    P^{n-1})``.
    """
    if presheaf.base != poset:
        raise BaseMismatchError("presheaf lives on a different poset")
    top = poset.max_corank()
    levels = {n: poset.filtration_level(n) for n in range(-1, top + 2)}
    restricted = {
        n: presheaf.restrict(level) for n, level in levels.items()
    }
    pairs = {
        n: relative_t_complex(levels[n], levels[n - 1], restricted[n])
        for n in range(top + 2)
    }
    quotients = {n: pairs[n].subquotient(n) for n in range(top + 2)}
    differentials = {}
    for n in range(top):
        middle = relative_t_complex(
            levels[n + 1], levels[n - 1], restricted[n + 1]
        )
        differentials[n] = induced_morphism(
            connecting_matrix(pairs[n], middle, pairs[n + 1], n),
            quotients[n],
            quotients[n + 1],
        )
    complex = CochainComplex(
        groups={n: quotients[n].group for n in range(top + 1)},
        differentials=differentials,
        name="filtration",
    )
    complex.validate()
    return complex


@dataclass(frozen=True)
class EpsilonReport:
    """Outcome of the decomposition check of a filtration quotient.

    Attributes:
        ok: Whether all isomorphisms hold.
        witness: Element at which a local isomorphism fails, if any.
        detail: Description of the failed comparison.
    """
    ok: bool
    witness: Optional[str] = None
    detail: Optional[str] = None

    def describe(self) -> str:
        return "decomposition holds" if self.ok else str(self.detail)


def _shifted(report: CohomologyReport, shift: int) -> CohomologyReport:
    return CohomologyReport(
        provenance=report.provenance,
        degrees=[
            DegreeGroup(n=e.n + shift, rank=e.rank, torsion=e.torsion)
            for e in report.degrees
        ],
    )


@log_computation
def epsilon_check(poset: Poset, presheaf: Presheaf, n: int) -> EpsilonReport:
    """Check that ``HS^n(P^n, P^{n-1}; F)`` splits over the elements of
    corank `n`.

    Verifies ``HS^n(P^n, P^{n-1}; F) = sum_{|x|=n} HS^n(P_{>=x}, P_{>x};
    F)``, and for every such ``x`` that the local relative cohomology agrees
    with that of the constant presheaf ``F(x)`` and with the reduced
    cohomology of ``P_{>x}`` shifted up by one.

    Raises:
        PreconditionError: `n` is negative.
        UngradedPosetError: The poset is not graded.
    """
    if n < 0:
        raise PreconditionError(f"degree {n} is negative")
    if presheaf.base != poset:
        raise BaseMismatchError("presheaf lives on a different poset")
    level = poset.filtration_level(n)
    below = poset.filtration_level(n - 1)
    total = relative_t_complex(
        level, below, presheaf.restrict(level)
    ).subquotient(n).group
    parts = FpAbGroup.zero()
    for x in poset.of_corank(n):
        closed = poset.closed_interval(x)
        opened = poset.open_interval(x)
        local = relative_t_complex(closed, opened, presheaf.restrict(closed))
        parts = parts.direct_sum(local.subquotient(n).group)
        twisted = cohomology(local)
        flat = cohomology(relative_t_complex(
            closed, opened, constant(closed, presheaf.dims[x])
        ))
        if not twisted.is_isomorphic(flat):
            return EpsilonReport(
                ok=False, witness=x,
                detail=f"coefficients F and F('{x}') disagree at '{x}'",
            )
        reduced = _shifted(
            cohomology(reduced_t_complex(opened, presheaf.dims[x])), 1
        )
        if not flat.is_isomorphic(reduced):
            return EpsilonReport(
                ok=False, witness=x,
                detail=f"open interval above '{x}' does not match",
            )
    if not total.is_isomorphic(parts):
        return EpsilonReport(
            ok=False,
            detail=(
                f"filtration quotient {total.describe()} differs from "
                f"{parts.describe()}"
            ),
        )
    return EpsilonReport(ok=True)


def _model(invariants: Tuple[int, Tuple[int, ...]]) -> AbelianGroupModel:
    rank, torsion = invariants
    return AbelianGroupModel(rank=rank, torsion=list(torsion))


@log_computation(log_level=logging.INFO)
def compare(poset: Poset, presheaf: Presheaf) -> ComparisonReport:
    """Compare singular and cellular cohomology degree by degree.

    Differing groups on a poset that is not cellular are a finding, not an
    error; ``theorem_consistent`` is only false when a cellular poset has
    differing groups.
    """
    verdict = is_cellular(poset)
    singular = hs(poset, presheaf)
    cellular = hc(poset, presheaf)
    degrees = sorted(
        {e.n for e in singular.degrees} | {e.n for e in cellular.degrees}
    )
    rows = [
        DegreeComparison(
            n=n,
            hs=_model(singular.group(n)),
            hc=_model(cellular.group(n)),
            isomorphic=singular.group(n) == cellular.group(n),
        )
        for n in degrees
    ]
    isomorphic = all(row.isomorphic for row in rows)
    return ComparisonReport(
        cellular=verdict.cellular,
        witness=verdict.witness_model(),
        degrees=rows,
        theorem_consistent=isomorphic or not verdict.cellular,
    )


# Incidence signs


@log_computation
def cell_signs(
    poset: Poset,
    generators: Optional[Mapping[str, Simplex]] = None,
) -> SignReport:
    """Incidence signs ``[x, y]`` for all covers of a cell-like poset.

    A generator ``s_x`` of each ``A_x`` is fixed; the sign of a cover
    ``x < y`` is defined by ``x s_y = [x, y] s_x`` in ``A_x``.

    Args:
        poset: Graded poset with the diamond property whose groups ``A_x``
            are all infinite cyclic.
        generators: Chain to use as ``s_x``, per element; the
            lexicographically least maximal chain otherwise.

    Raises:
        NotCellPosetError: The diamond property fails, some ``A_x`` is not
            infinite cyclic, or a given chain does not generate ``A_x``.
    """
    if not poset.has_diamond_property():
        raise NotCellPosetError("poset does not have the diamond property")
    generators = dict(generators or {})
    cells = _cells(poset, simplify=True)
    chosen: Dict[str, Simplex] = {}
    values: Dict[str, int] = {}
    for x in poset.elements:
        chains, reduced = cells[x]
        group = reduced.group
        if group.invariants != (1, ()) or group.generators != 1:
            raise NotCellPosetError(
                f"A_{x} is {group.describe()}, not infinite cyclic"
            )
        chain = generators.get(x, chains[0])
        if chain not in chains:
            raise NotCellPosetError(
                f"'{chain}' is not a maximal chain above '{x}'"
            )
        value = reduced.to_new[0, chains.index(chain)]
        if value not in (1, -1):
            raise NotCellPosetError(f"'{chain}' does not generate A_{x}")
        chosen[x] = chain
        values[x] = value
    signs = []
    for x, y in sorted(poset.covers):
        chains, reduced = cells[x]
        prepended = Simplex((x,) + chosen[y].vertices)
        value = reduced.to_new[0, chains.index(prepended)] * values[x]
        if value not in (1, -1):
            raise NotCellPosetError(
                f"'{prepended}' does not generate A_{x}"
            )
        signs.append(SignEntry(x=x, y=y, sign=value))
    return SignReport(signs=signs)


def diamonds(poset: Poset) -> List[Tuple[str, str, str, str]]:
    """All intervals ``x < y, y' < z`` of length two, with ``y < y'``."""
    result = []
    for x in poset.elements:
        for z in poset.up(x):
            if poset.rank(z) - poset.rank(x) != 2:
                continue
            middle = [
                y for y in poset.upper_covers(x) if poset.lt(y, z)
            ]
            if len(middle) == 2:
                result.append((x, middle[0], middle[1], z))
    return result


def sign_violations(
    poset: Poset,
    signs: Mapping[Tuple[str, str], int],
) -> List[Tuple[str, str, str, str]]:
    """Diamonds on which ``[x,y][y,z] = -[x,y'][y',z]`` fails."""
    return [
        (x, y, w, z) for x, y, w, z in diamonds(poset)
        if signs[(x, y)] * signs[(y, z)] != -signs[(x, w)] * signs[(w, z)]
    ]


# Moebius ranks


def expected_a_rank(poset: Poset, x: str) -> int:
    """``(-1)^(|x|-1) mu(x, 1)`` computed after adjoining a maximum ``1``.

    For geometric lattices without their top this is the rank of ``A_x``.
    """
    extended = poset.add_maximum()
    top = extended.maximal_elements()[0]
    return (-1) ** ((poset.corank(x) - 1) % 2) * extended.mobius(x, top)


def mobius_rank_mismatches(poset: Poset) -> List[str]:
    """Elements whose ``A_x`` is not free of the rank predicted by the
    Moebius function."""
    mismatches = []
    for x in poset.elements:
        group = a_group(poset, x)
        if group.invariants != (expected_a_rank(poset, x), ()):
            logger.debug(f"A_{x} = {group.describe()} at '{x}'")
            mismatches.append(x)
    return mismatches


def expected_cochain_ranks(poset: Poset, presheaf: Presheaf) -> Dict[int, int]:
    """Predicted rank of each ``C^n`` as ``sum mu_x dim F(x)``."""
    ranks = {n: 0 for n in range(poset.max_corank() + 1)}
    for x in poset.elements:
        ranks[poset.corank(x)] += (
            expected_a_rank(poset, x) * presheaf.dims[x]
        )
    return ranks
