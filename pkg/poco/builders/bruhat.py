"""Bruhat orders on symmetric groups with the identity removed.

Permutations are written in one-line notation, e.g. ``4321``. The poset is
ordered so that ``x < y`` when ``y`` has fewer inversions, and covers are
given by interchanging a swap pair: values ``i > j`` with ``i`` in front
of ``j`` and no value between them positioned in between. The corank of
``x`` is its number of inversions minus one.
"""

from dataclasses import (dataclass, field)
from functools import cached_property
from itertools import permutations
import logging
from typing import (
    Dict,
    List,
    Tuple,
)

from poco.cohomology.singular import Simplex
from poco.errors.exceptions import (
    NotCellPosetError,
    PreconditionError,
)
from poco.posets.poset import (
    Poset,
    from_covers,
)

logger = logging.getLogger(__name__)

SwapPair = Tuple[int, int]


def inversions(x: str) -> int:
    return sum(
        1 for a in range(len(x)) for b in range(a + 1, len(x)) if x[a] > x[b]
    )


def swap_pairs(x: str) -> List[SwapPair]:
    """Pairs ``(i, j)`` of values whose interchange removes exactly one
    inversion.

    Example:
        >>> swap_pairs("4321")
        [(2, 1), (3, 2), (4, 3)]
    """
    values = [int(c) for c in x]
    position = {v: k for k, v in enumerate(values)}
    pairs = []
    for i in values:
        for j in values:
            if i <= j or position[i] > position[j]:
                continue
            between = values[position[i] + 1:position[j]]
            if not any(j < v < i for v in between):
                pairs.append((i, j))
    return sorted(pairs, key=_pair_order)


def _pair_order(pair: SwapPair) -> Tuple[int, int]:
    i, j = pair
    return (j, i)


def minimal_swap_pair(x: str) -> SwapPair:
    """Least swap pair, comparing the smaller value first.

    Raises:
        PreconditionError: `x` is the identity.
    """
    pairs = swap_pairs(x)
    if not pairs:
        raise PreconditionError(f"'{x}' has no swap pair")
    return pairs[0]


def interchange(x: str, pair: SwapPair) -> str:
    i, j = (str(v) for v in pair)
    return x.translate(str.maketrans({i: j, j: i}))


@dataclass(frozen=True)
class BruhatOrder:
    """Bruhat order on ``S_n`` without the identity.

    Args:
        n: Number of letters, between 2 and 5.

    Attributes:
        n: Number of letters.
        poset: The graded poset.
    """
    n: int
    poset: Poset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not 2 <= self.n <= 5:
            raise PreconditionError(
                f"Bruhat orders are built for 2 <= n <= 5, got {self.n}"
            )
        letters = "".join(str(v) for v in range(1, self.n + 1))
        elements = [
            "".join(p) for p in permutations(letters) if "".join(p) != letters
        ]
        length = self.n * (self.n - 1) // 2
        covers = [
            (x, y)
            for x in elements
            for y in (interchange(x, pair) for pair in swap_pairs(x))
            if y != letters
        ]
        poset = from_covers(
            elements, covers, {x: length - inversions(x) for x in elements}
        )
        object.__setattr__(self, "poset", poset)
        logger.debug(f"Bruhat order of S_{self.n}: {poset.describe()}")

    @property
    def minimum(self) -> str:
        return "".join(str(v) for v in range(self.n, 0, -1))

    def canonical_chain(self, x: str) -> Simplex:
        """Maximal chain from `x` obtained by repeatedly interchanging the
        minimal swap pair.

        Example:
            >>> str(BruhatOrder(4).canonical_chain("4321"))
            '4321 <= 4312 <= 4132 <= 1432 <= 1423 <= 1243'
        """
        chain = [x]
        while self.poset.corank(chain[-1]) > 0:
            chain.append(
                interchange(chain[-1], minimal_swap_pair(chain[-1]))
            )
        return Simplex(tuple(chain))

    @cached_property
    def canonical_generators(self) -> Dict[str, Simplex]:
        return {x: self.canonical_chain(x) for x in self.poset.elements}

    def sign_table(self) -> Dict[Tuple[str, str], int]:
        """Incidence signs by induction over the corank.

        The cover given by the minimal swap pair gets ``+1``. At corank one
        the other cover gets ``-1``; above it, signs are propagated through
        diamonds ``x < y, y' < z`` using ``[x,y][y,z] = -[x,y'][y',z]``.

        Raises:
            NotCellPosetError: Some cover is not reached by a diamond.
        """
        poset = self.poset
        signs: Dict[Tuple[str, str], int] = {}
        for x in sorted(
            poset.elements, key=lambda e: (poset.corank(e), e)
        ):
            covers = poset.upper_covers(x)
            if not covers:
                continue
            first = interchange(x, minimal_swap_pair(x))
            signs[(x, first)] = 1
            if poset.corank(x) == 1:
                signs.update({(x, y): -1 for y in covers if y != first})
                continue
            pending = [y for y in covers if y != first]
            while pending:
                progress = False
                for y in list(pending):
                    for w in covers:
                        if (x, w) not in signs:
                            continue
                        common = set(poset.upper_covers(y)) & set(
                            poset.upper_covers(w)
                        )
                        if common:
                            z = min(common)
                            signs[(x, y)] = (
                                -signs[(x, w)] * signs[(w, z)]
                                * signs[(y, z)]
                            )
                            pending.remove(y)
                            progress = True
                            break
                if not progress:
                    raise NotCellPosetError(
                        f"cover ('{x}', '{pending[0]}') lies in no diamond"
                    )
        return signs


def bruhat_poset(n: int) -> Poset:
    """The poset of :class:`BruhatOrder`."""
    return BruhatOrder(n).poset
