"""Tests for khovanov.py."""

from pathlib import Path

import pytest

from poco.builders.io import read_pd
from poco.builders.khovanov import (
    MAX_CROSSINGS,
    LinkDiagram,
    cube_complex,
    edge_map,
    khovanov,
    resolution_circles,
    trefoil_pd,
    unknot_pd,
)
from poco.cohomology.cellular import (
    hc,
    is_cellular,
)
from poco.cohomology.complexes import cohomology
from poco.errors.exceptions import (
    MalformedLinkError,
    PreconditionError,
)

DIR = Path(__file__).parents[1].resolve() / "test_files"
PATH_TREFOIL = DIR / "trefoil.pd"
PATH_BROKEN = DIR / "broken.pd"

KINK = LinkDiagram(((1, 1, 2, 2),))
TREFOIL_KH = {0: (2, ()), 1: (0, ()), 2: (1, ()), 3: (1, (2,))}


class TestLinkDiagram:

    def test_read_file(self):
        assert read_pd(PATH_TREFOIL) == trefoil_pd()
        assert len(trefoil_pd()) == 3

    def test_broken_file(self):
        with pytest.raises(MalformedLinkError):
            read_pd(PATH_BROKEN)

    def test_text_round_trip(self):
        text = trefoil_pd().to_pd_text()
        assert text.startswith("X1,5,2,4\n")
        assert LinkDiagram.from_pd_text(text) == trefoil_pd()

    def test_unparseable_line(self):
        with pytest.raises(MalformedLinkError):
            LinkDiagram.from_pd_text("X[1,2,3,4]\nY[1,2,3,4]\n")
        with pytest.raises(MalformedLinkError):
            LinkDiagram.from_pd_text("X[1,2,a,4]")

    def test_strand_counts(self):
        with pytest.raises(MalformedLinkError):
            LinkDiagram(((1, 2, 3, 4),))

    def test_unknot(self):
        assert len(unknot_pd()) == 0
        assert LinkDiagram.from_pd_text("# nothing\n\n") == unknot_pd()


class TestResolutions:

    def test_trefoil_circles(self):
        assert len(resolution_circles(trefoil_pd(), frozenset())) == 2
        assert len(
            resolution_circles(trefoil_pd(), frozenset({1, 2, 3}))
        ) == 3

    def test_unknot_circle(self):
        assert resolution_circles(unknot_pd(), frozenset()) == [frozenset()]

    def test_merge(self):
        matrix = edge_map(
            [frozenset({1}), frozenset({2})], [frozenset({1, 2})]
        )
        assert matrix.to_rows() == [[1, 0, 0, 0], [0, 1, 1, 0]]

    def test_split(self):
        matrix = edge_map(
            [frozenset({1, 2})], [frozenset({1}), frozenset({2})]
        )
        assert matrix.to_rows() == [[0, 0], [1, 0], [1, 0], [0, 1]]

    def test_neither(self):
        with pytest.raises(MalformedLinkError):
            edge_map([frozenset({1})], [frozenset({1})])


class TestKhovanov:

    def test_trefoil_cube(self):
        report = cohomology(cube_complex(trefoil_pd()))
        assert report.provenance == "khovanov"
        assert report.as_dict() == TREFOIL_KH

    def test_trefoil_cellular(self):
        """The cellular groups differ from the cube only in degree zero,
        by the all-zero resolution."""
        poset, presheaf = khovanov(trefoil_pd())
        assert is_cellular(poset).cellular
        assert presheaf.dims["1"] == presheaf.dims["1'"] == 4
        assert presheaf.dims["{1,2,3}"] == 8
        report = hc(poset, presheaf)
        assert report.as_dict() == {
            0: (6, ()), 1: (0, ()), 2: (1, ()), 3: (1, (2,)),
        }

    def test_unknot(self):
        poset, presheaf = khovanov(unknot_pd())
        assert hc(poset, presheaf).as_dict() == {0: (4, ())}

    def test_kink(self):
        poset, presheaf = khovanov(KINK)
        assert hc(poset, presheaf).as_dict() == {0: (6, ()), 1: (0, ())}

    def test_too_many_crossings(self):
        diagram = LinkDiagram(tuple(
            (2 * k + 1, 2 * k + 1, 2 * k + 2, 2 * k + 2)
            for k in range(MAX_CROSSINGS + 1)
        ))
        with pytest.raises(PreconditionError):
            khovanov(diagram)
        with pytest.raises(PreconditionError):
            cube_complex(diagram)
