"""Tests for `poco.py` module."""

from pathlib import Path

from pydantic import ValidationError
import pytest

from poco import Poco
from poco.builders.cell_complexes import circle_poset
from poco.errors.exceptions import (
    FunctorialityError,
    InputError,
    NotCellPosetError,
    PreconditionError,
    UngradedPosetError,
)
from poco.poco import (
    FAMILIES,
    METHODS,
)
from poco.posets.presheaf import constant

DIR = Path(__file__).parent / "test_files"
EMPTY_CONF = DIR / "empty_conf.yaml"
INVALID_CONF = DIR / "conf_no_yaml.txt"
INVALID_COMPUTE_CONF = DIR / "conf_invalid_compute.yaml"
INVALID_LOG_CONF = DIR / "conf_invalid_log_level.yaml"
SMALL_CONF = DIR / "conf_compute.yaml"
PATH_CIRCLE = DIR / "circle.json"
PATH_CIRCLE_TWISTED = DIR / "circle_twisted.json"
PATH_DIAMOND = DIR / "diamond.json"
PATH_DIAMOND_NONFUNCTORIAL = DIR / "diamond_nonfunctorial.json"
PATH_PENTAGON = DIR / "pentagon.json"
PATH_TRIANGLE = DIR / "triangle.json"
PATH_TREFOIL = DIR / "trefoil.pd"
TWISTED = {0: (0, ()), 1: (0, (2,))}


@pytest.fixture
def poco():
    return Poco(quiet=True)


def test_poco_constructor_default():
    """Default config."""
    obj = Poco()
    assert obj.config_file is None
    assert obj.conf.compute.check_complexes


def test_poco_constructor_empty_conf():
    """Empty config; defaults apply."""
    obj = Poco(config_file=EMPTY_CONF)
    assert obj.conf.compute.max_poset_size == 5000


def test_poco_constructor_invalid_conf():
    """Invalid config file format."""
    with pytest.raises(ValueError):
        Poco(config_file=INVALID_CONF)


def test_poco_constructor_invalid_conf_log():
    """Invalid 'log' field."""
    with pytest.raises(ValidationError):
        Poco(config_file=INVALID_LOG_CONF)


def test_poco_constructor_invalid_conf_compute():
    """Invalid 'compute' field."""
    with pytest.raises(ValidationError):
        Poco(config_file=INVALID_COMPUTE_CONF)


class TestInput:

    def test_load_poset(self, poco):
        assert poco.load_poset(PATH_CIRCLE) == circle_poset()

    def test_load_poset_too_large(self):
        poco = Poco(config_file=SMALL_CONF)
        with pytest.raises(PreconditionError):
            poco.load_poset(PATH_CIRCLE)

    def test_load_presheaf_default(self, poco):
        poset = circle_poset()
        assert poco.load_presheaf(None, poset) == constant(poset, 1)

    def test_load_presheaf(self, poco):
        presheaf = poco.load_presheaf(PATH_CIRCLE_TWISTED, circle_poset())
        assert presheaf.total_rank == 4

    def test_load_presheaf_validation(self, poco):
        poset = poco.load_poset(PATH_DIAMOND)
        with pytest.raises(FunctorialityError):
            poco.load_presheaf(PATH_DIAMOND_NONFUNCTORIAL, poset)


class TestBuild:

    @pytest.mark.parametrize("family, args, size", [
        ("boolean", ["2"], 4),
        ("partition", ["3"], 5),
        ("bruhat", ["3"], 5),
        ("tree", ["2", "2"], 5),
        ("circle", [], 4),
        ("rp2", [], 32),
        ("suspension", ["2"], 5),
        ("cw", [str(PATH_TRIANGLE)], 6),
    ])
    def test_families(self, poco, family, args, size):
        poset, presheaf = poco.build(family, args)
        assert len(poset) == size
        assert presheaf == constant(poset, 1)

    def test_khovanov(self, poco):
        poset, presheaf = poco.build("khovanov", [str(PATH_TREFOIL)])
        assert presheaf.base == poset
        assert presheaf.dims["{1,2,3}"] == 8

    def test_all_families_covered(self):
        assert len(FAMILIES) == 9

    def test_unknown_family(self, poco):
        with pytest.raises(InputError):
            poco.build("torus", [])

    def test_argument_count(self, poco):
        with pytest.raises(InputError):
            poco.build("tree", ["2"])

    def test_argument_type(self, poco):
        with pytest.raises(InputError):
            poco.build("boolean", ["two"])

    def test_out_of_range(self, poco):
        with pytest.raises(PreconditionError):
            poco.build("bruhat", ["7"])

    def test_too_large(self):
        poco = Poco(config_file=SMALL_CONF)
        with pytest.raises(PreconditionError):
            poco.build("circle")


class TestComputations:

    def test_check(self, poco):
        report = poco.check(poco.load_poset(PATH_CIRCLE))
        assert report.graded and report.diamond and report.cellular
        assert report.witness is None

    def test_check_ungraded(self, poco):
        report = poco.check(poco.load_poset(PATH_PENTAGON))
        assert not report.graded
        assert report.cellular is None

    def test_check_tree_witness(self, poco):
        poset, _ = poco.build("tree", ["2", "3"])
        report = poco.check(poset)
        assert not report.cellular
        assert report.witness.element == "r"
        assert report.witness.degree == 0

    @pytest.mark.parametrize("method", METHODS)
    def test_methods_agree_on_twisted_circle(self, poco, method):
        poset = circle_poset()
        presheaf = poco.load_presheaf(PATH_CIRCLE_TWISTED, poset)
        report = poco.cohomology(poset, presheaf, method=method)
        assert report.as_dict() == TWISTED

    def test_provenance(self, poco):
        poset, presheaf = poco.build("circle")
        assert poco.cohomology(poset, presheaf).provenance == "singular"
        assert poco.cohomology(
            poset, presheaf, method="degenerate"
        ).provenance == "singular-degenerate"

    def test_unknown_method(self, poco):
        poset, presheaf = poco.build("circle")
        with pytest.raises(InputError):
            poco.cohomology(poset, presheaf, method="simplicial")

    def test_cellular_ungraded(self, poco):
        poset = poco.load_poset(PATH_PENTAGON)
        with pytest.raises(UngradedPosetError):
            poco.cohomology(poset, constant(poset, 1), method="cellular")

    def test_compare(self, poco):
        poset, presheaf = poco.build("tree", ["2", "3"])
        report = poco.compare(poset, presheaf)
        assert not report.cellular
        assert report.theorem_consistent
        assert [d.n for d in report.degrees if not d.isomorphic] == [0]

    def test_signs(self, poco):
        report = poco.signs(circle_poset())
        assert report.as_dict()[("e0", "v1")] == -1

    def test_signs_not_cell(self, poco):
        poset, _ = poco.build("partition", ["3"])
        with pytest.raises(NotCellPosetError):
            poco.signs(poset)
