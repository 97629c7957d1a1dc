"""Tests for reports.py."""

from pydantic import ValidationError
import pytest

from poco.models.reports import (
    AbelianGroupModel,
    CohomologyReport,
    ComparisonReport,
    DegreeComparison,
    DegreeGroup,
    SignEntry,
    SignReport,
)

Z = AbelianGroupModel(rank=1)
Z2 = AbelianGroupModel(torsion=[2])


def _report(provenance, groups):
    return CohomologyReport(
        provenance=provenance,
        degrees=[
            DegreeGroup(n=n, rank=r, torsion=list(t)) for n, (r, t) in groups
        ],
    )


class TestAbelianGroupModel:

    def test_describe(self):
        assert AbelianGroupModel().describe() == "0"
        assert Z.describe() == "Z"
        assert AbelianGroupModel(rank=3, torsion=[2, 4]).describe() == (
            "Z^3 + Z/2 + Z/4"
        )

    def test_invariants(self):
        assert AbelianGroupModel(rank=2, torsion=[3]).invariants() == (2, (3,))

    @pytest.mark.parametrize("torsion", [[1], [0], [2, 3], [4, 2]])
    def test_invalid_torsion(self, torsion):
        with pytest.raises(ValidationError):
            AbelianGroupModel(torsion=torsion)

    def test_negative_rank(self):
        with pytest.raises(ValidationError):
            AbelianGroupModel(rank=-1)

    def test_extra_field(self):
        with pytest.raises(ValidationError):
            AbelianGroupModel(order=2)


class TestCohomologyReport:

    def test_lookup(self):
        report = _report("singular", [(0, (1, ())), (1, (0, (2,)))])
        assert report.group(1) == (0, (2,))
        assert report.group(5) == (0, ())
        assert report.ranks() == [1, 0]
        assert report.as_dict() == {0: (1, ()), 1: (0, (2,))}

    def test_describe(self):
        report = _report("cellular", [(0, (0, ())), (1, (0, (2,)))])
        assert report.describe() == "cellular: H^0 = 0, H^1 = Z/2"
        assert CohomologyReport(provenance="x").describe() == (
            "x: no degrees"
        )

    def test_isomorphic_with_missing_degrees(self):
        short = _report("a", [(0, (1, ()))])
        long = _report("b", [(0, (1, ())), (1, (0, ())), (2, (0, ()))])
        assert short.is_isomorphic(long)
        assert long.is_isomorphic(short)
        assert not short.is_isomorphic(_report("c", [(1, (1, ()))]))

    def test_json_dump(self):
        report = _report("singular", [(0, (1, ()))])
        assert report.model_dump() == {
            "provenance": "singular",
            "degrees": [{"rank": 1, "torsion": [], "n": 0}],
        }


class TestComparisonReport:

    def test_describe(self):
        report = ComparisonReport(
            cellular=False,
            degrees=[
                DegreeComparison(n=0, hs=Z, hc=Z, isomorphic=True),
                DegreeComparison(n=1, hs=Z, hc=Z2, isomorphic=False),
            ],
        )
        assert report.describe() == (
            "cellular=False, differing degrees=[1], consistent=True"
        )


class TestSigns:

    def test_as_dict(self):
        report = SignReport(signs=[
            SignEntry(x="e0", y="v0", sign=1),
            SignEntry(x="e0", y="v1", sign=-1),
        ])
        assert report.as_dict() == {("e0", "v0"): 1, ("e0", "v1"): -1}

    @pytest.mark.parametrize("sign", [0, 2, -2])
    def test_invalid_sign(self, sign):
        with pytest.raises(ValidationError):
            SignEntry(x="a", y="b", sign=sign)
