"""
Tests for the isoparametric family catalog.
"""
import json
import math

import pytest

from isoparametric.catalog import (
    FocalDescriptor,
    InvalidFamilyError,
    Provenance,
    Side,
    alpha_sq,
    ambient_dimension,
    catalog_dump,
    clifford_delta,
    enumerate_g4_families,
    focal_descriptor,
    g3_g6_families,
    wang_minimizing,
)
from lawlor.qmodel import Spectrum


class TestFocalDescriptor:
    """Tests for focal_descriptor."""

    def test_g4_minus_side(self):
        """(4, 1, 2, minus) has cone (5, alpha^2 = 2)."""
        d = focal_descriptor(4, 1, 2, Side.MINUS)
        assert (d.dim, d.cone_dim) == (4, 5)
        assert d.alpha_sq == pytest.approx(2.0)

    def test_g4_plus_side(self):
        """(4, 1, 2, plus) has cone (6, alpha^2 = 4) and spectrum {+1 x2, -1 x2, 0 x1}."""
        d = focal_descriptor(4, 1, 2, Side.PLUS)
        assert (d.dim, d.cone_dim) == (5, 6)
        assert d.alpha_sq == pytest.approx(4.0)
        assert d.spectrum == Spectrum(((1.0, 2), (-1.0, 2), (0.0, 1)))

    def test_g3(self):
        """(3, 2, 2) has dim 4 and alpha^2 = 4/3."""
        d = focal_descriptor(3, 2, 2, Side.PLUS)
        assert d.dim == 4
        assert d.alpha_sq == pytest.approx(4 / 3)

    def test_g6_m2(self):
        """(6, 2, 2) has dim 10 and alpha^2 = 40/3."""
        d = focal_descriptor(6, 2, 2, Side.PLUS)
        assert d.dim == 10
        assert d.alpha_sq == pytest.approx(40 / 3)

    def test_g6_m1(self):
        """(6, 1, 1) has dim 5 and alpha^2 = 20/3."""
        d = focal_descriptor(6, 1, 1, Side.MINUS)
        assert d.dim == 5
        assert d.alpha_sq == pytest.approx(20 / 3)

    def test_g2_great_sphere(self):
        """g = 2 focal sets are totally geodesic spheres."""
        plus = focal_descriptor(2, 3, 5, Side.PLUS)
        minus = focal_descriptor(2, 3, 5, Side.MINUS)
        assert (plus.dim, minus.dim) == (3, 5)
        assert plus.alpha_sq == 0.0
        assert plus.spectrum.is_zero

    @pytest.mark.parametrize(
        "g,m1,m2",
        [(1, 1, 1), (5, 1, 1), (4, 0, 3), (3, 1, 2), (6, 2, 1)],
    )
    def test_structural_errors(self, g, m1, m2):
        """Impossible parameters raise InvalidFamilyError."""
        with pytest.raises(InvalidFamilyError) as exc:
            focal_descriptor(g, m1, m2, Side.PLUS)
        assert exc.value.g == g

    def test_inadmissible_is_advisory(self):
        """Unknown multiplicities still produce a descriptor, flagged."""
        d = focal_descriptor(3, 3, 3, Side.PLUS)
        assert d.admissible is False
        assert d.dim == 6
        assert focal_descriptor(4, 2, 2, Side.PLUS).admissible is True
        assert focal_descriptor(4, 2, 4, Side.PLUS).admissible is False

    def test_dict_round_trip(self):
        """to_dict/from_dict through JSON restores the descriptor."""
        d = focal_descriptor(6, 2, 2, Side.PLUS)
        assert FocalDescriptor.from_dict(json.loads(json.dumps(d.to_dict()))) == d


class TestDescriptorInvariants:
    """Invariants over the g = 4 catalog and the g in {3, 6} families."""

    @pytest.fixture(scope="class")
    def descriptors(self):
        out = []
        for record in enumerate_g4_families(30) + g3_g6_families():
            for side in Side:
                out.append(focal_descriptor(record.g, record.m1, record.m2, side))
        return out

    def test_trace_free(self, descriptors):
        """Every spectrum is trace-free."""
        for d in descriptors:
            assert abs(sum(m * lam for lam, m in d.spectrum.entries)) < 1e-12

    def test_stored_norm_matches_spectrum(self, descriptors):
        """alpha_sq equals the spectrum norm."""
        for d in descriptors:
            assert d.alpha_sq == pytest.approx(d.spectrum.alpha_sq)
            assert d.spectrum.dimension == d.dim

    def test_g4_norm_identity(self, descriptors):
        """g = 4: alpha^2 = cone_dim - 1 - m_other <= cone_dim - 2."""
        for d in descriptors:
            if d.g == 4:
                assert d.alpha_sq == pytest.approx(d.cone_dim - 1 - d.other_multiplicity)
                assert d.alpha_sq <= d.cone_dim - 2

    def test_g4_one_one_is_extremal(self):
        """(1, 1) gives alpha^2 = cone_dim - 2 on both sides."""
        for side in Side:
            d = focal_descriptor(4, 1, 1, side)
            assert d.alpha_sq == pytest.approx(d.cone_dim - 2)

    def test_four_thirds_bound(self, descriptors):
        """alpha^2 <= (4/3) dim."""
        for d in descriptors:
            assert d.alpha_sq <= 4 / 3 * d.dim + 1e-12


class TestAlphaSq:
    """Tests for alpha_sq."""

    def test_g4_m2_five(self):
        """{+1 x5, -1 x5, 0 x4} has norm 10."""
        assert alpha_sq(Spectrum(((1.0, 5), (-1.0, 5), (0.0, 4)))) == 10.0

    def test_empty(self):
        """The empty spectrum has norm 0."""
        assert alpha_sq(Spectrum()) == 0.0

    def test_g6(self):
        """The g = 6, m = 2 spectrum has norm 40/3."""
        assert alpha_sq(focal_descriptor(6, 2, 2).spectrum) == pytest.approx(40 / 3)


class TestCliffordDelta:
    """Tests for clifford_delta."""

    @pytest.mark.parametrize("m,expected", [(1, 1), (2, 2), (3, 4), (4, 4), (5, 8), (8, 8), (9, 16), (12, 64), (17, 256)])
    def test_values(self, m, expected):
        """Base table and delta(m + 8) = 16 delta(m)."""
        assert clifford_delta(m) == expected

    def test_invalid(self):
        """m must be positive."""
        with pytest.raises(ValueError):
            clifford_delta(0)


class TestEnumerateG4Families:
    """Tests for enumerate_g4_families."""

    def test_small(self):
        """max_sum = 2 contains (1, 1)."""
        assert [(r.m1, r.m2) for r in enumerate_g4_families(2)] == [(1, 1)]

    def test_first_inhomogeneous(self):
        """(3, 4) first appears at m1 + m2 = 7."""
        pairs = {(r.m1, r.m2) for r in enumerate_g4_families(7)}
        assert (3, 4) in pairs
        assert (3, 4) not in {(r.m1, r.m2) for r in enumerate_g4_families(6)}

    def test_exceptions_included(self):
        """(2, 2) and (4, 5) are tagged homogeneous-exceptional."""
        records = {(r.m1, r.m2): r for r in enumerate_g4_families(9)}
        assert records[(2, 2)].provenance is Provenance.HOMOGENEOUS_EXCEPTIONAL
        assert records[(4, 5)].provenance is Provenance.HOMOGENEOUS_EXCEPTIONAL
        assert (4, 5) not in {(r.m1, r.m2) for r in enumerate_g4_families(8)}

    def test_ot_fkm_shape(self):
        """Every OT-FKM pair is (m, k delta(m) - m - 1), sorted and unique."""
        records = enumerate_g4_families(40)
        keys = [(r.m1, r.m2) for r in records]
        assert keys == sorted(set(keys))
        for r in records:
            assert r.m1 + r.m2 <= 40
            if r.provenance is Provenance.OT_FKM:
                assert (r.m1 + r.m2 + 1) % clifford_delta(r.m1) == 0

    def test_invalid(self):
        """max_sum < 2 is rejected."""
        with pytest.raises(ValueError):
            enumerate_g4_families(1)


class TestWangMinimizing:
    """Tests for wang_minimizing."""

    def test_exception_g2(self):
        """(2, 1, 5) in dimension 8 is not minimizing."""
        assert not wang_minimizing(2, 1, 5, 8)

    def test_exception_g4(self):
        """(4, 1, 6) in dimension 16 is not minimizing."""
        assert not wang_minimizing(4, 1, 6, 16)

    def test_minimizing_g2(self):
        """(2, 2, 4) in dimension 8 is strictly minimizing."""
        result = wang_minimizing(2, 2, 4, 8)
        assert result
        assert result.strictly

    def test_low_dimension(self):
        """n < 4g fails."""
        assert not wang_minimizing(4, 1, 1, 6)

    def test_default_ambient_dimension(self):
        """n defaults to g(m1 + m2)/2 + 2."""
        assert ambient_dimension(4, 1, 6) == 16
        assert wang_minimizing(2, 2, 4).n == 8

    def test_g1_refused(self):
        """g = 1 is outside the criterion."""
        with pytest.raises(InvalidFamilyError):
            wang_minimizing(1, 1, 1, 10)


class TestCatalogDump:
    """Tests for catalog_dump."""

    def test_both_sides_per_family(self):
        """Each record carries plus and minus descriptors and is JSON-serializable."""
        dump = json.loads(json.dumps(catalog_dump(9)))
        assert dump["max_sum"] == 9
        families = {(f["g"], f["m1"], f["m2"]) for f in dump["families"]}
        assert (4, 4, 5) in families
        assert (6, 2, 2) in families
        for family in dump["families"]:
            assert family["plus"]["side"] == "plus"
            assert family["minus"]["side"] == "minus"

    def test_g3_g6_list(self):
        """g = 3 with m in {1, 2, 4, 8} and g = 6 with m in {1, 2}."""
        assert [(r.g, r.m1) for r in g3_g6_families()] == [(3, 1), (3, 2), (3, 4), (3, 8), (6, 1), (6, 2)]

    def test_g3_norm(self):
        """g = 3 families have alpha^2 = dim / 3."""
        for record in g3_g6_families():
            d = focal_descriptor(record.g, record.m1, record.m2)
            if d.g == 3:
                assert d.alpha_sq == pytest.approx(d.dim / 3)
                assert math.isclose(d.alpha_sq, 2 * d.m1 / 3)
