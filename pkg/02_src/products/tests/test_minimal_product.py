"""
Tests for minimal products and the folded normal-radius bound.
"""
import json
import math
import random

import pytest

from isoparametric.catalog import (
    FocalDescriptor,
    Side,
    enumerate_g4_families,
    focal_descriptor,
    g3_g6_families,
    great_sphere,
)
from lawlor.qmodel import Spectrum
from products.minimal_product import (
    ProductError,
    UnsupportedFactorError,
    combine_shape_ratios,
    euler_normal_trace,
    minimal_product,
    product_normal_radius_lb,
    shape_sup_sq,
)


@pytest.fixture
def g3_m2():
    return focal_descriptor(3, 2, 2, Side.PLUS)


class TestMinimalProduct:
    """Tests for minimal_product."""

    def test_g3_pair(self, g3_m2):
        """Two (3, 2, 2) factors: S = 8, sup |A|^2 = 8, tan^2 phi >= 7/9."""
        spec = minimal_product([g3_m2, g3_m2])
        assert spec.S == 8
        assert spec.cone_dim == 9
        assert spec.shape_sup_sq == pytest.approx(8.0)
        assert spec.tan_phi_sq_lb == pytest.approx(7 / 9)

    def test_weights_unit(self, g3_m2):
        """Squared weights sum to 1."""
        spec = minimal_product([g3_m2, focal_descriptor(4, 1, 2, Side.PLUS), great_sphere(3)])
        assert sum(w * w for w in spec.weights) == pytest.approx(1.0)
        assert spec.weights[0] == pytest.approx(math.sqrt(4 / 12))

    def test_g6_factor_dominates_shape(self, g3_m2):
        """A g = 6 factor has alpha^2/k = 4/3 so sup |A|^2 = 4S/3."""
        g6 = focal_descriptor(6, 1, 1, Side.PLUS)
        spec = minimal_product([g6, g3_m2])
        assert spec.has_g6
        assert spec.shape_sup_sq == pytest.approx(4 / 3 * 9)

    def test_labels_and_dims(self, g3_m2):
        """focal_dims and sphere_dims split the factors."""
        spec = minimal_product([great_sphere(5), g3_m2, great_sphere(2)])
        assert spec.focal_dims == [4]
        assert spec.sphere_dims == [2, 5]
        assert "S^5" in spec.label()

    def test_to_dict_serializable(self, g3_m2):
        """to_dict survives JSON."""
        spec = minimal_product([great_sphere(2), great_sphere(2)])
        data = json.loads(json.dumps(spec.to_dict()))
        assert data["normal_radius"]["tan_phi_sq_lb"] == "inf"
        assert data["S"] == 4

    def test_too_few_factors(self, g3_m2):
        """A single factor is not a product."""
        with pytest.raises(ProductError):
            minimal_product([g3_m2])
        with pytest.raises(ProductError):
            minimal_product([])

    def test_unsupported_factor(self, g3_m2):
        """Factors outside g in {2, 3, 4, 6} raise UnsupportedFactorError."""
        point = FocalDescriptor(g=1, m1=1, m2=1, side=Side.PLUS, dim=1, spectrum=Spectrum(), alpha_sq=0.0)
        with pytest.raises(UnsupportedFactorError) as exc:
            minimal_product([g3_m2, point])
        assert exc.value.g == 1


class TestProductNormalRadius:
    """Tests for product_normal_radius_lb."""

    def test_focal_with_one_sphere(self, g3_m2):
        """(3, 2, 2) x S^4: k_min = min(4, 10) over 8 gives 7/9."""
        bound = product_normal_radius_lb([g3_m2, great_sphere(4)])
        assert bound.k_min == 4
        assert bound.total_dim == 8
        assert bound.tan_phi_sq_lb == pytest.approx(7 / 9)
        assert bound.dominance_ok

    def test_small_sphere_lowers_k_min(self):
        """S^1 enters with 2(l + 1) = 4 < k1."""
        focal = focal_descriptor(4, 2, 2, Side.PLUS)
        bound = product_normal_radius_lb([focal, great_sphere(1)])
        assert bound.k_min == 4
        assert bound.tan_phi_sq_lb == pytest.approx((1 / (1 - 4 / 14)) ** 2 - 1)

    def test_focal_with_two_spheres(self):
        """(4, 1, 2) minus x S^2 x S^3: k_min = 4 over 9 gives 32/49."""
        focal = focal_descriptor(4, 1, 2, Side.MINUS)
        bound = product_normal_radius_lb([great_sphere(3), focal, great_sphere(2)])
        assert bound.k_min == 4
        assert bound.total_dim == 9
        assert bound.tan_phi_sq_lb == pytest.approx(32 / 49)
        assert bound.dominance_ok

    def test_spheres_only(self):
        """S^2 x S^3: cos = 1/5 so tan^2 = 24, classified externally."""
        bound = product_normal_radius_lb([great_sphere(2), great_sphere(3)])
        assert bound.classified_externally
        assert bound.tan_phi_sq_lb == pytest.approx(24.0)

    def test_equal_spheres_infinite(self):
        """S^2 x S^2 has no return: infinite bound, phi = pi/2."""
        bound = product_normal_radius_lb([great_sphere(2), great_sphere(2)])
        assert math.isinf(bound.tan_phi_sq_lb)
        assert bound.phi_lb == pytest.approx(math.pi / 2)

    def test_ledger_inherits_cos_bound(self):
        """After each focal fold, cos = 1 - k1/(2 S~) with the smallest k1."""
        factors = [focal_descriptor(4, 1, 2, Side.PLUS), focal_descriptor(3, 2, 2), focal_descriptor(6, 1, 1)]
        bound = product_normal_radius_lb(factors)
        dims = [4, 9, 14]
        assert [entry.dim for entry in bound.ledger] == dims
        assert bound.ledger[0].cos_bound == 0.5
        for entry in bound.ledger[1:]:
            assert entry.k_min == 4
            assert entry.cos_bound == pytest.approx(1 - 4 / (2 * entry.dim))
            assert entry.candidates

    def test_dominance_random(self):
        """Candidate minima never fall below the closed form on random products."""
        pool = [focal_descriptor(r.g, r.m1, r.m2, side) for r in enumerate_g4_families(12) for side in Side]
        pool += [focal_descriptor(r.g, r.m1, r.m2) for r in g3_g6_families()]
        pool += [great_sphere(dim) for dim in range(1, 9)]
        rng = random.Random(20240611)
        for _ in range(300):
            factors = rng.sample(pool, rng.randint(2, 5))
            bound = product_normal_radius_lb(factors)
            assert bound.dominance_ok, [f.label() for f in factors]
            assert bound.tan_phi_sq_lb > 0


class TestShapeRatios:
    """Tests for the shape operator bound."""

    def test_associative(self):
        """Folding ratios is associative."""
        rng = random.Random(7)
        for _ in range(100):
            a, b, c = (rng.uniform(0, 2) for _ in range(3))
            assert combine_shape_ratios(a, combine_shape_ratios(b, c)) == combine_shape_ratios(
                combine_shape_ratios(a, b), c
            )

    def test_spheres_give_s(self):
        """Totally geodesic factors give sup |A|^2 = S."""
        assert shape_sup_sq([great_sphere(3), great_sphere(4)]) == pytest.approx(7.0)

    def test_g4_ratio_below_one(self):
        """g = 4 focal sets have alpha^2/k < 1."""
        factors = [focal_descriptor(4, 1, 2, Side.PLUS), focal_descriptor(4, 1, 2, Side.MINUS)]
        assert shape_sup_sq(factors) == pytest.approx(9.0)


class TestEulerNormalTrace:
    """Tests for euler_normal_trace."""

    @pytest.mark.parametrize("k1,k2", [(1, 1), (2, 7), (10, 3), (16, 16)])
    def test_vanishes(self, k1, k2):
        """The shape operator along the circle normal is trace-free."""
        assert euler_normal_trace(k1, k2) == pytest.approx(0.0, abs=1e-12)
