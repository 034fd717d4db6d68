"""Tests for rank computation, flex search and certification."""

import math
from fractions import Fraction

import numpy as np
import pytest

from core.design import generate, verify_design
from core.rigidity import (
    analyse_system,
    certificate_to_dict,
    certify,
    flex_search,
    matrix_rank,
)
from core.system import build_system, select_pins
from models import PointConfiguration, RigidityStatus, ScalarMode
from utils import LayoutMismatchError, NotADesignError, PreconditionError


class TestMatrixRank:

    @pytest.mark.parametrize("mode", [ScalarMode.EXACT, ScalarMode.FLOAT])
    def test_identity(self, mode):
        result = matrix_rank([[1, 0], [0, 1]], mode)
        assert result.rank == 2
        assert result.kernel == ()

    def test_exact_rank_one(self):
        result = matrix_rank([[1, 2], [2, 4]], ScalarMode.EXACT)
        assert result.rank == 1
        (v,) = result.kernel
        assert v[0] == -2 * v[1] and v[1] != 0

    def test_float_rank_one(self):
        result = matrix_rank([[1.0, 2.0], [2.0, 4.0]])
        assert result.rank == 1
        (v,) = result.kernel
        assert v[0] / v[1] == pytest.approx(-2.0)

    @pytest.mark.parametrize("mode", [ScalarMode.EXACT, ScalarMode.FLOAT])
    def test_zero(self, mode):
        result = matrix_rank([[0, 0, 0]] * 3, mode)
        assert result.rank == 0
        assert result.kernel_dimension == 3

    def test_exact_fractions(self):
        rows = [[Fraction(1, 2), Fraction(1, 3), 1], [1, Fraction(2, 3), 2], [0, 1, Fraction(5, 7)]]
        result = matrix_rank(rows, ScalarMode.EXACT)
        assert result.rank == 2
        (v,) = result.kernel
        for row in rows:
            assert sum(Fraction(a) * b for a, b in zip(row, v)) == 0

    def test_no_rows(self):
        result = matrix_rank([], ScalarMode.FLOAT, columns=2)
        assert result.rank == 0
        assert result.kernel_dimension == 2

    def test_tolerance_boundary(self):
        result = matrix_rank(np.diag([1.0, 5e-9]), ScalarMode.FLOAT, tolerance=1e-8)
        assert result.rank == 1
        assert result.near_boundary

    def test_ragged(self):
        with pytest.raises(LayoutMismatchError):
            matrix_rank([[1, 2], [3]])


class TestFlexSearch:

    def test_rotating_pair(self, antipodal_pairs):
        s, c = math.sqrt(3) / 2, 0.5
        # hyperplane layout: -e_1, u, -u; rotate u and -u together
        direction = np.array([0.0, 0.0, -s, c, s, -c]) / math.sqrt(2)
        result = flex_search(antipodal_pairs, 1, direction, num_pins=1)
        assert result.converged and result.succeeded
        assert result.residual_norm <= 1e-12
        assert result.displacement == pytest.approx(1e-2, rel=1e-2)

    def test_coincident_points_do_not_block_flex(self):
        s, c = math.sqrt(3) / 2, 0.5
        X = PointConfiguration(
            dimension_d=1,
            mode=ScalarMode.FLOAT,
            points=[(1.0, 0.0), (-1.0, 0.0), (c, s), (-c, -s), (1.0, 0.0), (-1.0, 0.0)],
        )
        # hyperplane layout: -e_1, u, -u, e_1, -e_1; rotate u and -u together
        direction = np.array([0.0, 0.0, -s, c, s, -c, 0.0, 0.0, 0.0, 0.0]) / math.sqrt(2)
        result = flex_search(X, 1, direction, num_pins=1)
        assert result.within_separation
        assert result.succeeded

    def test_triangle_returns_to_design(self, triangle):
        direction = np.random.default_rng(1).standard_normal(2)
        result = flex_search(triangle, 2, direction / np.linalg.norm(direction))
        assert not result.succeeded
        assert result.displacement < 1e-9

    def test_zero_direction(self, triangle):
        with pytest.raises(PreconditionError):
            flex_search(triangle, 2, [0.0, 0.0])

    def test_non_unit_direction(self, triangle):
        with pytest.raises(PreconditionError):
            flex_search(triangle, 2, [1.0, 1.0])

    def test_wrong_length(self, triangle):
        with pytest.raises(LayoutMismatchError):
            flex_search(triangle, 2, [1.0, 0.0, 0.0])


class TestAnalyseSystem:

    def test_cross_polytope_exact_full_rank(self, cross_polytope):
        analysis = analyse_system(build_system(cross_polytope, 3))
        assert analysis.rank.mode is ScalarMode.EXACT
        assert analysis.rank.rank == analysis.k == 9
        assert analysis.directions_tried == 0

    def test_antipodal_pairs_pinned_is_isolated(self, antipodal_pairs):
        analysis = analyse_system(build_system(antipodal_pairs, 1))
        assert analysis.rank.rank == analysis.k == 4
        assert analysis.witness is None

    def test_antipodal_pairs_hyperplane_flexes(self, antipodal_pairs):
        analysis = analyse_system(build_system(antipodal_pairs, 1, num_pins=1), search="hyperplane")
        assert analysis.rank.kernel_dimension == 1
        assert analysis.witness is not None
        assert analysis.witness.anchors == (0,)


class TestCertify:

    def test_triangle_certified(self, triangle):
        certificate = certify(triangle, 2)
        assert certificate.status is RigidityStatus.PINNED_ISOLATED_CERTIFIED
        assert certificate.jacobian_rank == certificate.k == 2
        assert certificate.witness is None
        assert certificate.bound.holds

    def test_square_consistent(self, square):
        certificate = certify(square, 3)
        assert certificate.status is RigidityStatus.PINNED_ISOLATED_CERTIFIED
        assert certificate.jacobian_rank == certificate.k == 4

    def test_pins_only_vacuous(self, antipodal_line):
        certificate = certify(antipodal_line, 1)
        assert certificate.status is RigidityStatus.PINNED_ISOLATED_CERTIFIED
        assert certificate.k == 0

    def test_antipodal_pairs_flex(self, antipodal_pairs):
        certificate = certify(antipodal_pairs, 1)
        assert certificate.status is RigidityStatus.NOT_RIGID_FLEX_FOUND
        witness = certificate.witness
        assert witness.search == "hyperplane"
        assert witness.design_residual <= 1e-10
        assert witness.max_deviation >= 1e-6
        assert witness.orbit_distance > 1e-7
        for anchor in witness.anchors:
            assert witness.configuration.points[anchor] == antipodal_pairs.points[anchor]
        assert verify_design(witness.configuration, 1, 1e-10).is_design

    def test_cross_polytope_pinned_flex(self, cross_polytope):
        certificate = certify(cross_polytope, 2)
        assert certificate.status is RigidityStatus.NOT_RIGID_FLEX_FOUND
        witness = certificate.witness
        assert witness.search == "pinned"
        assert len(witness.anchors) == 3
        for anchor in witness.anchors:
            assert witness.configuration.points[anchor] == cross_polytope.points[anchor]
        assert verify_design(witness.configuration, 2, 1e-10).is_design
        assert witness.orbit_distance > 1e-7

    @pytest.mark.parametrize("fixture, t, tail", [
        ("cross_polytope", 3, [2, 0, 1]),
        ("square", 3, [1, 0]),
        ("pentagon", 2, [2, 0, 1]),
    ])
    def test_unchanged_by_reordering_unknown_points(self, request, fixture, t, tail):
        ordered, _ = select_pins(request.getfixturevalue(fixture))
        pins = ordered.dimension_d + 1
        shuffled = ordered.reordered(list(range(pins)) + [pins + i for i in tail])
        first, second = certify(ordered, t), certify(shuffled, t)
        assert second.status is first.status
        assert (second.jacobian_rank, second.k) == (first.jacobian_rank, first.k)
        assert second.bound == first.bound

    def test_not_a_design(self, cross_polytope):
        with pytest.raises(NotADesignError):
            certify(cross_polytope, 4)

    def test_too_few_points(self):
        X = generate("cross-polytope", d=2).reordered([0, 2])
        with pytest.raises(PreconditionError):
            certify(X, 1)

    def test_certificate_json(self, antipodal_pairs):
        payload = certificate_to_dict(certify(antipodal_pairs, 1))
        assert payload["status"] == "NOT_RIGID_FLEX_FOUND"
        assert payload["witness"]["configuration"]["mode"] == "float"
        assert payload["bound"]["holds"] is True
        assert payload["hyperplane"]["k"] == 6
