"""Model-layer tests: embedding, classification, duality, chi, constructions."""

import random
from fractions import Fraction

import pytest

from qga.errors import (
    DegeneratePoints,
    NotAPoint,
    NotGradeOne,
    ZeroMatrix,
    ZeroVector,
)
from qga.model import ConicClass, QgaContext, QuadricMatrix, VectorClass

from conftest import rand_point

F = Fraction


class TestEmbedding:
    def test_embed_values(self, ctx2):
        e = ctx2.metric.e
        p = ctx2.embed((F(1), F(2)))
        assert p.equals(e(1) + e(2) + F(1, 2) * e(3) + e(4) + 2 * e(5) + 2 * e(6))

    def test_embedded_points_are_null(self, ctx2, ctx3):
        rng = random.Random(21)
        for ctx in (ctx2, ctx3):
            for _ in range(20):
                p = ctx.embed(rand_point(rng, ctx.n))
                assert (p * p).is_zero
                for k in range(1, ctx.n + 1):
                    ax = ctx.axis_part(p, k)
                    assert (ax * ax).is_zero

    def test_unembed_roundtrip(self, ctx3):
        rng = random.Random(22)
        for _ in range(20):
            pt = rand_point(rng, 3)
            lam = F(rng.randint(1, 5), rng.randint(1, 5))
            assert ctx3.unembed(lam * ctx3.embed(pt)) == pt

    def test_distance(self, ctx2):
        assert ctx2.distance((0, 0), (3, 4)) == pytest.approx(5.0)
        assert ctx2.distance((1, 1), (1, 1)) == 0.0

    def test_wrong_arity(self, ctx2):
        with pytest.raises(ValueError):
            ctx2.embed((1, 2, 3))


class TestClassification:
    def test_point_classes(self, ctx2):
        p = ctx2.embed((F(1), F(2)))
        assert ctx2.classify_vector(p) is VectorClass.NORMALIZED_POINT
        assert ctx2.classify_vector(3 * p) is VectorClass.SCALED_POINT

    def test_ideal_point(self, ctx2):
        e = ctx2.metric.e
        assert ctx2.classify_vector(e(3) + e(6)) is VectorClass.IDEAL_POINT
        assert ctx2.classify_vector(2 * e(3)) is VectorClass.IDEAL_POINT

    def test_null_non_point(self, ctx2):
        e = ctx2.metric.e
        # null overall and per axis, but axis weights differ
        v = e(1) + 2 * e(4)
        assert ctx2.classify_vector(v) is VectorClass.NULL_NON_POINT

    def test_quadric_vector(self, ctx2, circle):
        assert ctx2.classify_vector(circle) is VectorClass.QUADRIC_VECTOR

    def test_grade_errors(self, ctx2):
        e = ctx2.metric.e
        with pytest.raises(NotGradeOne):
            ctx2.classify_vector(e(2) ^ e(5))
        with pytest.raises(NotGradeOne):
            ctx2.classify_vector(ctx2.metric.zero())

    def test_unembed_rejects_non_point(self, ctx2, circle):
        with pytest.raises(NotAPoint):
            ctx2.unembed(circle)

    def test_float_classification(self, ctx2):
        p = ctx2.embed((0.1, -2.5))
        assert ctx2.classify_vector(p) is VectorClass.NORMALIZED_POINT
        x, y = ctx2.unembed(1.5 * p)
        assert x == pytest.approx(0.1) and y == pytest.approx(-2.5)


class TestDuality:
    def test_pseudo_blades_2d(self, ctx2):
        e = ctx2.metric.e
        I, I_star = ctx2.pseudo_blades()
        assert I.equals(e(2) ^ e(5) ^ e(1) ^ e(4) ^ (e(3) + e(6)))
        assert I_star.equals(e(2) ^ e(5) ^ e(3) ^ e(6) ^ (e(1) + e(4)))

    def test_pseudo_blades_3d(self, ctx3):
        e = ctx3.metric.e
        I, _ = ctx3.pseudo_blades()
        exp = (e(2) ^ e(5) ^ e(8)) ^ (e(1) ^ e(4) ^ e(7)) ^ (e(3) + e(6) + e(9))
        assert I.equals(exp)

    def test_opns_to_ipns_circle(self, ctx2, circle):
        pts = [(F(-1), F(0)), (F(1), F(0)), (F(0), F(-1)), (F(0), F(1))]
        w = ctx2.embed(pts[0])
        for p in pts[1:]:
            w = w ^ ctx2.embed(p)
        assert ctx2.dualize(w, "to_ipns").proportional_to(circle)


class TestChi:
    def test_matrix_validation(self):
        with pytest.raises(ValueError):
            QuadricMatrix(((0, 1), (2, 0)))  # asymmetric
        with pytest.raises(ValueError):
            QuadricMatrix(((1, 0, 0), (0, 0, 1), (0, 1, 0)))  # cross term
        with pytest.raises(ZeroMatrix):
            QuadricMatrix(((0, 0), (0, 0)))

    def test_circle_chi(self, ctx2, circle):
        M = QuadricMatrix(((-2, 0, 0), (0, 2, 0), (0, 0, 2)))
        assert ctx2.quadric_to_vector(M).equals(circle)

    def test_roundtrip_2d(self, ctx2, circle):
        M = ctx2.vector_to_quadric(circle)
        assert M.constant == -2
        assert M.quad(1) == M.quad(2) == 2
        assert ctx2.quadric_to_vector(M).equals(circle)

    def test_roundtrip_random_3d(self, ctx3):
        rng = random.Random(23)
        for _ in range(10):
            size = 4
            rows = [[F(0)] * size for _ in range(size)]
            rows[0][0] = F(rng.randint(-5, 5))
            for k in range(1, size):
                rows[k][k] = F(rng.randint(-5, 5))
                lin = F(rng.randint(-5, 5))
                rows[0][k] = rows[k][0] = lin
            if all(not c for r in rows for c in r):
                continue
            M = QuadricMatrix(tuple(tuple(r) for r in rows))
            back = ctx3.vector_to_quadric(ctx3.quadric_to_vector(M))
            assert back.entries == M.entries

    def test_vector_to_quadric_errors(self, ctx2):
        with pytest.raises(ZeroVector):
            ctx2.vector_to_quadric(ctx2.metric.zero())
        with pytest.raises(NotGradeOne):
            ctx2.vector_to_quadric(ctx2.metric.e(2) ^ ctx2.metric.e(5))


class TestConicClassification:
    def test_classes(self, ctx2, circle):
        q2v = ctx2.quadric_to_vector
        line = ctx2.hyperplane_through_points([(F(0), F(0)), (F(1), F(1))])
        assert ctx2.classify_conic(line) is ConicClass.LINE
        parab = q2v(QuadricMatrix(((0, 0, -F(1, 2)), (0, 1, 0), (-F(1, 2), 0, 0))))
        assert ctx2.classify_conic(parab) is ConicClass.PARABOLA_Y_AXIS
        parab_x = q2v(QuadricMatrix(((0, -F(1, 2), 0), (-F(1, 2), 0, 0), (0, 0, 1))))
        assert ctx2.classify_conic(parab_x) is ConicClass.PARABOLA_X_AXIS
        hyp = q2v(QuadricMatrix(((-1, 0, 0), (0, 1, 0), (0, 0, -1))))
        assert ctx2.classify_conic(hyp) is ConicClass.EQUILATERAL_HYPERBOLA
        assert ctx2.classify_conic(circle) is ConicClass.GENERAL_CONIC

    def test_requires_2d(self, ctx3, ellipsoid):
        with pytest.raises(ValueError):
            ctx3.classify_conic(ellipsoid)


class TestConstructions:
    def test_line_through_origin(self, ctx2):
        e = ctx2.metric.e
        l = ctx2.hyperplane_through_points([(F(0), F(0)), (F(3), F(5))])
        assert l.proportional_to(2 * 5 * e(2) - 2 * 3 * e(5))

    def test_line_general(self, ctx2):
        e = ctx2.metric.e
        xa, ya, xb, yb = F(2), F(3), F(-1), F(4)
        l = ctx2.hyperplane_through_points([(xa, ya), (xb, yb)])
        exp = (-2 * (ya - yb) * e(2) + (xa * yb - ya * xb) * e(3)
               + 2 * (xa - xb) * e(5) + (xa * yb - ya * xb) * e(6))
        assert l.proportional_to(exp)

    def test_plane_x_equals_1(self, ctx3):
        e = ctx3.metric.e
        pl = ctx3.hyperplane_through_points([(F(1), F(1), F(1)), (F(1), F(1), F(-1)),
                                             (F(1), F(-1), F(1))])
        assert pl.proportional_to(3 * e(2) + e(3) + e(6) + e(9))

    def test_degenerate_hyperplane(self, ctx2):
        with pytest.raises(DegeneratePoints):
            ctx2.hyperplane_through_points([(F(1), F(1)), (F(1), F(1))])

    def test_quadric_through_points_circle(self, ctx2, circle):
        pts = [(F(-1), F(0)), (F(1), F(0)), (F(0), F(-1)), (F(0), F(1))]
        assert ctx2.quadric_through_points(pts).proportional_to(circle)

    def test_quadric_through_points_ellipsoid(self, ctx3, ellipsoid):
        pts = [(F(9, 10), 0, 0), (F(-9, 10), 0, 0), (0, F(3, 4), 0),
               (0, F(-3, 4), 0), (0, 0, F(5, 4)), (0, 0, F(-5, 4))]
        got = ctx3.quadric_through_points([tuple(map(F, p)) for p in pts])
        assert got.proportional_to(ellipsoid)

    def test_degenerate_quadric(self, ctx2):
        with pytest.raises(DegeneratePoints):
            ctx2.quadric_through_points(
                [(F(0), F(0)), (F(0), F(0)), (F(1), F(0)), (F(0), F(1))])


class TestPairBlade:
    def test_printed_form_2d(self, ctx2):
        e = ctx2.metric.e
        x0, y0 = F(3), F(5)
        pb = ctx2.point_pair_blade((x0, y0))
        exp = (2 * (e(2) ^ e(5)) + x0 * ((e(3) ^ e(5)) - (e(5) ^ e(6)))
               + y0 * ((e(2) ^ e(3)) + (e(2) ^ e(6))))
        assert pb.equals(exp)

    def test_printed_form_3d(self, ctx3):
        e = ctx3.metric.e
        x0, y0, z0 = F(2), F(-3), F(5)
        pb = ctx3.point_pair_blade((x0, y0, z0))
        exp = (3 * (e(2) ^ e(5) ^ e(8))
               + x0 * ((e(3) ^ e(5) ^ e(8)) - (e(5) ^ e(6) ^ e(8)) + (e(5) ^ e(8) ^ e(9)))
               + y0 * ((e(2) ^ e(3) ^ e(8)) + (e(2) ^ e(6) ^ e(8)) - (e(2) ^ e(8) ^ e(9)))
               + z0 * (-(e(2) ^ e(3) ^ e(5)) + (e(2) ^ e(5) ^ e(6)) + (e(2) ^ e(5) ^ e(9))))
        assert pb.equals(exp)

    def test_coords_roundtrip(self, ctx2, ctx3):
        rng = random.Random(24)
        for ctx in (ctx2, ctx3):
            for _ in range(10):
                pt = rand_point(rng, ctx.n)
                assert ctx.pair_blade_coords(ctx.point_pair_blade(pt)) == pt

    def test_coords_rejects_no_anchor(self, ctx2):
        with pytest.raises(NotAPoint):
            ctx2.pair_blade_coords(ctx2.metric.e(2) ^ ctx2.metric.e(3))


class TestMembership:
    def test_ipns_membership(self, ctx2, circle):
        assert ctx2.null_space_membership((F(1), F(0)), circle, "ipns")
        assert ctx2.null_space_membership((F(3, 5), F(4, 5)), circle, "ipns")
        assert not ctx2.null_space_membership((F(1), F(1)), circle, "ipns")

    def test_opns_membership(self, ctx2):
        w = ctx2.embed((F(-1), F(0))) ^ ctx2.embed((F(1), F(0)))
        assert ctx2.null_space_membership((F(1), F(0)), w, "opns")
        assert not ctx2.null_space_membership((F(0), F(1)), w, "opns")

    def test_float_membership(self, ctx2, circle):
        import math
        t = 0.37
        assert ctx2.null_space_membership((math.cos(t), math.sin(t)), circle, "ipns")
