"""Quadric geometric algebra model layer for base dimension n >= 1.

Each base axis gets a conformal-style triple of generators
(e_{3k-2}, e_{3k-1}, e_{3k}): a homogeneous generator, the Euclidean
coordinate generator and a null-cone generator, with the per-axis form block

    D = [[0, 0, -1], [0, 1, 0], [-1, 0, 0]].

Points embed as null grade-1 elements, axis-aligned conics/quadrics are
grade-1 elements, and duality between inner- and outer-product null spaces
is multiplication by fixed (2n+1)-blades.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .clifford import Metric, Multivector
from .errors import (
    DegeneratePoints,
    GradeOutOfRange,
    NotAPoint,
    NotGradeOne,
    ZeroMatrix,
    ZeroVector,
)
from .scalars import DEFAULT_EPS_CMP, DEFAULT_EPS_ZERO, coeff_is_zero, is_exact

__all__ = ["QgaContext", "QuadricMatrix", "VectorClass", "ConicClass"]

_AXIS_BLOCK = ((0, 0, -1), (0, 1, 0), (-1, 0, 0))


class VectorClass(Enum):
    NORMALIZED_POINT = "normalized_point"
    SCALED_POINT = "scaled_point"
    IDEAL_POINT = "ideal_point"
    NULL_NON_POINT = "null_non_point"
    QUADRIC_VECTOR = "quadric_vector"


class ConicClass(Enum):
    LINE = "line"
    PARABOLA_X_AXIS = "parabola_x_axis"
    PARABOLA_Y_AXIS = "parabola_y_axis"
    EQUILATERAL_HYPERBOLA = "equilateral_hyperbola"
    GENERAL_CONIC = "general_conic"


@dataclass(frozen=True)
class QuadricMatrix:
    """Symmetric (n+1)x(n+1) coefficient matrix of a principal-position quadric.

    Row/column 0 is the homogenizing coordinate; cross terms between
    coordinate rows are zero (no xy terms).
    """

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        size = len(rows)
        if size < 2 or any(len(r) != size for r in rows):
            raise ValueError("quadric matrix must be square of size n+1 >= 2")
        for i in range(size):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("quadric matrix must be symmetric")
        for i in range(1, size):
            for j in range(1, i):
                if rows[i][j]:
                    raise ValueError("principal position requires zero cross terms")
        if all(not c for r in rows for c in r):
            raise ZeroMatrix("quadric matrix is identically zero")

    @property
    def n(self) -> int:
        return len(self.entries) - 1

    @property
    def constant(self):
        return self.entries[0][0]

    def quad(self, k: int):
        """x_k^2 coefficient (1-based axis)."""
        return self.entries[k][k]

    def linear(self, k: int):
        """Half-coefficient of x_k: the (0, k) matrix entry."""
        return self.entries[0][k]

    def polynomial_coeffs(self):
        """(constant, [quad_k], [lin_k]) of c0 + sum(c_k x_k^2 + 2 l_k x_k)."""
        n = self.n
        return self.constant, [self.quad(k) for k in range(1, n + 1)], \
            [self.linear(k) for k in range(1, n + 1)]


class QgaContext:
    """Shared, immutable state for a QnGA algebra of base dimension n."""

    def __init__(self, n: int, eps_zero: float = DEFAULT_EPS_ZERO,
                 eps_cmp: float = DEFAULT_EPS_CMP):
        if n < 1:
            raise ValueError("base dimension must be >= 1")
        self.n = n
        self.eps_cmp = eps_cmp
        dim = 3 * n
        form = [[0] * dim for _ in range(dim)]
        for k in range(n):
            for a in range(3):
                for b in range(3):
                    form[3 * k + a][3 * k + b] = _AXIS_BLOCK[a][b]
        self.metric = Metric(form, eps_zero=eps_zero)
        self._I, self._I_star = self._build_pseudo_blades()

    # generator index helpers (1-based): axis k in 1..n
    def homog_index(self, k: int) -> int:
        return 3 * k - 2

    def coord_index(self, k: int) -> int:
        return 3 * k - 1

    def null_index(self, k: int) -> int:
        return 3 * k

    def _build_pseudo_blades(self):
        m = self.metric
        I = m.scalar(1)
        for k in range(1, self.n + 1):
            I = I ^ m.e(self.coord_index(k))
        I_star = I
        for k in range(1, self.n + 1):
            I = I ^ m.e(self.homog_index(k))
        for k in range(1, self.n + 1):
            I_star = I_star ^ m.e(self.null_index(k))
        null_sum = sum((m.e(self.null_index(k)) for k in range(1, self.n + 1)), m.zero())
        homog_sum = sum((m.e(self.homog_index(k)) for k in range(1, self.n + 1)), m.zero())
        return I ^ null_sum, I_star ^ homog_sum

    def pseudo_blades(self):
        """Duality blades (I, I*) of grade 2n+1."""
        return self._I, self._I_star

    # -- embedding ---------------------------------------------------------

    def embed(self, point) -> Multivector:
        """Conformal-per-axis embedding of a base point as a null vector."""
        coords = tuple(point)
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(coords)}")
        m = self.metric
        half = Fraction(1, 2)
        v = m.zero()
        for k, x in enumerate(coords, start=1):
            v = v + m.e(self.homog_index(k)) + x * m.e(self.coord_index(k)) \
                + half * x * x * m.e(self.null_index(k))
        return v

    def axis_part(self, v: Multivector, k: int) -> Multivector:
        """Projection of a grade-1 element onto the generators of axis k."""
        idx = {self.homog_index(k), self.coord_index(k), self.null_index(k)}
        return Multivector(
            self.metric,
            {1 << (i - 1): v.coeff(i) for i in idx if not coeff_is_zero(v.coeff(i))},
            clean=False,
        )

    def _scalar_square(self, v: Multivector):
        return (v * v).scalar_part()

    def _is_zero_scalar(self, val, scale: float) -> bool:
        if is_exact(val):
            return val == 0
        return abs(float(val)) <= self.eps_cmp * max(1.0, scale)

    def classify_vector(self, v: Multivector) -> VectorClass:
        """Sort a grade-1 element into the point / ideal / quadric taxonomy."""
        if v.is_zero or v.grades() != {1}:
            raise NotGradeOne("classification requires a nonzero grade-1 element")
        scale = v.max_abs() ** 2
        null_ok = self._is_zero_scalar(self._scalar_square(v), scale)
        if null_ok:
            for k in range(1, self.n + 1):
                if not self._is_zero_scalar(self._scalar_square(self.axis_part(v, k)), scale):
                    null_ok = False
                    break
        if not null_ok:
            return VectorClass.QUADRIC_VECTOR
        # -e_{3k} . v picks out the homogeneous coefficient of axis k
        norms = [v.coeff(self.homog_index(k)) for k in range(1, self.n + 1)]
        vmax = v.max_abs()
        zero = [self._is_zero_scalar(s, vmax) for s in norms]
        if all(zero):
            return VectorClass.IDEAL_POINT
        if any(zero):
            return VectorClass.NULL_NON_POINT
        first = norms[0]
        for s in norms[1:]:
            if is_exact(first) and is_exact(s):
                if s != first:
                    return VectorClass.NULL_NON_POINT
            elif abs(float(s) - float(first)) > self.eps_cmp * max(1.0, abs(float(first))):
                return VectorClass.NULL_NON_POINT
        one = all(
            (is_exact(s) and s == 1) or (not is_exact(s) and abs(float(s) - 1.0) <= self.eps_cmp)
            for s in norms
        )
        return VectorClass.NORMALIZED_POINT if one else VectorClass.SCALED_POINT

    def unembed(self, v: Multivector):
        """Base point of a (possibly scaled) embedded point."""
        cls = self.classify_vector(v)
        if cls not in (VectorClass.NORMALIZED_POINT, VectorClass.SCALED_POINT):
            raise NotAPoint(f"vector classifies as {cls.value}")
        lam = v.coeff(self.homog_index(1))
        if is_exact(lam):
            lam = Fraction(lam)
        return tuple(v.coeff(self.coord_index(k)) / lam for k in range(1, self.n + 1))

    def distance(self, p, q) -> float:
        """Euclidean distance via -d^2/2 = eta(p) . eta(q)."""
        ip = (self.embed(p) | self.embed(q)).scalar_part()
        return math.sqrt(max(0.0, float(-2 * ip)))

    # -- duality -----------------------------------------------------------

    def dualize(self, A: Multivector, direction: str) -> Multivector:
        """A . I (to_ipns) or A . I* (to_opns)."""
        k = A.grade()
        if not 1 <= k <= 2 * self.n + 1:
            raise GradeOutOfRange(f"grade {k} outside 1..{2 * self.n + 1}")
        if direction == "to_ipns":
            return A | self._I
        if direction == "to_opns":
            return A | self._I_star
        raise ValueError("direction must be 'to_ipns' or 'to_opns'")

    # -- quadric <-> vector bijection --------------------------------------

    def quadric_to_vector(self, M: QuadricMatrix) -> Multivector:
        """Grade-1 image of a principal-position quadric matrix.

        The constant entry is split equally (1/n each) over the null-cone
        generators; the inner product null space of the result is the zero
        set of the matrix.
        """
        if M.n != self.n:
            raise ValueError(f"matrix is for base dimension {M.n}, context is {self.n}")
        m = self.metric
        share = Fraction(1, self.n)
        v = m.zero()
        for k in range(1, self.n + 1):
            v = v + 2 * M.quad(k) * m.e(self.homog_index(k)) \
                - 2 * M.linear(k) * m.e(self.coord_index(k)) \
                + share * M.constant * m.e(self.null_index(k))
        return v

    def vector_to_quadric(self, v: Multivector) -> QuadricMatrix:
        """Inverse of the bijection up to the constant-splitting convention."""
        if v.is_zero:
            raise ZeroVector("cannot read a quadric off the zero vector")
        if v.grades() != {1}:
            raise NotGradeOne("quadric vectors are grade-1")
        half = Fraction(1, 2)
        size = self.n + 1
        rows = [[0] * size for _ in range(size)]
        c0 = 0
        for k in range(1, self.n + 1):
            rows[k][k] = half * v.coeff(self.homog_index(k))
            lin = -half * v.coeff(self.coord_index(k))
            rows[0][k] = lin
            rows[k][0] = lin
            c0 = c0 + v.coeff(self.null_index(k))
        rows[0][0] = c0
        return QuadricMatrix(tuple(tuple(r) for r in rows))

    def classify_conic(self, v: Multivector) -> ConicClass:
        """Classify a 2D grade-1 element by incidence with the ideal points."""
        if self.n != 2:
            raise ValueError("conic classification is defined for n = 2")
        if v.is_zero or v.grades() != {1}:
            raise NotGradeOne("conic classification requires a nonzero grade-1 element")
        scale = v.max_abs()
        i3 = (v | self.metric.e(3)).scalar_part()
        i6 = (v | self.metric.e(6)).scalar_part()
        z3 = self._is_zero_scalar(i3, scale)
        z6 = self._is_zero_scalar(i6, scale)
        if z3 and z6:
            return ConicClass.LINE
        if z3:
            return ConicClass.PARABOLA_X_AXIS
        if z6:
            return ConicClass.PARABOLA_Y_AXIS
        if self._is_zero_scalar(i3 + i6, scale):
            return ConicClass.EQUILATERAL_HYPERBOLA
        return ConicClass.GENERAL_CONIC

    # -- constructions from points -----------------------------------------

    def _wedge_embedded(self, points):
        w = None
        for p in points:
            ep = self.embed(p)
            w = ep if w is None else (w ^ ep)
        if w is None or w.is_zero:
            raise DegeneratePoints("embedded points are linearly dependent")
        return w

    def hyperplane_through_points(self, points) -> Multivector:
        """IPNS vector of the line (n=2) / plane (n=3) through n base points."""
        points = list(points)
        if len(points) != self.n:
            raise ValueError(f"expected {self.n} points")
        w = self._wedge_embedded(points)
        for k in range(1, self.n + 1):
            w = w ^ self.metric.e(self.null_index(k))
        if w.is_zero:
            raise DegeneratePoints("points are affinely dependent")
        out = w | self._I
        if out.is_zero:
            raise DegeneratePoints("points are affinely dependent")
        return out

    def axis_hyperplane(self, j: int, point) -> Multivector:
        """IPNS vector of the hyperplane x_j = point_j through the point."""
        coords = list(point)
        pts = [tuple(coords)]
        for k in range(1, self.n + 1):
            if k == j:
                continue
            shifted = list(coords)
            shifted[k - 1] = shifted[k - 1] + 1
            pts.append(tuple(shifted))
        return self.hyperplane_through_points(pts)

    def point_pair_blade(self, point) -> Multivector:
        """Grade-n blade for the pair {P, infinity}.

        Intersection of the n axis-parallel hyperplanes through P, scaled so
        the coefficient of e_2 ^ e_5 ^ ... equals n (the paper's printed
        normalization for n = 2, 3).
        """
        coords = tuple(point)
        blade = None
        for j in range(1, self.n + 1):
            h = self.axis_hyperplane(j, coords)
            blade = h if blade is None else (blade ^ h)
        anchor = blade.coeff(tuple(self.coord_index(k) for k in range(1, self.n + 1)))
        if is_exact(anchor):
            anchor = Fraction(anchor)
        return blade * (self.n / anchor)

    def pair_blade_coords(self, blade: Multivector):
        """Read base coordinates back off a point-pair blade (n = 2, 3)."""
        anchor_idx = tuple(self.coord_index(k) for k in range(1, self.n + 1))
        anchor = blade.coeff(anchor_idx)
        if coeff_is_zero(anchor):
            raise NotAPoint("blade has no affine anchor component")
        if is_exact(anchor):
            anchor = Fraction(anchor)
        coords = []
        for j in range(1, self.n + 1):
            # coefficient of the blade where axis j's coordinate generator is
            # replaced by its null generator, e.g. e35 in 2e25 + x(e35 - e56) + ...
            # (replacing 3j-1 by 3j keeps the index tuple sorted, so no sign)
            idx = tuple(
                (self.null_index(j) if k == j else self.coord_index(k))
                for k in range(1, self.n + 1)
            )
            coords.append(blade.coeff(idx) * self.n / anchor)
        return tuple(coords)

    def quadric_through_points(self, points) -> Multivector:
        """IPNS quadric vector through 2n base points."""
        points = list(points)
        if len(points) != 2 * self.n:
            raise ValueError(f"expected {2 * self.n} points")
        w = self._wedge_embedded(points)
        out = w | self._I
        if out.is_zero:
            raise DegeneratePoints("points do not determine a unique quadric")
        return out

    # -- null-space membership ----------------------------------------------

    def null_space_membership(self, point, A: Multivector, kind: str) -> bool:
        """Does the embedded point lie in the blade's GIPNS / GOPNS?"""
        eta = self.embed(point)
        if kind == "ipns":
            res = eta | A
        elif kind == "opns":
            res = eta ^ A
        else:
            raise ValueError("kind must be 'ipns' or 'opns'")
        if res.is_zero:
            return True
        if all(is_exact(c) for c in res.terms.values()):
            return False
        scale = max(1.0, A.max_abs() * eta.max_abs())
        return res.max_abs() <= self.eps_cmp * scale
