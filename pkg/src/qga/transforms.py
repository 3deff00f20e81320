"""Pin-group sandwich actions and inversions in conics/quadrics.

A grade-1 element a with N(a) != 0 acts on blades by the twisted sandwich
alpha(a) X a^-1 (or the conjugate variant alpha(a) X a*, which differs only
by the scalar N(a)).  Acting on a point-pair blade and re-extracting the
finite point realises inversion in the quadric represented by a; the
extraction is done once symbolically per quadric and the resulting rational
map is cached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .clifford import Multivector
from .errors import (
    NotGradeOne,
    NotInSubalgebra,
    NullVersor,
)
from .model import QgaContext
from .scalars import coeff_is_zero, is_exact

__all__ = [
    "sandwich",
    "self_action_check",
    "pin_membership",
    "InversionResult",
    "invert_point",
    "invert_blade",
    "apply_versor_to_point",
    "line_through_origin",
    "rotor_from_angles",
    "rotor_from_lines",
    "translator_from_lines",
    "DualQuaternion",
    "se2_subalgebra_basis",
    "versor_to_dual_quaternion",
    "dual_quaternion_to_versor",
]


# -- sandwich actions -------------------------------------------------------

def sandwich(g: Multivector, X: Multivector, variant: str = "conjugate") -> Multivector:
    """Twisted adjoint action of a versor on a multivector.

    ``conjugate`` uses alpha(g) X g* (no division, safe for symbolic
    coefficients), ``inverse`` uses alpha(g) X g^-1; on non-null versors the
    two differ by the scalar factor N(g).
    """
    if variant == "conjugate":
        return g.involute() * X * g.conjugate()
    if variant == "inverse":
        return g.involute() * X * g.inverse()
    raise ValueError("variant must be 'conjugate' or 'inverse'")


def self_action_check(v: Multivector, tol: float = 1e-9) -> bool:
    """A non-null grade-1 element fixes itself: alpha(v) v v^-1 = -v."""
    if v.grades() != {1}:
        raise NotGradeOne("self-action check requires a grade-1 element")
    return sandwich(v, v, variant="inverse").equals(-1 * v, tol=tol)


def pin_membership(g: Multivector, tol: float = 1e-9) -> bool:
    """Versor test: parity-homogeneous, invertible, grade-1-preserving."""
    if g.is_zero:
        return False
    parities = {k % 2 for k in g.grades()}
    if len(parities) != 1:
        return False
    try:
        n = g.norm()
    except Exception:
        return False
    if coeff_is_zero(n):
        return False
    gi = g.inverse()
    for i in range(1, g.metric.dim + 1):
        img = g.involute() * g.metric.e(i) * gi
        stray = img - img.grade_project(1)
        if not stray.is_zero and stray.max_abs() > tol * max(1.0, img.max_abs()):
            return False
    return True


# -- lines, rotors, translators (n = 2) -------------------------------------

def line_through_origin(ctx: QgaContext, phi) -> Multivector:
    """Unit line through the origin at angle phi: sin(phi) e2 + cos(phi) e5.

    The orientation is chosen so the rotor of two such lines is
    cos(phi - psi) + sin(phi - psi) e25.
    """
    _require_2d(ctx)
    e = ctx.metric.e
    return _sin(phi) * e(2) + _cos(phi) * e(5)


def rotor_from_angles(ctx: QgaContext, phi, psi) -> Multivector:
    """Rotor about the origin by 2(phi - psi) as a product of two lines."""
    return rotor_from_lines(line_through_origin(ctx, phi), line_through_origin(ctx, psi))


def rotor_from_lines(l1: Multivector, l2: Multivector) -> Multivector:
    """Geometric product of two grade-1 line vectors."""
    if l1.grades() != {1} or l2.grades() != {1}:
        raise NotGradeOne("rotor factors must be grade-1 lines")
    return l1 * l2


def parallel_line(ctx: QgaContext, phi, t) -> Multivector:
    """Line with normal angle phi at signed offset t/2 from the origin:
    2 sin(phi) e2 - t e3 - 2 cos(phi) e5 - t e6."""
    _require_2d(ctx)
    e = ctx.metric.e
    return 2 * _sin(phi) * e(2) - t * e(3) - 2 * _cos(phi) * e(5) - t * e(6)


def translator_from_lines(ctx: QgaContext, phi, t1, t2) -> Multivector:
    """Translator from two parallel lines, normalized to scalar part 2:

    2 + (t1 - t2) sin(phi) (e23 + e26) + (t1 - t2) cos(phi) (e35 - e56),
    translating by 2(t2 - t1) along the common normal direction.
    """
    prod = parallel_line(ctx, phi, t1) * parallel_line(ctx, phi, t2)
    return prod / 2


# -- SE(2) dual-quaternion bijection ----------------------------------------

@dataclass(frozen=True)
class DualQuaternion:
    """w + x i + eps (y j + z k) with i^2 = -1, eps^2 = 0, i j = k."""

    w: object
    x: object
    y: object
    z: object

    def __mul__(self, other: "DualQuaternion") -> "DualQuaternion":
        w1, x1, y1, z1 = self.w, self.x, self.y, self.z
        w2, x2, y2, z2 = other.w, other.x, other.y, other.z
        return DualQuaternion(
            w1 * w2 - x1 * x2,
            w1 * x2 + x1 * w2,
            w1 * y2 + y1 * w2 - x1 * z2 + z1 * x2,
            w1 * z2 + z1 * w2 + x1 * y2 - y1 * x2,
        )


def se2_subalgebra_basis(ctx: QgaContext):
    """(1, e25, e23 + e26, e35 - e56): the even subalgebra carrying SE(2)."""
    _require_2d(ctx)
    m = ctx.metric
    e = m.e
    return (
        m.scalar(1),
        e(2) ^ e(5),
        (e(2) ^ e(3)) + (e(2) ^ e(6)),
        (e(3) ^ e(5)) - (e(5) ^ e(6)),
    )


def versor_to_dual_quaternion(g: Multivector) -> DualQuaternion:
    """Coordinates of an SE(2) versor in the basis (1, i, eps j, eps k)."""
    w = g.coeff(0)
    x = g.coeff((2, 5))
    y = g.coeff((2, 3))
    z = g.coeff((3, 5))
    rebuilt = {
        0: w, 0b10010: x,
        0b110: y, 0b100010: y,
        0b10100: z, 0b110000: -1 * z,
    }
    residue = g - Multivector(g.metric, rebuilt)
    if not residue.is_zero:
        raise NotInSubalgebra(
            "element is not in the span of {1, e25, e23 + e26, e35 - e56}")
    return DualQuaternion(w, x, y, z)


def dual_quaternion_to_versor(ctx: QgaContext, dq: DualQuaternion) -> Multivector:
    one, i, j, k = se2_subalgebra_basis(ctx)
    return dq.w * one + dq.x * i + dq.y * j + dq.z * k


# -- applying versors to base points ----------------------------------------

def apply_versor_to_point(ctx: QgaContext, g: Multivector, point,
                          variant: str = "conjugate"):
    """Push a base point through a versor via its point-pair blade."""
    blade = ctx.point_pair_blade(point)
    return ctx.pair_blade_coords(sandwich(g, blade, variant))


# -- inversion in a quadric -------------------------------------------------

@dataclass(frozen=True)
class InversionResult:
    """Outcome of inverting a point in a quadric.

    ``kind`` is ``"point"`` (with ``point`` set) or ``"infinity"`` (the input
    maps to the ideal point).  ``center`` is the image of the ideal point
    under the same inversion, when it is a finite point.
    """

    kind: str
    point: tuple = None
    center: tuple = None


class _InversionMap:
    """Symbolic rational map of inversion in one fixed quadric."""

    def __init__(self, ctx: QgaContext, quadric: Multivector, variant: str):
        self.ctx = ctx
        probes = sympy.symbols(f"u1:{ctx.n + 1}", real=True)
        blade = ctx.point_pair_blade(probes)
        img = sandwich(_to_sympy_vector(quadric), blade, variant)
        xs = sympy.symbols(f"x1:{ctx.n + 1}", real=True)
        eta = ctx.embed(xs)
        system = [p for p in (sympy.expand(c) for c in (eta | img).terms.values())
                  if p != 0]
        sols = sympy.solve(system, list(xs), dict=True)
        probe_set = set(probes)
        moving, fixed = [], []
        for s in sols:
            exprs = [sympy.together(s.get(x, x)) for x in xs]
            if any(expr.free_symbols & probe_set for expr in exprs):
                moving.append(exprs)
            else:
                fixed.append(exprs)
        if len(moving) != 1:
            raise ValueError("inversion map is not uniquely determined symbolically")
        self.probes = probes
        self.exprs = moving[0]
        self.numers = [sympy.fraction(ex)[0] for ex in self.exprs]
        self.denoms = [sympy.fraction(ex)[1] for ex in self.exprs]
        self.center = tuple(fixed[0]) if len(fixed) == 1 else None
        self._lam = None

    def center_result(self):
        if self.center is None:
            return None
        return tuple(_from_sympy(c) for c in self.center)

    def apply(self, point):
        coords = tuple(point)
        exact = all(is_exact(c) for c in coords)
        if exact:
            subs = {u: sympy.Rational(Fraction(c)) for u, c in zip(self.probes, coords)}
            out = []
            for num, den in zip(self.numers, self.denoms):
                d = den.subs(subs)
                if d == 0:
                    return InversionResult("infinity", center=self.center_result())
                out.append(_from_sympy(num.subs(subs) / d))
            return InversionResult("point", point=tuple(out), center=self.center_result())
        if self._lam is None:
            self._lam = sympy.lambdify(
                list(self.probes), [list(self.numers), list(self.denoms)], "math")
        nums, dens = self._lam(*[float(c) for c in coords])
        scale = max(1.0, max(abs(float(c)) for c in coords) ** 2)
        if any(abs(d) <= self.ctx.eps_cmp * scale for d in dens):
            return InversionResult("infinity", center=self.center_result())
        return InversionResult(
            "point", point=tuple(n / d for n, d in zip(nums, dens)),
            center=self.center_result())


_INVERSION_CACHE = {}


def _quadric_key(ctx: QgaContext, quadric: Multivector, variant: str):
    items = tuple(sorted((mask, _to_sympy(c)) for mask, c in quadric.terms.items()))
    return (id(ctx), variant, items)


def invert_point(ctx: QgaContext, quadric: Multivector, point,
                 variant: str = "conjugate") -> InversionResult:
    """Invert a base point in the quadric represented by a grade-1 element.

    The ideal point maps to the quadric's center when one exists; points on
    the center set map to infinity.
    """
    if quadric.grades() != {1}:
        raise NotGradeOne("inversion requires a grade-1 quadric vector")
    n = quadric.norm()
    if coeff_is_zero(n):
        raise NullVersor("cannot invert in a null quadric vector")
    key = _quadric_key(ctx, quadric, variant)
    inv = _INVERSION_CACHE.get(key)
    if inv is None:
        inv = _InversionMap(ctx, quadric, variant)
        _INVERSION_CACHE[key] = inv
    return inv.apply(point)


def invert_blade(quadric: Multivector, X: Multivector,
                 variant: str = "conjugate") -> Multivector:
    """Image of a blade under inversion in a quadric (plain sandwich)."""
    if quadric.grades() != {1}:
        raise NotGradeOne("inversion requires a grade-1 quadric vector")
    n = quadric.norm()
    if coeff_is_zero(n):
        raise NullVersor("cannot invert in a null quadric vector")
    return sandwich(quadric, X, variant)


# -- helpers ----------------------------------------------------------------

def _require_2d(ctx: QgaContext):
    if ctx.n != 2:
        raise ValueError("this construction is defined for base dimension 2")


def _sin(phi):
    return sympy.sin(phi) if isinstance(phi, sympy.Expr) else math.sin(phi)


def _cos(phi):
    return sympy.cos(phi) if isinstance(phi, sympy.Expr) else math.cos(phi)


def _to_sympy(c):
    if is_exact(c):
        return sympy.Rational(Fraction(c))
    if isinstance(c, float):
        # floats are dyadic rationals; the conversion is exact
        return sympy.Rational(Fraction(c))
    return sympy.sympify(c)


def _to_sympy_vector(v: Multivector) -> Multivector:
    return Multivector(v.metric, {m: _to_sympy(c) for m, c in v.terms.items()})


def _from_sympy(expr):
    expr = sympy.nsimplify(expr, rational=True)
    if expr.is_Rational:
        return Fraction(int(expr.p), int(expr.q))
    return float(expr)
