"""Independent implicit-polynomial oracle.

Converts blades to systems of implicit polynomials in the base coordinates by
formally substituting the embedding template, using its own sparse polynomial
arithmetic and its own contraction/wedge sign logic.  The only thing it shares
with the Clifford kernel is reading blade coefficients and the bilinear form —
deliberate redundancy, so the two computation paths can disagree loudly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .clifford import Multivector
from .errors import DimensionMismatch, HasLinearTerms, ZeroVector
from .model import QgaContext, QuadricMatrix
from .scalars import coeff_is_zero, is_exact
from .transforms import InversionResult

__all__ = [
    "ImplicitPolynomial",
    "PolynomialSystem",
    "blade_to_system",
    "grid_equivalence",
    "grid_points",
    "centered_inversion_reference",
    "sample_zero_set",
]

#: values below this (after normalization) count as vanishing on a grid
GRID_EPS_ZERO = 1e-7
#: values inside (GRID_EPS_ZERO, GRID_EPS_BAND) are too close to the zero
#: locus to classify reliably and are skipped
GRID_EPS_BAND = 1e-4


class ImplicitPolynomial:
    """Sparse polynomial in nvars coordinates: {exponent tuple: coefficient}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None, clean: bool = True):
        self.nvars = nvars
        terms = dict(terms or {})
        if clean:
            terms = {e: c for e, c in terms.items() if not coeff_is_zero(c)}
        self.terms = terms

    @classmethod
    def constant(cls, nvars: int, c) -> "ImplicitPolynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, k: int) -> "ImplicitPolynomial":
        """The coordinate x_k (1-based)."""
        exp = tuple(1 if i == k - 1 else 0 for i in range(nvars))
        return cls(nvars, {exp: 1})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "ImplicitPolynomial"):
        if self.nvars != other.nvars:
            raise DimensionMismatch("polynomials have different variable counts")

    def __add__(self, other):
        if not isinstance(other, ImplicitPolynomial):
            other = ImplicitPolynomial.constant(self.nvars, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return ImplicitPolynomial(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return ImplicitPolynomial(self.nvars, {e: -c for e, c in self.terms.items()},
                                  clean=False)

    def __sub__(self, other):
        return self + (-other if isinstance(other, ImplicitPolynomial)
                       else ImplicitPolynomial.constant(self.nvars, -other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ImplicitPolynomial):
            return ImplicitPolynomial(
                self.nvars, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        terms = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(a + b for a, b in zip(ea, eb))
                terms[e] = terms.get(e, 0) + ca * cb
        return ImplicitPolynomial(self.nvars, terms)

    def __rmul__(self, other):
        return ImplicitPolynomial(
            self.nvars, {e: other * c for e, c in self.terms.items()})

    def __truediv__(self, other):
        return ImplicitPolynomial(
            self.nvars, {e: c / other for e, c in self.terms.items()})

    def evaluate(self, point):
        coords = tuple(point)
        if len(coords) != self.nvars:
            raise DimensionMismatch("point dimension does not match polynomial")
        total = 0
        for exp, c in self.terms.items():
            v = c
            for x, p in zip(coords, exp):
                for _ in range(p):
                    v = v * x
            total = total + v
        return total

    def max_abs_coeff(self) -> float:
        return max((abs(float(c)) for c in self.terms.values()), default=0.0)

    def proportional_to(self, other: "ImplicitPolynomial", tol: float = 1e-9) -> bool:
        self._check(other)
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        pivot = max(self.terms, key=lambda e: abs(float(self.terms[e])))
        if pivot not in other.terms:
            return False
        a, b = self.terms[pivot], other.terms[pivot]
        lam = (Fraction(b) / Fraction(a) if is_exact(a) and is_exact(b)
               else float(b) / float(a))
        diff = other - lam * self
        if diff.is_zero:
            return True
        return diff.max_abs_coeff() <= tol * max(1.0, other.max_abs_coeff())

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            mono = "*".join(f"x{i + 1}^{p}" if p > 1 else f"x{i + 1}"
                            for i, p in enumerate(exp) if p)
            c = self.terms[exp]
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)


@dataclass(frozen=True)
class PolynomialSystem:
    """Labelled scalar equations: one per basis component of eta(x).A (or ^)."""

    components: tuple

    def __post_init__(self):
        if not self.components:
            raise ValueError("polynomial system must be nonempty")
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def nvars(self) -> int:
        return self.components[0][1].nvars

    def polynomials(self):
        return [p for _, p in self.components]

    def vanishes_at(self, point, tol: float = GRID_EPS_ZERO) -> bool:
        for _, p in self.components:
            v = p.evaluate(point)
            if is_exact(v):
                if v != 0:
                    return False
            elif abs(float(v)) > tol * max(1.0, p.max_abs_coeff()):
                return False
        return True


def _mask_indices(mask: int):
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def _component_label(mask: int) -> str:
    idx = _mask_indices(mask)
    if not idx:
        return "1"
    sep = "," if idx[-1] > 9 else ""
    return "e" + sep.join(str(i) for i in idx)


def _eta_template(n: int):
    """(generator index, polynomial) pairs of the embedding of (x1..xn)."""
    nv = n
    half = Fraction(1, 2)
    out = []
    for k in range(1, n + 1):
        xk = ImplicitPolynomial.variable(nv, k)
        out.append((3 * k - 2, ImplicitPolynomial.constant(nv, 1)))
        out.append((3 * k - 1, xk))
        out.append((3 * k, half * (xk * xk)))
    return out


def blade_to_system(A: Multivector, kind: str, ctx: QgaContext) -> PolynomialSystem:
    """Implicit polynomial system of a blade's IPNS or OPNS.

    A base point lies in the null space iff every component polynomial
    vanishes there.  Computed by formal substitution of the embedding
    template with the oracle's own contraction/wedge rules.
    """
    if A.is_zero:
        raise ZeroVector("cannot build a system from the zero blade")
    if kind not in ("ipns", "opns"):
        raise ValueError("kind must be 'ipns' or 'opns'")
    n = ctx.n
    out = {}
    for mask, coeff in A.terms.items():
        idx = _mask_indices(mask)
        for gen, poly in _eta_template(n):
            if kind == "ipns":
                # contraction: e_gen . (e_{j1} ^ ... ^ e_{jk})
                #   = sum_m (-1)^(m-1) b(gen, j_m) e_{j1} ^ ...omit j_m... ^ e_{jk}
                for m, j in enumerate(idx):
                    b = ctx.metric.bilinear(gen, j)
                    if not b:
                        continue
                    sign = -1 if m % 2 else 1
                    target = mask & ~(1 << (j - 1))
                    contrib = (sign * b) * poly * coeff
                    out[target] = out.get(target, ImplicitPolynomial(n)) + contrib
            else:
                # wedge: e_gen ^ (wedge of idx); zero if gen already present,
                # sign counts transpositions to sorted position
                if gen in idx:
                    continue
                sign = -1 if sum(1 for j in idx if j < gen) % 2 else 1
                target = mask | (1 << (gen - 1))
                contrib = sign * poly * coeff
                out[target] = out.get(target, ImplicitPolynomial(n)) + contrib
    comps = [( _component_label(m), p) for m, p in sorted(out.items()) if not p.is_zero]
    if not comps:
        comps = [("1", ImplicitPolynomial(n))]
    return PolynomialSystem(tuple(comps))


def grid_points(box, nvars: int, samples: int):
    """Row-major regular grid over the box; samples is the total count."""
    lo, hi = box
    per_axis = max(2, round(samples ** (1.0 / nvars)))
    step = (hi - lo) / (per_axis - 1)
    axes = [[lo + i * step for i in range(per_axis)] for _ in range(nvars)]
    return itertools.product(*axes)


def _classify_at(system: PolynomialSystem, point):
    """'zero', 'nonzero' or None (inside the unreliable band)."""
    worst = 0.0
    for _, p in system.components:
        scale = max(1.0, p.max_abs_coeff())
        v = abs(float(p.evaluate(point))) / scale
        worst = max(worst, v)
    if worst <= GRID_EPS_ZERO:
        return "zero"
    if worst >= GRID_EPS_BAND:
        return "nonzero"
    return None


def grid_equivalence(A: PolynomialSystem, B: PolynomialSystem, box,
                     samples: int) -> bool:
    """Do two systems cut out the same zero set on a sample grid?

    Points within the unreliable band around either zero locus are skipped,
    so systems equal up to scale compare equal.  For single-equation systems
    the sign patterns must also agree up to one global flip, which separates
    curves whose zero sets merely avoid the grid.
    """
    if A.nvars != B.nvars:
        raise DimensionMismatch("systems have different variable counts")
    single = len(A.components) == 1 == len(B.components)
    flip = None
    for pt in grid_points(box, A.nvars, samples):
        ca = _classify_at(A, pt)
        cb = _classify_at(B, pt)
        if ca is None or cb is None:
            continue
        if ca != cb:
            return False
        if single and ca == "nonzero":
            sa = float(A.components[0][1].evaluate(pt)) > 0
            sb = float(B.components[0][1].evaluate(pt)) > 0
            if flip is None:
                flip = sa == sb
            elif (sa == sb) != flip:
                return False
    return True


def centered_inversion_reference(M: QuadricMatrix, point) -> InversionResult:
    """Coordinate-level inversion map for a centered principal quadric:

    x'_i = -c0 x_i / (sum_j c_j x_j^2),

    with c_j the diagonal quadratic coefficients and c0 the constant.  The
    independent oracle for invert_point on centered quadrics.
    """
    n = M.n
    if any(M.linear(k) for k in range(1, n + 1)):
        raise HasLinearTerms("reference map requires a centered quadric")
    c0 = M.constant
    if not c0:
        raise ValueError("reference map requires a nonzero constant term")
    coords = tuple(point)
    if len(coords) != n:
        raise DimensionMismatch("point dimension does not match the quadric")
    den = sum(M.quad(k) * coords[k - 1] * coords[k - 1] for k in range(1, n + 1))
    center = (0,) * n
    if coeff_is_zero(den):
        return InversionResult("infinity", center=center)
    if is_exact(den):
        den = Fraction(den)
    return InversionResult(
        "point", point=tuple(-c0 * x / den for x in coords), center=center)


def sample_zero_set(system: PolynomialSystem, box, step: float):
    """Approximate zero-set points of a (single-polynomial) system.

    Scans a regular grid in row-major order; along each axis-parallel edge a
    sign change of the first polynomial is refined by bisection.  Only points
    where every system component vanishes (to grid tolerance) are kept.
    """
    poly = system.components[0][1]
    n = poly.nvars
    lo, hi = box
    count = max(2, int(round((hi - lo) / step)) + 1)
    axes = [lo + i * step for i in range(count)]
    points = []

    def refine(base, axis, a, b):
        def f(t):
            coords = list(base)
            coords[axis] = t
            return float(poly.evaluate(coords))
        fa, fb = f(a), f(b)
        if fa == 0.0:
            return a
        if fb == 0.0:
            return b
        if (fa > 0) == (fb > 0):
            return None
        for _ in range(60):
            m = (a + b) / 2
            fm = f(m)
            if fm == 0.0:
                break
            if (fm > 0) == (fa > 0):
                a, fa = m, fm
            else:
                b = m
        return (a + b) / 2

    for base in itertools.product(*[axes] * n):
        for axis in range(n):
            t = base[axis]
            if t + step > hi + 1e-12:
                continue
            root = refine(base, axis, t, t + step)
            if root is None:
                continue
            pt = list(base)
            pt[axis] = root
            if all(abs(float(p.evaluate(pt))) <=
                   GRID_EPS_BAND * max(1.0, p.max_abs_coeff())
                   for _, p in system.components):
                points.append(tuple(pt))
    return points
