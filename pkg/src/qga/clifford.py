"""Signature-generic Clifford algebra arithmetic over a symmetric bilinear form.

The bilinear form may be non-diagonal and degenerate; the QGA metric pairs
each Euclidean generator with a null pair (b(e1, e3) = -1 etc.), so nothing
here assumes an orthogonal basis.

Representation.  A multivector is a sparse map ``mask -> coefficient`` where
bit ``i-1`` of the mask marks generator ``e_i``.  Coefficients are read with
respect to the *exterior* (wedge) basis ``e_{i1} ^ ... ^ e_{ik}``, which keeps
grade projection a popcount, makes conjugation and the main involution pure
per-grade signs, and makes the inner product of two 1-blades equal the
bilinear form even when the form is not diagonal.  The geometric product of
two wedge basis blades is expanded with the contraction identity
``v B = v _| B + v ^ B`` and memoised per metric (the Cayley table).

The classical normal-ordering rewrite ``e_i e_j = 2 B_ij - e_j e_i`` is kept
as an independent engine (`normal_ordered_product`); its output is expressed
in the *monomial* basis ``e_{i1} e_{i2} ... e_{ik}`` and is related to the
wedge representation by `monomial_to_wedge`.
"""

from __future__ import annotations

import threading
from fractions import Fraction

import sympy

from .errors import GradeOutOfRange, MetricMismatch, NotScalar, NullElement
from .scalars import DEFAULT_EPS_CMP, DEFAULT_EPS_ZERO, coeff_is_zero, is_exact

__all__ = [
    "Metric",
    "Multivector",
    "normal_ordered_product",
    "monomial_to_wedge",
]

MAX_DIM = 64


def _popcount(mask: int) -> int:
    return mask.bit_count()


class Metric:
    """Generator count plus a symmetric bilinear form matrix.

    The form entries should be exact (ints or Fractions) whenever exact-mode
    arithmetic is wanted downstream; the Cayley table inherits their type.
    Product tables are built lazily under a lock, so a single Metric can be
    shared freely between threads.
    """

    __slots__ = ("dim", "_B", "eps_zero", "_gp_cache", "_no_cache", "_lock", "_signature")

    def __init__(self, form, eps_zero: float = DEFAULT_EPS_ZERO):
        rows = tuple(tuple(row) for row in form)
        dim = len(rows)
        if dim < 1:
            raise ValueError("metric needs at least one generator")
        if dim > MAX_DIM:
            raise ValueError(f"bitmask representation caps dim at {MAX_DIM}")
        if any(len(row) != dim for row in rows):
            raise ValueError("bilinear form matrix must be square")
        for i in range(dim):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("bilinear form matrix must be symmetric")
        if eps_zero <= 0:
            raise ValueError("eps_zero must be positive")
        self.dim = dim
        self._B = rows
        self.eps_zero = eps_zero
        self._gp_cache: dict[tuple[int, int], dict[int, object]] = {}
        self._no_cache: dict[tuple[int, ...], dict[int, object]] = {}
        self._lock = threading.RLock()
        self._signature = None

    def bilinear(self, i: int, j: int):
        """Form value b(e_i, e_j) for 1-based generator indices."""
        return self._B[i - 1][j - 1]

    @property
    def form(self):
        return self._B

    def signature(self) -> tuple[int, int, int]:
        """(p, q, r): counts of eigenvalues of B that are +, -, zero."""
        if self._signature is None:
            eigs = sympy.Matrix(self.dim, self.dim, lambda i, j: sympy.nsimplify(self._B[i][j])).eigenvals()
            p = q = r = 0
            for val, mult in eigs.items():
                v = complex(val).real
                if abs(v) < 1e-9:
                    r += mult
                elif v > 0:
                    p += mult
                else:
                    q += mult
            self._signature = (p, q, r)
        return self._signature

    def compatible(self, other: "Metric") -> bool:
        return self is other or (self.dim == other.dim and self._B == other._B)

    # -- product tables ----------------------------------------------------

    def _vector_gp(self, i: int, t: int) -> dict[int, object]:
        """Product e_i * W_t for a wedge basis blade, via v B = v _| B + v ^ B."""
        out: dict[int, object] = {}
        row = self._B[i - 1]
        sign = 1
        for j in range(self.dim):
            bit = 1 << j
            if t & bit:
                bij = row[j]
                if bij:
                    m = t ^ bit
                    out[m] = out.get(m, 0) + sign * bij
                sign = -sign
        ibit = 1 << (i - 1)
        if not t & ibit:
            below = _popcount(t & (ibit - 1))
            m = t | ibit
            out[m] = out.get(m, 0) + (-1) ** below
        return {m: c for m, c in out.items() if c != 0}

    def gp_masks(self, s: int, t: int) -> dict[int, object]:
        """Cayley table entry: geometric product of wedge basis blades W_s W_t."""
        key = (s, t)
        cached = self._gp_cache.get(key)
        if cached is not None:
            return cached
        with self._lock:
            cached = self._gp_cache.get(key)
            if cached is not None:
                return cached
            if s == 0:
                result = {t: 1}
            else:
                low = s & -s
                i = low.bit_length()  # 1-based generator index
                s2 = s ^ low
                acc: dict[int, object] = {}
                # e_i * (W_s2 * W_t)
                for m2, c2 in self.gp_masks(s2, t).items():
                    for m3, c3 in self._vector_gp(i, m2).items():
                        acc[m3] = acc.get(m3, 0) + c2 * c3
                # minus (e_i _| W_s2) * W_t   (W_s = e_i W_s2 - e_i _| W_s2)
                row = self._B[i - 1]
                sign = 1
                for j in range(self.dim):
                    bit = 1 << j
                    if s2 & bit:
                        bij = row[j]
                        if bij:
                            for m3, c3 in self.gp_masks(s2 ^ bit, t).items():
                                acc[m3] = acc.get(m3, 0) - sign * bij * c3
                        sign = -sign
                result = {m: c for m, c in acc.items() if c != 0}
            self._gp_cache[key] = result
            return result

    # -- constructors ------------------------------------------------------

    def scalar(self, c) -> "Multivector":
        return Multivector(self, {0: c})

    def zero(self) -> "Multivector":
        return Multivector(self, {})

    def e(self, *indices: int) -> "Multivector":
        """Wedge basis blade e_{i1} ^ ... ^ e_{ik} for 1-based indices."""
        return self.blade(indices)

    def blade(self, indices, coeff=1) -> "Multivector":
        idx = list(indices)
        if len(set(idx)) != len(idx):
            return self.zero()
        sign = 1
        # count transpositions to sort
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                if idx[a] > idx[b]:
                    sign = -sign
        mask = 0
        for i in idx:
            if not 1 <= i <= self.dim:
                raise ValueError(f"generator index {i} out of range")
            mask |= 1 << (i - 1)
        return Multivector(self, {mask: sign * coeff})

    def vector(self, coords) -> "Multivector":
        """Grade-1 element with the given generator coefficients (length dim)."""
        terms = {1 << i: c for i, c in enumerate(coords)}
        return Multivector(self, terms)


class Multivector:
    """Immutable sparse multivector over a shared Metric.

    Supports ``*`` (geometric product), ``^`` (outer), ``|`` (inner), ``+``,
    ``-`` and scalar multiplication/division.  Scalars on either side of
    ``+``/``*`` are lifted automatically.
    """

    __slots__ = ("metric", "terms")

    def __init__(self, metric: Metric, terms: dict[int, object], *, clean: bool = True):
        if clean:
            eps = metric.eps_zero
            terms = {m: c for m, c in terms.items() if not coeff_is_zero(c, eps)}
        self.metric = metric
        self.terms = terms

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def grades(self) -> set[int]:
        return {_popcount(m) for m in self.terms}

    def grade(self) -> int:
        """Grade of a homogeneous element (0 for zero)."""
        gs = self.grades()
        if not gs:
            return 0
        if len(gs) > 1:
            raise GradeOutOfRange(f"element is not homogeneous: grades {sorted(gs)}")
        return gs.pop()

    def coeff(self, indices):
        """Coefficient of the wedge basis blade with the given 1-based indices.

        Accepts an int mask, a single index, or an iterable of indices
        (assumed increasing).
        """
        if isinstance(indices, int):
            mask = indices if indices == 0 else None
            if mask is None:
                mask = 1 << (indices - 1)
        else:
            mask = 0
            for i in indices:
                mask |= 1 << (i - 1)
        return self.terms.get(mask, 0)

    def scalar_part(self):
        return self.terms.get(0, 0)

    def max_abs(self) -> float:
        return max((abs(float(c)) for c in self.terms.values()), default=0.0)

    def grade_project(self, k: int) -> "Multivector":
        """Terms of exterior grade k (popcount of the wedge-basis mask)."""
        return Multivector(
            self.metric,
            {m: c for m, c in self.terms.items() if _popcount(m) == k},
            clean=False,
        )

    def grade_parts(self):
        parts: dict[int, dict[int, object]] = {}
        for m, c in self.terms.items():
            parts.setdefault(_popcount(m), {})[m] = c
        return {k: Multivector(self.metric, t, clean=False) for k, t in parts.items()}

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Multivector):
            if not self.metric.compatible(other.metric):
                raise MetricMismatch("operands use different metrics")
            return other
        return Multivector(self.metric, {0: other})

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Multivector(self.metric, terms)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Multivector(self.metric, {m: -c for m, c in self.terms.items()}, clean=False)

    def __mul__(self, other):
        if not isinstance(other, Multivector):
            return Multivector(self.metric, {m: c * other for m, c in self.terms.items()})
        if not self.metric.compatible(other.metric):
            raise MetricMismatch("operands use different metrics")
        gp = self.metric.gp_masks
        acc: dict[int, object] = {}
        for s, a in self.terms.items():
            for t, b in other.terms.items():
                ab = a * b
                for m, c in gp(s, t).items():
                    acc[m] = acc.get(m, 0) + ab * c
        return Multivector(self.metric, acc)

    def __rmul__(self, other):
        # scalar * multivector only; multivector * multivector hits __mul__
        return Multivector(self.metric, {m: other * c for m, c in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, Multivector):
            return self * other.inverse()
        return Multivector(self.metric, {m: c / other for m, c in self.terms.items()})

    def __xor__(self, other):
        """Outer product: grade-(k+l) part of the geometric product."""
        other = self._coerce(other)
        acc = self.metric.zero()
        for k, ak in self.grade_parts().items():
            for l, bl in other.grade_parts().items():
                acc = acc + (ak * bl).grade_project(k + l)
        return acc

    def __or__(self, other):
        """Inner product: grade-|k-l| part of the geometric product."""
        other = self._coerce(other)
        acc = self.metric.zero()
        for k, ak in self.grade_parts().items():
            for l, bl in other.grade_parts().items():
                acc = acc + (ak * bl).grade_project(abs(k - l))
        return acc

    # -- involutions and norms ---------------------------------------------

    def conjugate(self) -> "Multivector":
        """Conjugation: anti-automorphism with e_i* = -e_i.

        On a wedge basis blade of grade k this is the sign (-1)^{k(k+1)/2}.
        """
        out = {}
        for m, c in self.terms.items():
            k = _popcount(m)
            out[m] = -c if k % 4 in (1, 2) else c
        return Multivector(self.metric, out, clean=False)

    def involute(self) -> "Multivector":
        """Main involution: (-1)^k on each grade-k part."""
        out = {}
        for m, c in self.terms.items():
            out[m] = -c if _popcount(m) % 2 else c
        return Multivector(self.metric, out, clean=False)

    def norm(self):
        """N(v) = v v*, a scalar for 1-blades and versors.

        Raises NotScalar when v v* has a non-scalar part above tolerance.
        """
        vv = self * self.conjugate()
        scalar = vv.scalar_part()
        rest = Multivector(self.metric, {m: c for m, c in vv.terms.items() if m != 0}, clean=False)
        if not rest.is_zero:
            scale = max(1.0, vv.max_abs())
            if any(is_exact(c) or isinstance(c, sympy.Expr) for c in rest.terms.values()) \
                    or rest.max_abs() > DEFAULT_EPS_CMP * scale:
                raise NotScalar("v v* is not a scalar; input is not a versor")
        return scalar

    def inverse(self) -> "Multivector":
        """Versor inverse v* / N(v); raises NullElement when N(v) = 0."""
        n = self.norm()
        if coeff_is_zero(n, self.metric.eps_zero):
            raise NullElement("element has zero norm and is not invertible")
        if is_exact(n):
            n = Fraction(n)
        return self.conjugate() / n

    # -- comparisons -------------------------------------------------------

    def equals(self, other, tol: float = DEFAULT_EPS_CMP) -> bool:
        """Coefficient-wise equality; exact when both sides carry exact scalars."""
        other = self._coerce(other)
        masks = set(self.terms) | set(other.terms)
        scale = max(1.0, self.max_abs(), other.max_abs())
        for m in masks:
            a = self.terms.get(m, 0)
            b = other.terms.get(m, 0)
            if is_exact(a) and is_exact(b):
                if a != b:
                    return False
            elif isinstance(a, sympy.Expr) or isinstance(b, sympy.Expr):
                if sympy.simplify(a - b) != 0:
                    return False
            elif abs(float(a) - float(b)) > tol * scale:
                return False
        return True

    def proportional_to(self, other, tol: float = DEFAULT_EPS_CMP) -> bool:
        """Homogeneous comparison: equal up to a nonzero scalar factor.

        The factor is fixed from the maximum-magnitude coefficient of self.
        """
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        pivot = max(self.terms, key=lambda m: abs(float(self.terms[m])))
        if pivot not in other.terms:
            return False
        lam = other.terms[pivot] / self.terms[pivot]
        if is_exact(self.terms[pivot]) and is_exact(other.terms[pivot]):
            lam = Fraction(other.terms[pivot]) / Fraction(self.terms[pivot])
        return (lam * self).equals(other, tol)

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.metric.compatible(other.metric) and self.equals(other)
        if isinstance(other, (int, float, Fraction)):
            return self.equals(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.metric.dim, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=lambda m: (_popcount(m), m)):
            c = self.terms[m]
            if m == 0:
                bits.append(f"{c}")
            else:
                name = "e" + "".join(str(i + 1) for i in range(self.metric.dim) if m >> i & 1)
                bits.append(f"{c}*{name}")
        return " + ".join(bits)


# -- monomial (normal-ordering) engine ------------------------------------


def _normal_order(seq: tuple[int, ...], metric: Metric) -> dict[int, object]:
    cache = metric._no_cache
    cached = cache.get(seq)
    if cached is not None:
        return cached
    result: dict[int, object] = {}
    for m in range(len(seq) - 1):
        i, j = seq[m], seq[m + 1]
        if i < j:
            continue
        rest = seq[:m] + seq[m + 2:]
        if i == j:
            bii = metric.bilinear(i, i)
            if bii:
                for mk, c in _normal_order(rest, metric).items():
                    result[mk] = result.get(mk, 0) + bii * c
        else:
            bij = metric.bilinear(i, j)
            if bij:
                for mk, c in _normal_order(rest, metric).items():
                    result[mk] = result.get(mk, 0) + 2 * bij * c
            swapped = seq[:m] + (j, i) + seq[m + 2:]
            for mk, c in _normal_order(swapped, metric).items():
                result[mk] = result.get(mk, 0) - c
        break
    else:
        mask = 0
        for i in seq:
            mask |= 1 << (i - 1)
        result[mask] = 1
    result = {m: c for m, c in result.items() if c != 0}
    with metric._lock:
        cache[seq] = result
    return result


def normal_ordered_product(a_indices, b_indices, metric: Metric) -> dict[int, object]:
    """Geometric product of two canonically ordered monomials.

    Rewrites with e_i e_j = 2 B_ij - e_j e_i (i > j) and e_i e_i = B_ii until
    every surviving term is in strictly increasing index order.  The result
    maps monomial masks to coefficients in the *monomial* basis; convert with
    `monomial_to_wedge` before mixing with Multivector values.
    """
    seq = tuple(a_indices) + tuple(b_indices)
    for i in seq:
        if not 1 <= i <= metric.dim:
            raise ValueError(f"generator index {i} out of range")
    return _normal_order(seq, metric)


def monomial_to_wedge(mask: int, metric: Metric) -> Multivector:
    """Expand the ordered monomial e_{i1} ... e_{ik} in the wedge basis."""
    out = metric.scalar(1)
    for i in range(metric.dim):
        if mask >> i & 1:
            out = out * metric.e(i + 1)
    return out
