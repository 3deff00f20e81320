import random
from fractions import Fraction

import pytest

from qga.model import QgaContext


@pytest.fixture(scope="session")
def ctx2():
    return QgaContext(2)


@pytest.fixture(scope="session")
def ctx3():
    return QgaContext(3)


@pytest.fixture(scope="session")
def circle(ctx2):
    """Unit circle vector from the four cardinal points (exact)."""
    e = ctx2.metric.e
    return 4 * e(1) - e(3) + 4 * e(4) - e(6)


@pytest.fixture(scope="session")
def ellipsoid(ctx3):
    """Paper ellipsoid 100/81 x^2 + 16/9 y^2 + 16/25 z^2 = 1 as printed."""
    e = ctx3.metric.e
    F = Fraction
    return (F(25, 9) * e(1) - F(3, 8) * e(3) + 4 * e(4) - F(3, 8) * e(6)
            + F(36, 25) * e(7) - F(3, 8) * e(9))


def rand_fraction(rng: random.Random, lo: int = -9, hi: int = 9) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 9))


def rand_nonzero_fraction(rng: random.Random) -> Fraction:
    while True:
        f = rand_fraction(rng)
        if f:
            return f


def rand_point(rng: random.Random, n: int):
    return tuple(rand_fraction(rng) for _ in range(n))


def rand_vector(rng: random.Random, ctx: QgaContext):
    m = ctx.metric
    v = m.zero()
    for i in range(1, m.dim + 1):
        v = v + rand_fraction(rng) * m.e(i)
    return v


def rand_multivector(rng: random.Random, ctx: QgaContext, nterms: int = 6):
    m = ctx.metric
    mv = m.zero()
    for _ in range(nterms):
        mask = rng.randrange(1 << m.dim)
        indices = [i + 1 for i in range(m.dim) if mask >> i & 1]
        mv = mv + m.blade(indices, rand_fraction(rng))
    return mv


def rand_quadric(rng: random.Random, ctx: QgaContext):
    """Random non-null principal-position quadric vector (exact)."""
    m = ctx.metric
    while True:
        v = m.zero()
        for k in range(1, ctx.n + 1):
            v = v + rand_fraction(rng) * m.e(3 * k - 2) \
                + rand_fraction(rng) * m.e(3 * k - 1) \
                + rand_fraction(rng) * m.e(3 * k)
        if not v.is_zero and (v * v).scalar_part() != 0:
            return v
