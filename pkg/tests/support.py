"""Seeded random generators shared across the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from freeaut import (
    Diag,
    Elem,
    FreeAlgebra,
    KzEndo,
    NCPoly,
    PolyMatrix,
    PolyRing,
    RationalField,
    Swap,
    Transcript,
    matrix_to_endo,
)


def rand_scalar(field, rng: random.Random, nonzero: bool = False):
    while True:
        if isinstance(field, RationalField):
            c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        else:
            c = field(rng.randrange(field.characteristic))
        if c or not nonzero:
            return c


def rand_poly(ring: PolyRing, rng: random.Random, deg: int = 3, terms: int = 3, nonzero: bool = False):
    while True:
        p = ring.zero
        for _ in range(rng.randint(0, terms)):
            mono = tuple(rng.randint(0, deg) for _ in range(ring.nvars))
            p = p + ring.term(rand_scalar(ring.field, rng), mono)
        if p or not nonzero:
            return p


def rand_word(alg: FreeAlgebra, rng: random.Random, maxlen: int = 5) -> tuple[int, ...]:
    return tuple(rng.randint(0, alg.n) for _ in range(rng.randint(0, maxlen)))


def rand_nc(alg: FreeAlgebra, rng: random.Random, terms: int = 4) -> NCPoly:
    t: dict = {}
    for _ in range(rng.randint(0, terms)):
        w = rand_word(alg, rng)
        c = rand_scalar(alg.field, rng)
        if c:
            t[w] = t.get(w, 0) + c
    return NCPoly(alg, t)


def rand_linear_endo(alg: FreeAlgebra, rng: random.Random, deg: int = 2, terms: int = 2) -> KzEndo:
    """An x-linear endomorphism with random pair-ring Jacobian entries."""
    ring = alg.pair_ring()
    n = alg.n
    entries = [
        [rand_poly(ring, rng, deg=deg, terms=terms) for _ in range(n)] for _ in range(n)
    ]
    return matrix_to_endo(PolyMatrix(ring, entries), alg)


def rand_transcript(
    ring: PolyRing,
    rng: random.Random,
    n: int = 2,
    max_factors: int = 6,
    deg: int = 3,
) -> Transcript:
    """A random factor list; its product is invertible by construction."""
    field = ring.field
    factors = []
    for _ in range(rng.randint(0, max_factors)):
        kind = rng.random()
        if kind < 0.7:
            i, j = rng.sample(range(1, n + 1), 2)
            p = rand_poly(ring, rng, deg=deg, terms=2)
            if p.is_zero():
                continue
            factors.append(Elem(i, j, p))
        elif kind < 0.85:
            units = tuple(rand_scalar(field, rng, nonzero=True) for _ in range(n))
            factors.append(Diag(units))
        else:
            i, j = rng.sample(range(1, n + 1), 2)
            factors.append(Swap(i, j))
    return Transcript(ring, n, tuple(factors))


def rand_automorphism(alg: FreeAlgebra, rng: random.Random, max_factors: int = 6, deg: int = 2) -> KzEndo:
    """A random x-linear automorphism built from an invertible transcript."""
    t = rand_transcript(alg.pair_ring(), rng, n=alg.n, max_factors=max_factors, deg=deg)
    return matrix_to_endo(t.product(), alg)
