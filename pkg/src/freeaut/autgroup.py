"""Automorphism-level decisions for linear endomorphisms fixing z:
invertibility, tameness with certificates, inversion, the induced map on
commuting variables, stabilization into three x-generators, and named
example endomorphisms.

Tame certificates are lists of automorphism factors; composing them
left-to-right (compose(f1, compose(f2, ...))) reproduces the certified map,
mirroring the left-to-right product convention of matrix transcripts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .commpoly import CommPoly, MonomialOrder, PolyRing
from .errors import ContextError, DomainError, NotInvertibleError
from .freealg import FreeAlgebra, KzEndo, NCPoly, default_xnames
from .jacobian import abelianize_endo, jacobian_linear
from .matgroup import (
    Diag,
    Elem,
    PolyMatrix,
    Swap,
    Tame,
    Transcript,
    _eliminate,
    _unit_inverse,
    cohn_matrix,
    ge2_decide,
    gl2_univariate_decompose,
    is_gl,
    stabilize3,
    verify_transcript,
)
from .scalars import QQ, FpElement, Scalar


def _z_poly_to_nc(p: CommPoly, algebra: FreeAlgebra) -> NCPoly:
    if p.ring.nvars != 1:
        raise ContextError("expected a univariate z-polynomial")
    z = algebra.z_letter
    return NCPoly(algebra, {(z,) * m[0]: c for m, c in p._terms.items()})


@dataclass(frozen=True)
class ElemAuto:
    """x_j goes to x_j + a(z) x_i b(z); all other generators are fixed.

    Indices are 1-based and distinct; a and b are univariate polynomials
    in z.
    """

    i: int
    j: int
    a: CommPoly
    b: CommPoly

    def __post_init__(self):
        if self.i == self.j or self.i < 1 or self.j < 1:
            raise DomainError(f"invalid elementary position ({self.i}, {self.j})")
        if self.a.ring != self.b.ring or self.a.ring.nvars != 1:
            raise ContextError("factor polynomials must share one univariate ring")

    def to_endo(self, algebra: FreeAlgebra) -> KzEndo:
        if self.i > algebra.n or self.j > algebra.n:
            raise ContextError(f"factor position exceeds {algebra.n} generators")
        images = list(algebra.gens())
        xi = algebra.gen(self.i - 1)
        images[self.j - 1] = images[self.j - 1] + _z_poly_to_nc(
            self.a, algebra
        ) * xi * _z_poly_to_nc(self.b, algebra)
        return KzEndo(algebra, images)

    def inverse(self) -> "ElemAuto":
        return ElemAuto(self.i, self.j, -self.a, self.b)


@dataclass(frozen=True)
class ScaleAuto:
    """x_k goes to u_k x_k for a vector of nonzero field constants."""

    units: tuple

    def __post_init__(self):
        if not self.units or any(not u for u in self.units):
            raise DomainError("scaling factors require nonzero units")

    def to_endo(self, algebra: FreeAlgebra) -> KzEndo:
        if len(self.units) != algebra.n:
            raise ContextError(
                f"scaling has {len(self.units)} units, algebra has {algebra.n} generators"
            )
        return KzEndo(
            algebra,
            [algebra.gen(k).scale(u) for k, u in enumerate(self.units)],
        )

    def inverse(self) -> "ScaleAuto":
        inv = []
        for u in self.units:
            if isinstance(u, FpElement):
                inv.append(u.inverse())
            else:
                inv.append(Fraction(1) / Fraction(u))
        return ScaleAuto(tuple(inv))


@dataclass(frozen=True)
class SwapAuto:
    """Exchange of the generators x_i and x_j (1-based)."""

    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j or self.i < 1 or self.j < 1:
            raise DomainError(f"invalid swap position ({self.i}, {self.j})")

    def to_endo(self, algebra: FreeAlgebra) -> KzEndo:
        if self.i > algebra.n or self.j > algebra.n:
            raise ContextError(f"factor position exceeds {algebra.n} generators")
        images = list(algebra.gens())
        a, b = self.i - 1, self.j - 1
        images[a], images[b] = images[b], images[a]
        return KzEndo(algebra, images)

    def inverse(self) -> "SwapAuto":
        return self


AutoFactor = Union[ElemAuto, ScaleAuto, SwapAuto]


def factors_to_endo(algebra: FreeAlgebra, factors: Sequence[AutoFactor]) -> KzEndo:
    """Compose a factor list left-to-right into a single endomorphism."""
    acc = KzEndo.identity(algebra)
    for f in factors:
        acc = acc.compose(f.to_endo(algebra))
    return acc


def transcript_to_autofactors(t: Transcript) -> tuple[AutoFactor, ...]:
    """Expand a matrix transcript over K[z1, z2] into automorphism factors.

    A matrix factor with a multi-term polynomial becomes one elementary
    automorphism per monomial: the monomial c z1^p z2^q at position (i, j)
    acts as x_j -> x_j + c z^p x_i z^q.  Transvections in one position
    commute, so the expansion order does not affect the product.
    """
    if t.ring.nvars != 2:
        raise ContextError("expected a transcript over K[z1, z2]")
    zr = PolyRing(t.ring.field, ("z",))
    out: list[AutoFactor] = []
    for f in t.factors:
        if isinstance(f, Elem):
            for mono, coeff in f.poly.terms():
                out.append(
                    ElemAuto(f.i, f.j, zr.term(coeff, (mono[0],)), zr.term(1, (mono[1],)))
                )
        elif isinstance(f, Diag):
            out.append(ScaleAuto(f.units))
        elif isinstance(f, Swap):
            out.append(SwapAuto(f.i, f.j))
        else:
            raise ContextError(f"unknown transcript factor {f!r}")
    return tuple(out)


@dataclass(frozen=True)
class TameVerdict:
    """Outcome of a tameness decision.

    kind is one of "tame" (factors compose to the input), "wild" (witness is
    the stuck reduction state), or "tame_by_theorem" (three or more
    generators: tameness is guaranteed, but the bounded search found no
    explicit factorization).
    """

    kind: str
    factors: tuple | None = None
    witness: PolyMatrix | None = None

    @classmethod
    def tame(cls, factors: Sequence[AutoFactor]) -> "TameVerdict":
        return cls("tame", factors=tuple(factors))

    @classmethod
    def wild(cls, witness: PolyMatrix) -> "TameVerdict":
        return cls("wild", witness=witness)

    @classmethod
    def by_theorem(cls) -> "TameVerdict":
        return cls("tame_by_theorem")


def matrix_to_endo(m: PolyMatrix, algebra: FreeAlgebra | None = None) -> KzEndo:
    """The x-linear endomorphism whose two-variable Jacobian is the matrix.

    The monomial c z1^p z2^q at entry (i, j) contributes c z^p x_i z^q to the
    j-th image.
    """
    if m.ring.nvars != 2:
        raise ContextError("expected a matrix over K[z1, z2]")
    n = m.n
    if algebra is None:
        algebra = FreeAlgebra(m.ring.field, default_xnames(n))
    elif algebra.n != n:
        raise ContextError(f"algebra has {algebra.n} generators, matrix size is {n}")
    z = algebra.z_letter
    images = []
    for j in range(n):
        terms: dict = {}
        for i in range(n):
            for mono, coeff in m.entries[i][j].terms():
                word = (z,) * mono[0] + (i,) + (z,) * mono[1]
                terms[word] = terms.get(word, 0) + coeff
        images.append(NCPoly(algebra, terms))
    return KzEndo(algebra, images)


def is_automorphism_linear(endo: KzEndo) -> bool:
    """Whether an x-linear endomorphism is invertible.

    Invertibility is equivalent to the two-variable Jacobian lying in the
    general linear group, i.e. to a nonzero constant determinant.
    """
    return is_gl(jacobian_linear(endo))


def is_tame(endo: KzEndo, order: MonomialOrder | None = None) -> TameVerdict:
    """Decide tameness of an x-linear automorphism.

    With two generators this is a complete decision via first-column
    elimination on the Jacobian.  With three or more the answer is always
    tame; a bounded elimination searches for an explicit factor list and
    reports tame_by_theorem when it finds none.
    """
    jac = jacobian_linear(endo)
    if not is_gl(jac):
        raise NotInvertibleError("endomorphism is not an automorphism")
    if order is None:
        order = MonomialOrder.deglex(2)
    n = endo.n
    if n == 1:
        alpha = jac.entries[0][0].constant_value()
        factors = () if alpha == endo.algebra.field.one else (ScaleAuto((alpha,)),)
        return TameVerdict.tame(factors)
    if n == 2:
        res = ge2_decide(jac, order)
        if isinstance(res, Tame):
            return TameVerdict.tame(transcript_to_autofactors(res.transcript))
        return TameVerdict.wild(res.witness)
    t = _eliminate(jac, order)
    if t is None:
        return TameVerdict.by_theorem()
    return TameVerdict.tame(transcript_to_autofactors(t))


def invert_linear(endo: KzEndo) -> KzEndo:
    """The inverse of an x-linear automorphism, via the adjugate Jacobian."""
    jac = jacobian_linear(endo)
    d = jac.det()
    if not (d.is_constant() and not d.is_zero()):
        raise NotInvertibleError("endomorphism is not an automorphism")
    dinv = _unit_inverse(endo.algebra.field, d.constant_value())
    adj = jac.adjugate()
    inv = adj.map_entries(adj.ring, lambda p: p.scale(dinv))
    return matrix_to_endo(inv, endo.algebra)


def _fresh_name(taken: Sequence[str], base: str = "t") -> str:
    if base not in taken:
        return base
    k = 1
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


def stable_tame(
    endo: KzEndo,
) -> tuple[FreeAlgebra, tuple[AutoFactor, ...]] | None:
    """Factor the extension of a two-generator automorphism by one fixed
    generator into elementary automorphisms, or None when no certificate is
    found.

    The extension fixes the added generator; its factor list composes to
    exactly that extension over the enlarged algebra.
    """
    if endo.n != 2:
        raise ContextError("stabilization applies to two-generator endomorphisms")
    jac = jacobian_linear(endo)
    t = stabilize3(jac)
    if t is None:
        return None
    big = endo.extended((_fresh_name(endo.algebra.xnames),)).algebra
    return big, transcript_to_autofactors(t)


def abelianized_tame_decomposition(endo: KzEndo) -> Transcript:
    """An elementary factorization of the map induced on commuting variables.

    The induced matrix lives over the principal ideal domain K[z], where
    every invertible matrix factors; this always succeeds for two-generator
    automorphisms, including the ones that are wild upstairs.
    """
    if endo.n != 2:
        raise ContextError("the commutative decomposition applies to two generators")
    _, m = abelianize_endo(endo)
    return gl2_univariate_decompose(m)


def _anick_variant(field) -> KzEndo:
    alg = FreeAlgebra(field, ("x", "y"))
    x, y = alg.gens()
    z = alg.z()
    return KzEndo(alg, (x + z * (x * z - z * y), y + (x * z - z * y) * z))


def _triangular_sample(field) -> KzEndo:
    alg = FreeAlgebra(field, ("x", "y"))
    x, y = alg.gens()
    z = alg.z()
    return KzEndo(alg, (x + y * y + z * y * z, y))


def builtin(name: str, field=None) -> KzEndo:
    """A named example endomorphism.

    Accepted names: anick_variant, cohn_endo, identity, triangular_sample,
    elem(i,j,a,b) with a and b polynomial expressions in z, and
    scale(u1,...,un) with nonzero rational units.
    """
    from .parser import parse_comm_poly

    field = QQ if field is None else field
    name = name.strip()
    if name == "anick_variant":
        return _anick_variant(field)
    if name == "cohn_endo":
        return matrix_to_endo(cohn_matrix(field))
    if name == "identity":
        return KzEndo.identity(FreeAlgebra(field, ("x", "y")))
    if name == "triangular_sample":
        return _triangular_sample(field)
    if name.startswith("elem(") and name.endswith(")"):
        parts = [s.strip() for s in name[5:-1].split(",")]
        if len(parts) != 4:
            raise DomainError("elem takes four arguments: i, j, a(z), b(z)")
        i, j = int(parts[0]), int(parts[1])
        zr = PolyRing(field, ("z",))
        a = parse_comm_poly(parts[2], zr)
        b = parse_comm_poly(parts[3], zr)
        n = max(2, i, j)
        alg = FreeAlgebra(field, default_xnames(n))
        return ElemAuto(i, j, a, b).to_endo(alg)
    if name.startswith("scale(") and name.endswith(")"):
        parts = [s.strip() for s in name[6:-1].split(",")]
        units = tuple(field(Fraction(s)) for s in parts)
        alg = FreeAlgebra(field, default_xnames(len(units)))
        return ScaleAuto(units).to_endo(alg)
    raise DomainError(f"unknown builtin endomorphism {name!r}")
