"""Square matrices over commutative polynomial rings and the decomposition
procedures on them: determinant/invertibility, the two-variable elementary
decomposition decision, the always-successful univariate decomposition, and
stabilization of 2x2 matrices inside the 3x3 group.

A transcript certifies a decomposition: the certified matrix equals the
left-to-right product of its factor matrices, checkable by verify_transcript.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence, Union

from .commpoly import CommPoly, MonomialOrder, PolyRing, poly_divmod, poly_sqrt, term_divide
from .errors import ContextError, DomainError, NotInvertibleError
from .scalars import FpElement, Scalar


class PolyMatrix:
    """An n x n matrix with entries in one commutative polynomial ring."""

    __slots__ = ("ring", "entries")

    def __init__(self, ring: PolyRing, entries: Sequence[Sequence]):
        n = len(entries)
        if n == 0 or any(len(row) != n for row in entries):
            raise ContextError("matrix entries must form a nonempty square grid")
        rows = []
        for row in entries:
            fixed = []
            for e in row:
                if isinstance(e, CommPoly):
                    if e.ring != ring:
                        raise ContextError("matrix entry lies in a different ring")
                    fixed.append(e)
                else:
                    fixed.append(ring.constant(e))
            rows.append(tuple(fixed))
        self.ring = ring
        self.entries = tuple(rows)

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> "PolyMatrix":
        return cls(
            ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
        )

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> CommPoly:
        i, j = ij
        return self.entries[i][j]

    def __mul__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if other.ring != self.ring or other.n != self.n:
            raise ContextError("matrix product requires matching ring and size")
        n = self.n
        a, b = self.entries, other.entries
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = self.ring.zero
                for k in range(n):
                    acc = acc + a[i][k] * b[k][j]
                row.append(acc)
            rows.append(row)
        return PolyMatrix(self.ring, rows)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    def __hash__(self):
        return hash((self.ring, self.entries))

    def is_identity(self) -> bool:
        return self == PolyMatrix.identity(self.ring, self.n)

    def det(self) -> CommPoly:
        """Exact determinant by expansion along the first column."""
        ent = self.entries
        n = self.n
        if n == 1:
            return ent[0][0]
        if n == 2:
            return ent[0][0] * ent[1][1] - ent[0][1] * ent[1][0]
        acc = self.ring.zero
        for i in range(n):
            if ent[i][0].is_zero():
                continue
            minor = [
                [ent[r][c] for c in range(1, n)] for r in range(n) if r != i
            ]
            cofactor = ent[i][0] * PolyMatrix(self.ring, minor).det()
            acc = acc + (cofactor if i % 2 == 0 else -cofactor)
        return acc

    def adjugate(self) -> "PolyMatrix":
        """The transpose of the cofactor matrix; M * adj(M) = det(M) * I."""
        n = self.n
        if n == 1:
            return PolyMatrix(self.ring, [[self.ring.one]])
        ent = self.entries
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = [
                    [ent[r][c] for c in range(n) if c != i]
                    for r in range(n)
                    if r != j
                ]
                cof = PolyMatrix(self.ring, minor).det()
                row.append(cof if (i + j) % 2 == 0 else -cof)
            rows.append(row)
        return PolyMatrix(self.ring, rows)

    def embed(self, size: int) -> "PolyMatrix":
        """This matrix as the upper-left block of a size x size identity."""
        if size < self.n:
            raise ContextError("embedding target is smaller than the matrix")
        ident = PolyMatrix.identity(self.ring, size)
        rows = [list(row) for row in ident.entries]
        for i in range(self.n):
            for j in range(self.n):
                rows[i][j] = self.entries[i][j]
        return PolyMatrix(self.ring, rows)

    def map_entries(
        self, ring: PolyRing, fn: Callable[[CommPoly], CommPoly]
    ) -> "PolyMatrix":
        return PolyMatrix(ring, [[fn(e) for e in row] for row in self.entries])

    def __repr__(self):
        body = "; ".join(
            ", ".join(str(e) for e in row) for row in self.entries
        )
        return f"<PolyMatrix [{body}]>"


def det(m: PolyMatrix) -> CommPoly:
    return m.det()


def is_gl(m: PolyMatrix) -> bool:
    """Whether the matrix is invertible over the polynomial ring.

    Units of K[z1..zp] over a field are the nonzero constants, so this is a
    constancy test on the determinant.
    """
    d = m.det()
    return d.is_constant() and not d.is_zero()


@dataclass(frozen=True)
class Elem:
    """Identity plus p at row i, column j (1-based, i != j)."""

    i: int
    j: int
    poly: CommPoly

    def __post_init__(self):
        if self.i == self.j or self.i < 1 or self.j < 1:
            raise DomainError(f"invalid elementary position ({self.i}, {self.j})")

    def matrix(self, ring: PolyRing, n: int) -> PolyMatrix:
        if self.poly.ring != ring:
            raise ContextError("factor polynomial lies in a different ring")
        if self.i > n or self.j > n:
            raise ContextError(f"factor position exceeds matrix size {n}")
        m = [list(row) for row in PolyMatrix.identity(ring, n).entries]
        m[self.i - 1][self.j - 1] = self.poly
        return PolyMatrix(ring, m)

    def inverse(self) -> "Elem":
        return Elem(self.i, self.j, -self.poly)


@dataclass(frozen=True)
class Diag:
    """Diagonal matrix of nonzero field constants."""

    units: tuple

    def __post_init__(self):
        if not self.units or any(not u for u in self.units):
            raise DomainError("diagonal factors require nonzero units")

    def matrix(self, ring: PolyRing, n: int) -> PolyMatrix:
        if len(self.units) != n:
            raise ContextError(f"diagonal factor has {len(self.units)} units, matrix size is {n}")
        m = [list(row) for row in PolyMatrix.identity(ring, n).entries]
        for k, u in enumerate(self.units):
            m[k][k] = ring.constant(u)
        return PolyMatrix(ring, m)

    def inverse(self) -> "Diag":
        inv = []
        for u in self.units:
            if isinstance(u, FpElement):
                inv.append(u.inverse())
            else:
                inv.append(Fraction(1) / Fraction(u))
        return Diag(tuple(inv))


@dataclass(frozen=True)
class Swap:
    """Transposition of rows/columns i and j (1-based); sugar for a product
    of three elementary factors and one diagonal factor."""

    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j or self.i < 1 or self.j < 1:
            raise DomainError(f"invalid swap position ({self.i}, {self.j})")

    def matrix(self, ring: PolyRing, n: int) -> PolyMatrix:
        if self.i > n or self.j > n:
            raise ContextError(f"factor position exceeds matrix size {n}")
        m = [list(row) for row in PolyMatrix.identity(ring, n).entries]
        a, b = self.i - 1, self.j - 1
        m[a][a] = m[b][b] = ring.zero
        m[a][b] = m[b][a] = ring.one
        return PolyMatrix(ring, m)

    def inverse(self) -> "Swap":
        return self


Factor = Union[Elem, Diag, Swap]


@dataclass(frozen=True)
class Transcript:
    """An ordered factor list certifying a matrix as their product."""

    ring: PolyRing
    n: int
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def __iter__(self) -> Iterator[Factor]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def product(self) -> PolyMatrix:
        acc = PolyMatrix.identity(self.ring, self.n)
        for f in self.factors:
            acc = acc * f.matrix(self.ring, self.n)
        return acc

    def inverse(self) -> "Transcript":
        return Transcript(
            self.ring, self.n, tuple(f.inverse() for f in reversed(self.factors))
        )

    def expand_swaps(self) -> "Transcript":
        """Rewrite every Swap as three Elem factors and one Diag factor."""
        field = self.ring.field
        out = []
        for f in self.factors:
            if isinstance(f, Swap):
                one = self.ring.one
                units = [field.one] * self.n
                units[f.i - 1] = -field.one
                out += [
                    Elem(f.i, f.j, one),
                    Elem(f.j, f.i, -one),
                    Elem(f.i, f.j, one),
                    Diag(tuple(units)),
                ]
            else:
                out.append(f)
        return Transcript(self.ring, self.n, tuple(out))

    def embed(self, size: int) -> "Transcript":
        """The same factors acting on the upper-left block of a larger size."""
        if size < self.n:
            raise ContextError("embedding target is smaller than the transcript size")
        field = self.ring.field
        out = []
        for f in self.factors:
            if isinstance(f, Diag):
                out.append(Diag(f.units + (field.one,) * (size - len(f.units))))
            else:
                out.append(f)
        return Transcript(self.ring, size, tuple(out))


def verify_transcript(t: Transcript, m: PolyMatrix) -> bool:
    """Exact check that the factor product reproduces the target matrix."""
    if t.ring != m.ring or t.n != m.n:
        raise ContextError("transcript and matrix disagree on ring or size")
    return t.product() == m


@dataclass(frozen=True)
class Tame:
    """Decomposition found; the transcript multiplies back to the input."""

    transcript: Transcript


@dataclass(frozen=True)
class Wild:
    """Reduction stuck: in the witness's first column the two nonzero
    entries have mutually indivisible leading monomials."""

    witness: PolyMatrix


def _unit_inverse(field, c: Scalar) -> Scalar:
    if isinstance(c, FpElement):
        return c.inverse()
    return Fraction(1) / Fraction(c)


def _finish_triangular(
    ring: PolyRing, recorded: list, current: list
) -> Transcript:
    """Decompose [[a, b], [0, d]] with unit constants a, d as one Elem and
    one Diag factor appended to the recorded prefix."""
    field = ring.field
    a = current[0][0].constant_value()
    d = current[1][1].constant_value()
    b = current[0][1]
    if not b.is_zero():
        recorded.append(Elem(1, 2, b.scale(_unit_inverse(field, d))))
    if a != field.one or d != field.one:
        recorded.append(Diag((a, d)))
    return Transcript(ring, 2, tuple(recorded))


def ge2_decide(m: PolyMatrix, order: MonomialOrder) -> Union[Tame, Wild]:
    """Decide membership in the subgroup generated by elementary and
    diagonal 2x2 matrices, by leading-term elimination on the first column.

    Each division step cancels exactly the leading term of one column entry,
    strictly decreasing it in the well-founded monomial order, so the loop
    terminates.  A state where neither leading monomial divides the other is
    returned as a Wild witness.
    """
    if m.n != 2:
        raise ContextError("the elementary-decomposition decision is for 2x2 matrices")
    if not is_gl(m):
        raise NotInvertibleError("matrix determinant is not a nonzero constant")
    ring = m.ring
    recorded: list = []
    current = [list(row) for row in m.entries]
    while True:
        a, c = current[0][0], current[1][0]
        if c.is_zero():
            return Tame(_finish_triangular(ring, recorded, current))
        if a.is_zero():
            recorded.append(Swap(1, 2))
            current = [current[1], current[0]]
            continue
        q = term_divide(a.leading_term(order), c.leading_term(order))
        if q is not None:
            qp = ring.term(*q)
            current[0] = [current[0][k] - qp * current[1][k] for k in range(2)]
            recorded.append(Elem(1, 2, qp))
            continue
        q = term_divide(c.leading_term(order), a.leading_term(order))
        if q is not None:
            qp = ring.term(*q)
            current[1] = [current[1][k] - qp * current[0][k] for k in range(2)]
            recorded.append(Elem(2, 1, qp))
            continue
        return Wild(PolyMatrix(ring, current))


def gl2_univariate_decompose(m: PolyMatrix) -> Transcript:
    """Decompose an invertible 2x2 matrix over K[z] by Euclidean division.

    K[z] is a principal ideal domain, so full-quotient division on the first
    column always reaches a triangular matrix; this never fails on invertible
    input.
    """
    if m.n != 2:
        raise ContextError("univariate decomposition is for 2x2 matrices")
    if m.ring.nvars != 1:
        raise ContextError("expected a matrix over a univariate ring")
    if not is_gl(m):
        raise NotInvertibleError("matrix determinant is not a nonzero constant")
    ring = m.ring
    recorded: list = []
    current = [list(row) for row in m.entries]
    while True:
        a, c = current[0][0], current[1][0]
        if c.is_zero():
            return _finish_triangular(ring, recorded, current)
        if a.is_zero():
            recorded.append(Swap(1, 2))
            current = [current[1], current[0]]
            continue
        if a.total_degree() >= c.total_degree():
            q, _ = poly_divmod(a, c)
            current[0] = [current[0][k] - q * current[1][k] for k in range(2)]
            recorded.append(Elem(1, 2, q))
        else:
            q, _ = poly_divmod(c, a)
            current[1] = [current[1][k] - q * current[0][k] for k in range(2)]
            recorded.append(Elem(2, 1, q))


def cohn_family(a: CommPoly, b: CommPoly) -> PolyMatrix:
    """The matrix [[1+ab, b^2], [-a^2, 1-ab]]; determinant 1 identically."""
    if a.ring != b.ring:
        raise ContextError("family parameters lie in different rings")
    ring = a.ring
    one = ring.one
    return PolyMatrix(ring, [[one + a * b, b * b], [-(a * a), one - a * b]])


def cohn_matrix(field=None) -> PolyMatrix:
    """The two-variable wildness witness: the family matrix at a = z1, b = z2."""
    from .scalars import QQ

    ring = PolyRing(QQ if field is None else field, ("z1", "z2"))
    z1, z2 = ring.gens()
    return cohn_family(z1, z2)


def mennicke_factors(a: CommPoly, b: CommPoly) -> tuple:
    """Eight elementary 3x3 factors whose product is diag([[1+ab, b^2],
    [-a^2, 1-ab]], 1).  Zero arguments drop their factors."""
    if a.ring != b.ring:
        raise ContextError("family parameters lie in different rings")
    spots = [
        (1, 3, b),
        (2, 3, -a),
        (3, 1, a),
        (3, 2, b),
        (1, 3, -b),
        (2, 3, a),
        (3, 1, -a),
        (3, 2, -b),
    ]
    return tuple(Elem(i, j, p) for i, j, p in spots if not p.is_zero())


def _cohn_parameters(m: PolyMatrix) -> tuple[CommPoly, CommPoly] | None:
    """Parameters (a, b) with m = [[1+ab, b^2], [-a^2, 1-ab]], if any."""
    ring = m.ring
    a = poly_sqrt(-m.entries[1][0])
    b = poly_sqrt(m.entries[0][1])
    if a is None or b is None:
        return None
    one = ring.one
    for bb in (b, -b):
        if m.entries[0][0] == one + a * bb and m.entries[1][1] == one - a * bb:
            return a, bb
    return None


def _eliminate(
    m: PolyMatrix, order: MonomialOrder, max_steps: int = 2000
) -> Transcript | None:
    """Bounded greedy elimination of an invertible n x n matrix to the
    identity, recording factors; returns None when stuck.

    Complete over a univariate ring; over several variables it is a
    heuristic that can fail even on decomposable input.
    """
    ring = m.ring
    n = m.n
    current = [list(row) for row in m.entries]
    recorded: list = []
    steps = 0
    for col in range(n):
        while True:
            steps += 1
            if steps > max_steps:
                return None
            nz = [r for r in range(col, n) if not current[r][col].is_zero()]
            if not nz:
                return None
            if len(nz) == 1:
                r = nz[0]
                if r != col:
                    recorded.append(Swap(col + 1, r + 1))
                    current[col], current[r] = current[r], current[col]
                break
            progressed = False
            ranked = sorted(
                nz, key=lambda r: order.key(current[r][col].leading_term(order)[1])
            )
            for r1 in reversed(ranked):
                for r2 in ranked:
                    if r1 == r2:
                        continue
                    q = term_divide(
                        current[r1][col].leading_term(order),
                        current[r2][col].leading_term(order),
                    )
                    if q is None:
                        continue
                    qp = ring.term(*q)
                    current[r1] = [
                        current[r1][k] - qp * current[r2][k] for k in range(n)
                    ]
                    recorded.append(Elem(r1 + 1, r2 + 1, qp))
                    progressed = True
                    break
                if progressed:
                    break
            if not progressed:
                return None
    field = ring.field
    units = []
    for k in range(n):
        d = current[k][k]
        if not (d.is_constant() and not d.is_zero()):
            return None
        units.append(d.constant_value())
    for col in range(1, n):
        dinv = _unit_inverse(field, units[col])
        for r in range(col):
            e = current[r][col]
            if e.is_zero():
                continue
            q = e.scale(dinv)
            current[r] = [current[r][k] - q * current[col][k] for k in range(n)]
            recorded.append(Elem(r + 1, col + 1, q))
    if any(u != field.one for u in units):
        recorded.append(Diag(tuple(units)))
    t = Transcript(ring, n, tuple(recorded))
    return t if verify_transcript(t, m) else None


def stabilize3(m: PolyMatrix) -> Transcript | None:
    """A 3x3 transcript for diag(m, 1), or None when no certificate is found.

    Tries, in order: the [[1+ab, b^2], [-a^2, 1-ab]] family via the explicit
    eight-factor identity, an ordinary 2x2 decomposition embedded into size
    3, and bounded 3x3 elimination.
    """
    if m.n != 2:
        raise ContextError("stabilization applies to 2x2 matrices")
    if not is_gl(m):
        raise NotInvertibleError("matrix determinant is not a nonzero constant")
    ring = m.ring
    target = m.embed(3)
    if m.is_identity():
        return Transcript(ring, 3, ())
    params = _cohn_parameters(m)
    if params is not None:
        t = Transcript(ring, 3, mennicke_factors(*params))
        if verify_transcript(t, target):
            return t
    order = MonomialOrder.deglex(ring.nvars)
    res = ge2_decide(m, order)
    if isinstance(res, Tame):
        t = res.transcript.embed(3)
        if verify_transcript(t, target):
            return t
    return _eliminate(target, order)
