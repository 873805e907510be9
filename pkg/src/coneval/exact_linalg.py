"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction` (or plain ``int``).
Vectors are tuples, matrices are sequences of row tuples.  Floating point
values are rejected so that membership tests downstream stay decision
procedures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from numbers import Rational
from typing import Iterable, Sequence

Vec = tuple
Matrix = Sequence[Sequence]


def to_rational(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} {value!r} as an exact rational")


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def vector(values: Iterable) -> Vec:
    return tuple(to_rational(v) for v in values)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def add(u: Sequence, v: Sequence) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> Vec:
    return tuple(c * a for a in v)


def neg(v: Sequence) -> Vec:
    return tuple(-a for a in v)


def is_zero(v: Sequence) -> bool:
    return all(a == 0 for a in v)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Positive multiple of ``v`` with coprime integer entries."""
    fracs = [Fraction(a) for a in v]
    den = reduce(lambda a, b: a * b // gcd(a, b), (f.denominator for f in fracs), 1)
    ints = [int(f * den) for f in fracs]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(a // g for a in ints)


def normalize_line(v: Sequence) -> tuple[int, ...]:
    """Primitive integer vector whose first nonzero entry is positive."""
    p = primitive(v)
    for a in p:
        if a:
            return p if a > 0 else tuple(-b for b in p)
    return p


def rref(rows: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(a) for a in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [a / p for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Matrix) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    m = [list(primitive(r)) for r in rows if not is_zero(r)]
    if not m:
        return 0
    ncols = len(m[0])
    nrows = len(m)
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            m[i] = [(m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev for j in range(ncols)]
        prev = m[r][c]
        r += 1
        if r == nrows:
            break
    return r


def nullspace(rows: Matrix, n: int) -> list[Vec]:
    """Basis of {x in Q^n : r . x = 0 for every row r}."""
    red, pivots = rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(a: Matrix, b: Sequence) -> Vec | None:
    """A solution of ``a x = b`` or None when the system is inconsistent."""
    if not a:
        return None if not is_zero(b) else ()
    n = len(a[0])
    aug = [list(r) + [bi] for r, bi in zip(a, b)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return tuple(x)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^d stored by its canonical RREF basis.

    Two Subspace objects are equal exactly when they describe the same
    subspace, so they can serve as dictionary keys (flats, lineality spaces).
    """

    ambient_dim: int
    basis: tuple[Vec, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vecs = [tuple(Fraction(a) for a in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        red, _ = rref(vecs)
        return cls(ambient_dim, tuple(tuple(r) for r in red))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(
            [tuple(int(i == j) for j in range(ambient_dim)) for i in range(ambient_dim)], ambient_dim
        )

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def kernel(cls, rows: Matrix, ambient_dim: int) -> "Subspace":
        return cls.span(nullspace(rows, ambient_dim), ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def integer_basis(self) -> tuple[tuple[int, ...], ...]:
        return tuple(primitive(b) for b in self.basis)

    @cached_property
    def _gram_inverse(self) -> list[list[Fraction]]:
        k = self.dim
        gram = [[dot(u, v) for v in self.basis] for u in self.basis]
        aug = [gram[i] + [Fraction(int(i == j)) for j in range(k)] for i in range(k)]
        red, _ = rref(aug)
        return [row[k:] for row in red]

    def contains(self, x: Sequence) -> bool:
        return all(a == 0 for a in sub(x, self.project(x)))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def complement(self) -> "Subspace":
        return orthogonal_complement(self)

    def project(self, x: Sequence) -> Vec:
        return project_onto_subspace(x, self)

    def intersect(self, other: "Subspace") -> "Subspace":
        rows = list(self.complement().basis) + list(other.complement().basis)
        return Subspace.kernel(rows, self.ambient_dim)

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim)


def orthogonal_complement(s: Subspace) -> Subspace:
    return Subspace.kernel(s.basis, s.ambient_dim)


def project_onto_subspace(x: Sequence, s: Subspace) -> Vec:
    """Orthogonal projection of ``x`` onto ``s`` via the normal equations."""
    if len(x) != s.ambient_dim:
        raise ValueError("dimension mismatch")
    if s.dim == 0:
        return tuple(Fraction(0) for _ in x)
    rhs = [dot(b, x) for b in s.basis]
    ginv = s._gram_inverse
    coeffs = [sum(g * r for g, r in zip(row, rhs)) for row in ginv]
    out = [Fraction(0)] * s.ambient_dim
    for c, b in zip(coeffs, s.basis):
        if c:
            for i, bi in enumerate(b):
                out[i] += c * bi
    return tuple(out)


def projection_matrix(s: Subspace) -> list[list[Fraction]]:
    """The symmetric matrix of orthogonal projection onto ``s``."""
    d = s.ambient_dim
    cols = [project_onto_subspace(tuple(int(i == j) for j in range(d)), s) for i in range(d)]
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def feasible(
    equalities: Iterable[Sequence],
    strict_inequalities: Iterable[Sequence],
    weak_inequalities: Iterable[Sequence],
    ambient_dim: int,
) -> tuple[bool, Vec | None]:
    """Decide the homogeneous system ``e.x = 0, s.x > 0, w.x >= 0``.

    The closed cone cut out by the equalities, the weak inequalities and the
    strict inequalities relaxed to weak ones is converted to generators with
    the double description method.  Lineality directions satisfy every
    relaxed inequality with equality, so the strict system is solvable exactly
    when each strict row is positive on some extreme ray, and then the sum of
    the extreme rays is a witness.
    """
    from ._dd import hrep_to_vrep

    strict = [tuple(Fraction(a) for a in s) for s in strict_inequalities]
    weak = [tuple(Fraction(a) for a in w) for w in weak_inequalities]
    eqs = [tuple(Fraction(a) for a in e) for e in equalities]
    for row in strict + weak + eqs:
        if len(row) != ambient_dim:
            raise ValueError("constraint of wrong length")
    ineqs = [neg(primitive(r)) for r in strict + weak if not is_zero(r)]
    if any(is_zero(s) for s in strict):
        return False, None
    lineality, rays = hrep_to_vrep(ambient_dim, [primitive(e) for e in eqs], ineqs)
    witness = [Fraction(0)] * ambient_dim
    for r in rays:
        witness = [a + b for a, b in zip(witness, r)]
    witness = tuple(witness)
    if all(dot(s, witness) > 0 for s in strict):
        return True, witness
    return False, None
