"""Exact linear algebra over Q.

Vectors are tuples of Fraction and matrices are sequences of rows.  Row
reduction, kernels and inverses are delegated to sympy's DomainMatrix over QQ.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Vector = tuple


def frac(x) -> Fraction:
    """Coerce ints, Fractions, 'p/q' strings and mpq values to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"not an exact rational: {x!r}")


def vec(values: Iterable) -> Vector:
    return tuple(frac(v) for v in values)


def _dm(rows: Sequence[Sequence], ncols: int | None = None) -> DomainMatrix:
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    data = [[QQ(int(frac(x).numerator), int(frac(x).denominator)) for x in r] for r in rows]
    return DomainMatrix(data, (len(data), ncols), QQ)


def _rows(dm: DomainMatrix) -> list[Vector]:
    return [tuple(frac(x) for x in r) for r in dm.to_list()]


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    if not rows:
        return [], ()
    red, pivots = _dm(rows, ncols).rref()
    return _rows(red)[: len(pivots)], tuple(pivots)


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    return _dm(rows, ncols).rank()


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {v : A v = 0}; A given by rows of length ncols."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    ns = _dm(rows, ncols).nullspace()
    if ns.shape[0] == 0:
        return []
    return _rows(ns)


def inverse(rows: Sequence[Sequence]) -> list[Vector]:
    return _rows(_dm(rows).inv())


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int | None = None) -> Vector | None:
    """One solution of A v = rhs, or None when inconsistent."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    if not aug:
        return tuple(Fraction(0) for _ in range(ncols))
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    sol = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        sol[p] = row[ncols]
    return tuple(sol)


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    if not any(frac(x) for x in v):
        return True
    if not basis:
        return False
    return rank(list(basis) + [v], len(v)) == rank(basis, len(v))


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def matvec(rows: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(r, v) for r in rows)


def independent_subset(vectors: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Greedy maximal linearly independent subsequence."""
    kept: list[Vector] = []
    for v in vectors:
        if rank(kept + [tuple(v)], ncols) > len(kept):
            kept.append(tuple(v))
    return kept


@dataclass(frozen=True)
class AffineSubspace:
    """base + span(directions) inside Q^d, exact."""

    base: Vector
    directions: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "base", vec(self.base))
        dirs = [vec(d) for d in self.directions]
        for d in dirs:
            if len(d) != len(self.base):
                raise ValueError("direction has the wrong dimension")
        object.__setattr__(self, "directions", tuple(dirs))

    @property
    def ambient_dim(self) -> int:
        return len(self.base)

    @property
    def dim(self) -> int:
        return rank(self.directions, self.ambient_dim)

    @classmethod
    def point(cls, p: Sequence) -> "AffineSubspace":
        return cls(vec(p), ())

    @classmethod
    def from_equations(cls, rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> "AffineSubspace | None":
        """Solution set of A v = rhs, or None if empty."""
        p = solve(rows, rhs, ncols)
        if p is None:
            return None
        return cls(p, tuple(nullspace(rows, ncols)))

    def contains_point(self, p: Sequence) -> bool:
        diff = tuple(frac(a) - b for a, b in zip(p, self.base))
        return in_span(self.directions, diff)

    def contains(self, other: "AffineSubspace") -> bool:
        """True iff other is a subset of self."""
        if other.ambient_dim != self.ambient_dim:
            return False
        if not self.contains_point(other.base):
            return False
        return all(in_span(self.directions, d) for d in other.directions)

    def canonical(self) -> tuple:
        """Hashable normal form: RREF directions and the base reduced against them."""
        red, pivots = rref(self.directions, self.ambient_dim)
        base = list(self.base)
        for row, p in zip(red, pivots):
            c = base[p]
            if c:
                base = [b - c * r for b, r in zip(base, row)]
        return (tuple(base), tuple(red))

    def __eq__(self, other):
        if not isinstance(other, AffineSubspace):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def map(self, rows: Sequence[Sequence]) -> "AffineSubspace":
        """Image under the linear map with the given matrix."""
        return AffineSubspace(matvec(rows, self.base), tuple(matvec(rows, d) for d in self.directions))

    def restriction_constant(self, functional: Sequence) -> Fraction | None:
        """Value of a linear functional if it is constant on the subspace, else None."""
        if any(dot(functional, d) for d in self.directions):
            return None
        return dot(functional, self.base)
