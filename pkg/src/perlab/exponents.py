"""The exponent rho_x of a vertex (M, x), by closed formula and from first principles."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import sympmat
from .levi import ExpVector, LeviDatum
from .linalg import AffineSubspace, inverse, solve
from .orbits import CuspidalOrbit, eigenspaces, is_cuspidal_key, orbit_key

__all__ = [
    "AffineSubspace",
    "EigenSplit",
    "eigen_split",
    "rho_x_formula",
    "rho_x_oracle",
    "singular_equations",
    "singular_subspace",
    "singular_subspace_from_equations",
]


@dataclass(frozen=True)
class EigenSplit:
    plus_basis: tuple
    minus_basis: tuple


def _matrix(x):
    return getattr(x, "matrix", x)


def eigen_split(M: LeviDatum, x) -> EigenSplit:
    images = sympmat.block_images(_matrix(x), M)
    if images is None:
        raise ValueError("x does not normalise M")
    plus, minus = eigenspaces(images)
    return EigenSplit(tuple(plus), tuple(minus))


def rho_x_formula(orbit: CuspidalOrbit) -> ExpVector:
    """(1/2, ..., 1/2, lambda_1, ..., lambda_l2) for a standard cuspidal orbit."""
    if not isinstance(orbit, CuspidalOrbit) or not is_cuspidal_key(orbit.key):
        raise ValueError("rho_x_formula needs a standard cuspidal orbit")
    h = orbit.h
    l2 = len(h)
    head = [Fraction(1, 2)] * (2 * orbit.k + orbit.l1)
    lam = []
    for i in range(l2):
        same = sum(1 for j in range(i, l2) if h[j] == h[i])
        lam.append(Fraction(2 * same - (l2 - i)))
    return ExpVector(tuple(head + lam), "aM")


def _trace_on(vectors: list, eigen: list) -> Fraction:
    """Trace of diag(eigen) restricted to the span of the given coefficient vectors."""
    n = len(vectors)
    if not n:
        return Fraction(0)
    gram = [[sum(p * q for p, q in zip(vectors[i], vectors[j])) for j in range(n)] for i in range(n)]
    proj = [
        [sum(p * e * q for p, e, q in zip(vectors[i], eigen, vectors[j])) for j in range(n)] for i in range(n)
    ]
    ginv = inverse(gram)
    return sum((ginv[i][t] * proj[t][i] for i in range(n) for t in range(n)), Fraction(0))


def rho_x_oracle(M: LeviDatum, x) -> ExpVector:
    """rho_x from the modulus of P_x = P cap M_x, computed on Lie(U)^x.

    Lie(U)^x is the exact fixed space of Ad(x) on the root vectors of U.  For
    each H in the +1 eigenspace of x on the centre of M, the value
    <rho_x, H> is tr(ad H | Lie(U)^x) - tr(ad H | Lie U) / 2.  The functional
    is then represented inside the +1 eigenspace via the block-weighted pairing.
    """
    X = _matrix(x)
    if X.dim % 4 or not sympmat.in_X(X, X.dim // 4):
        raise ValueError("x is not in X")
    split = eigen_split(M, X)
    roots = sympmat.unipotent_roots(M)
    U = [sympmat.root_vector(b, M.m) for b in roots]
    # root vectors have disjoint supports, so ad H is diagonal in these coordinates
    fixed = sympmat.fixed_subspace(X, U)
    values = []
    for hb in split.plus_basis:
        H = M.embed(hb)
        eigen = [sum(c * h for c, h in zip(b, H)) for b in roots]
        values.append(_trace_on(fixed, eigen) - sum(eigen, Fraction(0)) / 2)
    plus = split.plus_basis
    gram = [[M.pairing(p, q) for q in plus] for p in plus]
    coef = solve(gram, values, len(plus)) if plus else ()
    lam = [Fraction(0)] * M.k
    for c, p in zip(coef, plus):
        for i in range(M.k):
            lam[i] += c * p[i]
    return ExpVector(tuple(lam), "aM")


def singular_equations(orbit: CuspidalOrbit) -> tuple:
    """Rows and right-hand sides of the singular hyperplanes cutting out rho_x + minus space.

    mu_{2i-1} + mu_{2i} = 1 on each pair, mu_j = 1/2 on each even block,
    lambda_i - eps_i lambda_{i+1} = 1 on the size-one blocks (eps_i = 1 iff
    h_i = h_{i+1}) and lambda_{l2} = 1.
    """
    k = orbit.levi.k
    rows, rhs = [], []

    def row(entries):
        r = [Fraction(0)] * k
        for j, c in entries:
            r[j] = Fraction(c)
        return r

    for i in range(orbit.k):
        rows.append(row([(2 * i, 1), (2 * i + 1, 1)]))
        rhs.append(Fraction(1))
    start = 2 * orbit.k
    for j in range(start, start + orbit.l1):
        rows.append(row([(j, 1)]))
        rhs.append(Fraction(1, 2))
    base = start + orbit.l1
    h = orbit.h
    for i in range(len(h) - 1):
        eps = 1 if h[i] == h[i + 1] else -1
        rows.append(row([(base + i, 1), (base + i + 1, -eps)]))
        rhs.append(Fraction(1))
    if h:
        rows.append(row([(base + len(h) - 1, 1)]))
        rhs.append(Fraction(1))
    return rows, rhs


def singular_subspace(orbit: CuspidalOrbit) -> AffineSubspace:
    split = eigen_split(orbit.levi, orbit.rep)
    return AffineSubspace(rho_x_formula(orbit).coords, split.minus_basis)


def singular_subspace_from_equations(orbit: CuspidalOrbit) -> AffineSubspace:
    rows, rhs = singular_equations(orbit)
    sub = AffineSubspace.from_equations(rows, rhs, orbit.levi.k)
    if sub is None:
        raise ValueError("inconsistent singular hyperplanes")
    return sub


def key_is_cuspidal(M: LeviDatum, x) -> bool:
    return is_cuspidal_key(orbit_key(M, _matrix(x)))
