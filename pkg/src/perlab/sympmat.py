"""Exact matrices for Sp_m inside GL_{2m}.

The symplectic form is J = [[0, w], [-w, 0]] with w the antidiagonal matrix
of ones.  A rank m Levi (n_1, ..., n_k; r) sits block-diagonally as
diag(g_1, ..., g_k, h, g_k*, ..., g_1*) with g* = w (g^t)^{-1} w.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .levi import LeviDatum, levi_roots, positive_roots
from .linalg import frac

ZERO, ONE = Fraction(0), Fraction(1)


class ExactMatrix:
    """Dense square or rectangular matrix of Fractions; immutable."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = tuple(tuple(frac(x) for x in r) for r in rows)
        if self.rows and any(len(r) != len(self.rows[0]) for r in self.rows):
            raise ValueError("ragged matrix")
        self._hash = None

    @classmethod
    def _raw(cls, rows):
        obj = cls.__new__(cls)
        obj.rows = rows
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, d: int) -> "ExactMatrix":
        return cls._raw(tuple(tuple(ONE if i == j else ZERO for j in range(d)) for i in range(d)))

    @classmethod
    def zeros(cls, r: int, c: int | None = None) -> "ExactMatrix":
        c = r if c is None else c
        return cls._raw(tuple((ZERO,) * c for _ in range(r)))

    @classmethod
    def diag(cls, entries: Sequence) -> "ExactMatrix":
        entries = [frac(e) for e in entries]
        d = len(entries)
        return cls._raw(tuple(tuple(entries[i] if i == j else ZERO for j in range(d)) for i in range(d)))

    @classmethod
    def block_diag(cls, blocks: Sequence["ExactMatrix"]) -> "ExactMatrix":
        d = sum(b.nrows for b in blocks)
        rows = [[ZERO] * d for _ in range(d)]
        pos = 0
        for b in blocks:
            for i, r in enumerate(b.rows):
                rows[pos + i][pos : pos + b.ncols] = r
            pos += b.nrows
        return cls._raw(tuple(tuple(r) for r in rows))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def dim(self) -> int:
        return self.nrows

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append(tuple(sum((a * c[k] for k, a in nz), ZERO) for c in cols))
        return ExactMatrix._raw(tuple(out))

    def __add__(self, other):
        return ExactMatrix._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        return ExactMatrix._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        return ExactMatrix._raw(tuple(tuple(-a for a in r) for r in self.rows))

    def scale(self, c) -> "ExactMatrix":
        c = frac(c)
        return ExactMatrix._raw(tuple(tuple(c * a for a in r) for r in self.rows))

    def T(self) -> "ExactMatrix":
        return ExactMatrix._raw(tuple(zip(*self.rows)))

    def inverse(self) -> "ExactMatrix":
        if self.is_signed_permutation():
            return self.T()
        return ExactMatrix(linalg.inverse(self.rows))

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.nrows)), ZERO)

    def flat(self) -> tuple:
        return tuple(a for r in self.rows for a in r)

    def is_identity(self) -> bool:
        return all(a == (ONE if i == j else ZERO) for i, r in enumerate(self.rows) for j, a in enumerate(r))

    def is_signed_permutation(self) -> bool:
        for r in self.rows:
            nz = [a for a in r if a]
            if len(nz) != 1 or abs(nz[0]) != 1:
                return False
        for c in zip(*self.rows):
            if sum(1 for a in c if a) != 1:
                return False
        return True

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix._raw(tuple(tuple(self.rows[i][j] for j in cols) for i in rows))

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self.rows)
        return f"ExactMatrix[{body}]"

    def to_strings(self) -> list:
        return [[str(a) for a in r] for r in self.rows]


def antidiag_ones(d: int) -> ExactMatrix:
    return ExactMatrix._raw(tuple(tuple(ONE if i + j == d - 1 else ZERO for j in range(d)) for i in range(d)))


def symplectic_form(m: int) -> ExactMatrix:
    """J_m = [[0, w_m], [-w_m, 0]] of size 2m."""
    d = 2 * m
    rows = [[ZERO] * d for _ in range(d)]
    for i in range(m):
        rows[i][d - 1 - i] = ONE
        rows[m + i][m - 1 - i] = -ONE
    return ExactMatrix._raw(tuple(tuple(r) for r in rows))


def star(g: ExactMatrix) -> ExactMatrix:
    """g* = w (g^t)^{-1} w."""
    w = antidiag_ones(g.dim)
    return w @ g.T().inverse() @ w


def is_symplectic(x: ExactMatrix) -> bool:
    if x.nrows != x.ncols or x.nrows % 2:
        return False
    J = symplectic_form(x.nrows // 2)
    return x.T() @ J @ x == J


def iota(M: LeviDatum, gl_parts: Sequence[ExactMatrix], sp_part: ExactMatrix | None = None) -> ExactMatrix:
    """diag(g_1, ..., g_k, h, g_k*, ..., g_1*)."""
    if len(gl_parts) != M.k:
        raise ValueError(f"expected {M.k} GL blocks, got {len(gl_parts)}")
    for g, n in zip(gl_parts, M.blocks):
        if g.nrows != n or g.ncols != n:
            raise ValueError(f"GL block of size {g.nrows} does not match {n}")
    if sp_part is None:
        sp_part = ExactMatrix.identity(2 * M.sp_rank)
    if sp_part.dim != 2 * M.sp_rank:
        raise ValueError(f"Sp block of size {sp_part.dim} does not match rank {M.sp_rank}")
    if M.sp_rank and not is_symplectic(sp_part):
        raise ValueError("Sp block is not symplectic")
    stars = []
    for g in gl_parts:
        if linalg.rank(g.rows) < g.dim:
            raise ValueError("GL block is not invertible")
        stars.append(star(g))
    parts = list(gl_parts) + ([sp_part] if M.sp_rank else []) + stars[::-1]
    return ExactMatrix.block_diag(parts)


def delta(d: int) -> ExactMatrix:
    """diag(1, -1, 1, ...) of size d."""
    return ExactMatrix.diag([(-1) ** i for i in range(d)])


def epsilon(n: int) -> ExactMatrix:
    """diag(delta_{2n}, delta_{2n}*) of size 4n."""
    if n < 1:
        raise ValueError("n must be positive")
    d = delta(2 * n)
    return ExactMatrix.block_diag([d, star(d)])


def is_involution(x: ExactMatrix) -> bool:
    return (x @ x).is_identity()


def in_X(x: ExactMatrix, n: int) -> bool:
    """Symplectic involution of size 4n with balanced eigenvalues."""
    if x.nrows != 4 * n or x.ncols != 4 * n:
        return False
    return x.trace() == 0 and is_involution(x) and is_symplectic(x)


def _swap_block(r: int) -> ExactMatrix:
    rows = [[ZERO] * (2 * r) for _ in range(2 * r)]
    for i in range(r):
        rows[i][r + i] = ONE
        rows[r + i][i] = ONE
    return ExactMatrix._raw(tuple(tuple(x) for x in rows))


def special_blocks(kind: str, **params) -> ExactMatrix:
    """Named building blocks of orbit representatives.

    kinds: d2s(s), dpq(p, q), x_alpha(r_list), y_beta(pq_list),
    z_gamma(t_list, p, q), eta(r), swap(r).
    """
    if kind == "d2s":
        s = params["s"]
        return ExactMatrix.diag([1] * s + [-1] * s)
    if kind == "dpq":
        p, q = params["p"], params["q"]
        return ExactMatrix.diag([1] * p + [-1] * (2 * q) + [1] * p)
    if kind == "swap":
        return _swap_block(params["r"])
    if kind == "x_alpha":
        return ExactMatrix.block_diag([_swap_block(r) for r in params["r_list"]])
    if kind == "y_beta":
        entries = []
        for p, q in params["pq_list"]:
            entries += [1] * p + [-1] * q
        return ExactMatrix.diag(entries)
    if kind == "eta":
        r = params["r"]
        rows = [[ZERO] * (2 * r) for _ in range(2 * r)]
        for i in range(r):
            rows[i][i] = rows[i][r + i] = rows[r + i][i] = ONE
            rows[r + i][r + i] = -ONE
        return ExactMatrix._raw(tuple(tuple(x) for x in rows))
    if kind == "z_gamma":
        t_list, p, q = params.get("t_list", ()), params.get("p", 0), params.get("q", 0)
        if any(t % 2 or t <= 0 for t in t_list):
            raise ValueError(f"z_gamma needs positive even t_i, got {t_list}")
        u = p + q
        v = sum(t_list) + u
        d = 2 * v
        rows = [[ZERO] * d for _ in range(d)]
        pos = 0
        for t in t_list:
            dt = [1] * (t // 2) + [-1] * (t // 2)
            mirror = d - pos - t
            for a in range(t):
                rows[pos + a][mirror + a] = Fraction(dt[a])
                rows[mirror + a][pos + a] = Fraction(dt[a])
            pos += t
        centre = [1] * p + [-1] * (2 * q) + [1] * p
        for a, c in enumerate(centre):
            rows[pos + a][pos + a] = Fraction(c)
        return ExactMatrix._raw(tuple(tuple(x) for x in rows))
    raise ValueError(f"unknown block kind {kind!r}")


def lift(images: Sequence[int]) -> ExactMatrix:
    """Signed permutation matrix in Sp_m representing a Weyl element.

    For t(i) = +j: e_i -> e_j and e_i' -> e_j'.  For t(i) = -j: e_i -> e_j'
    and e_i' -> -e_j, where i' = 2m+1-i is the dual index.
    """
    images = tuple(getattr(images, "images", images))
    m = len(images)
    d = 2 * m
    rows = [[ZERO] * d for _ in range(d)]
    for i, t in enumerate(images, start=1):
        j = abs(t)
        ci, cid = i - 1, d - i  # columns of e_i and e_i'
        rj, rjd = j - 1, d - j
        if t > 0:
            rows[rj][ci] = ONE
            rows[rjd][cid] = ONE
        else:
            rows[rjd][ci] = ONE
            rows[rj][cid] = -ONE
    return ExactMatrix._raw(tuple(tuple(r) for r in rows))


# -- Lie algebra ----------------------------------------------------------


def coord_weight(a: int, m: int) -> tuple:
    """Torus weight of the 0-based coordinate a of the 2m-dimensional space."""
    v = [0] * m
    if a < m:
        v[a] = 1
    else:
        v[2 * m - 1 - a] = -1
    return tuple(v)


def theta(Y: ExactMatrix) -> ExactMatrix:
    """Involution Y -> J Y^t J whose fixed points form sp."""
    J = symplectic_form(Y.dim // 2)
    return J @ Y.T() @ J


def _elementary(d: int, a: int, b: int) -> ExactMatrix:
    rows = [[ZERO] * d for _ in range(d)]
    rows[a][b] = ONE
    return ExactMatrix._raw(tuple(tuple(r) for r in rows))


def is_in_sp(Y: ExactMatrix) -> bool:
    return theta(Y) == Y


def root_vector(beta: Sequence[int], m: int) -> ExactMatrix:
    """A nonzero element of the beta root space of sp_{2m}."""
    beta = tuple(beta)
    d = 2 * m
    for a in range(d):
        wa = coord_weight(a, m)
        for b in range(d):
            wb = coord_weight(b, m)
            if tuple(x - y for x, y in zip(wa, wb)) != beta:
                continue
            E = _elementary(d, a, b)
            Y = E + theta(E)
            if any(Y.flat()):
                return Y
    raise ValueError(f"{beta} is not a root of C_{m}")


def cartan_basis(m: int) -> list:
    d = 2 * m
    return [_elementary(d, a, a) + theta(_elementary(d, a, a)) for a in range(m)]


def lie_levi_basis(M: LeviDatum) -> list:
    return cartan_basis(M.m) + [root_vector(b, M.m) for b in sorted(levi_roots(M))]


def unipotent_roots(M: LeviDatum) -> list:
    roots_M = levi_roots(M)
    return [b for b in positive_roots(M.m) if b not in roots_M]


def lie_unipotent_basis(M: LeviDatum) -> list:
    return [root_vector(b, M.m) for b in unipotent_roots(M)]


def fixed_subspace(x: ExactMatrix, basis: Sequence[ExactMatrix]) -> list:
    """Coefficient vectors c with Ad(x) sum c_i Y_i = sum c_i Y_i."""
    if not basis:
        return []
    xinv = x.inverse()
    cols = [(x @ Y @ xinv - Y).flat() for Y in basis]
    rows = list(zip(*cols))
    rows = [r for r in rows if any(r)]
    return linalg.nullspace(rows, len(basis))


# -- block structure of normalising elements ------------------------------


def block_spaces(M: LeviDatum) -> list:
    """Coordinate sets (0-based) of V_1..V_k, their duals, and the tail.

    Returned as a list of (label, coords) with label +i / -i for block i and
    0 for the tail.
    """
    d = 2 * M.m
    out = []
    for i, (o, b) in enumerate(zip(M.offsets(), M.blocks), start=1):
        out.append((i, tuple(range(o, o + b))))
        out.append((-i, tuple(range(d - o - b, d - o))))
    if M.sp_rank:
        g = M.gl_rank
        out.append((0, tuple(range(g, d - g))))
    return out


def block_images(x: ExactMatrix, M: LeviDatum) -> tuple | None:
    """Signed images of the GL blocks under x, or None if x does not normalise M."""
    if x.dim != 2 * M.m:
        raise ValueError("size mismatch between x and M")
    spaces = block_spaces(M)
    owner = {}
    for label, coords in spaces:
        for c in coords:
            owner[c] = label
    targets = {}
    for label, coords in spaces:
        hit = set()
        for c in coords:
            for r in range(x.dim):
                if x.rows[r][c]:
                    hit.add(owner[r])
        if len(hit) != 1:
            return None
        (t,) = hit
        size = len(coords)
        tsize = len(dict(spaces)[t])
        if size != tsize:
            return None
        if (label == 0) != (t == 0):
            return None
        targets[label] = t
    images = tuple(targets[i] for i in range(1, M.k + 1))
    for i, t in enumerate(images, start=1):
        if targets[-i] != -t:
            return None
    if sorted(abs(t) for t in images) != list(range(1, M.k + 1)):
        return None
    return images


def normalizes(x: ExactMatrix, M: LeviDatum) -> bool:
    return block_images(x, M) is not None


@dataclass(frozen=True)
class SympInvolution:
    """x in N_G(M) with x^2 = 1, symplectic; orbit data optional."""

    matrix: ExactMatrix
    levi: LeviDatum
    weyl_image: object = None
    orbit_data: object = field(default=None, compare=False)

    def violations(self, require_X: bool = True) -> list:
        x, M = self.matrix, self.levi
        out = []
        if not is_involution(x):
            out.append("x^2 != 1")
        if not is_symplectic(x):
            out.append("x is not symplectic")
        if not normalizes(x, M):
            out.append("x does not normalise M")
        if require_X and x.trace() != 0:
            out.append("trace(x) != 0")
        return out

    def validate(self, require_X: bool = True) -> "SympInvolution":
        bad = self.violations(require_X)
        if bad:
            from .errors import InvariantError

            raise InvariantError("; ".join(bad))
        return self
