"""Standard Levi data of Sp in type C_m coordinates.

A composition (n_1, ..., n_k; r) describes the block-diagonal Levi
GL_{n_1} x ... x GL_{n_k} x Sp_r of a rank m = sum(n_i) + r symplectic group.
Its split centre has Lie algebra R^k, embedded in R^m by repeating each
block value n_i times and padding the Sp_r tail with zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .linalg import dot, frac, vec


@dataclass(frozen=True, order=True)
class LeviDatum:
    blocks: tuple
    sp_rank: int = 0

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.blocks)
        if any(b <= 0 for b in blocks):
            raise ValueError(f"block sizes must be positive: {blocks}")
        if int(self.sp_rank) < 0:
            raise ValueError("sp_rank must be non-negative")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "sp_rank", int(self.sp_rank))

    @classmethod
    def parse(cls, text: str) -> "LeviDatum":
        """Parse '2,2;0' or '1,1,2' (tail defaults to 0)."""
        text = text.strip()
        head, _, tail = text.partition(";")
        blocks = tuple(int(x) for x in head.split(",") if x.strip())
        return cls(blocks, int(tail) if tail.strip() else 0)

    @classmethod
    def torus(cls, m: int) -> "LeviDatum":
        return cls((1,) * m, 0)

    def __str__(self):
        return ",".join(map(str, self.blocks)) + f";{self.sp_rank}"

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def m(self) -> int:
        return sum(self.blocks) + self.sp_rank

    @property
    def gl_rank(self) -> int:
        return sum(self.blocks)

    def offsets(self) -> tuple:
        """0-based start coordinate of each GL block."""
        out, pos = [], 0
        for b in self.blocks:
            out.append(pos)
            pos += b
        return tuple(out)

    def block_of(self, coord: int) -> int | None:
        """0-based block index of a 0-based coordinate, None for the Sp tail."""
        for i, (o, b) in enumerate(zip(self.offsets(), self.blocks)):
            if o <= coord < o + b:
                return i
        return None

    def cuts(self) -> frozenset:
        """Partial sums of the block sizes, including 0 and the GL rank."""
        out, pos = {0}, 0
        for b in self.blocks:
            pos += b
            out.add(pos)
        return frozenset(out)

    def contained_in(self, other: "LeviDatum") -> bool:
        """True iff self is a standard Levi inside other."""
        if self.m != other.m or self.sp_rank > other.sp_rank:
            return False
        return other.cuts() <= self.cuts()

    def simple_root_indices(self) -> tuple:
        """1-based indices i with alpha_i a simple root of this Levi."""
        out = []
        for i in range(1, self.m + 1):
            if i < self.m:
                a, b = self.block_of(i - 1), self.block_of(i)
                if (a is not None and a == b) or (a is None and b is None):
                    out.append(i)
            elif self.sp_rank > 0:
                out.append(i)
        return tuple(out)

    def embed(self, coords: Sequence) -> tuple:
        """Block-constant extension of a vector in R^k to R^m."""
        coords = vec(coords)
        if len(coords) != self.k:
            raise ValueError(f"expected {self.k} coordinates, got {len(coords)}")
        out = []
        for c, b in zip(coords, self.blocks):
            out.extend([c] * b)
        out.extend([Fraction(0)] * self.sp_rank)
        return tuple(out)

    def pairing(self, a: Sequence, b: Sequence) -> Fraction:
        """Inner product on R^k induced from R^m via the embedding."""
        return sum((frac(x) * frac(y) * n for x, y, n in zip(a, b, self.blocks)), Fraction(0))

    def merge(self, boundaries: Sequence[int]) -> "LeviDatum":
        """Levi obtained by removing the listed relative simple roots.

        boundaries are 0-based indices j into the relative simple roots: j < k-1
        merges blocks j and j+1, j = k-1 absorbs the last block into the tail.
        """
        drop = set(boundaries)
        tail = self.sp_rank
        sizes = list(self.blocks)
        groups = []
        cur = [sizes[0]] if sizes else []
        for j in range(len(sizes) - 1):
            if j in drop:
                cur.append(sizes[j + 1])
            else:
                groups.append(cur)
                cur = [sizes[j + 1]]
        if cur:
            groups.append(cur)
        if self.k - 1 in drop and groups:
            tail += sum(groups.pop())
        return LeviDatum(tuple(sum(g) for g in groups), tail)


@dataclass(frozen=True)
class ExpVector:
    """Exact vector tagged with its space: 'a0' (R^m) or 'aM' (R^k)."""

    coords: tuple
    space: str = "a0"

    def __post_init__(self):
        object.__setattr__(self, "coords", vec(self.coords))
        if self.space not in ("a0", "aM"):
            raise ValueError(f"unknown space tag {self.space!r}")

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def as_strings(self) -> list:
        return [str(c) for c in self.coords]


def compositions(total: int) -> Iterator[tuple]:
    """All compositions of total into positive parts, in lexicographic order."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def standard_levis(m: int) -> list:
    """Every standard Levi of the rank m group."""
    out = []
    for r in range(m + 1):
        for comp in compositions(m - r):
            out.append(LeviDatum(comp, r))
    return out


def simple_roots(m: int) -> list:
    """alpha_i = e_i - e_{i+1} for i < m and alpha_m = 2 e_m, as integer tuples."""
    out = []
    for i in range(m - 1):
        v = [0] * m
        v[i], v[i + 1] = 1, -1
        out.append(tuple(v))
    v = [0] * m
    v[m - 1] = 2
    out.append(tuple(v))
    return out


def positive_roots(m: int) -> list:
    out = []
    for i in range(m):
        for j in range(i + 1, m):
            for s in (-1, 1):
                v = [0] * m
                v[i], v[j] = 1, s
                out.append(tuple(v))
        v = [0] * m
        v[i] = 2
        out.append(tuple(v))
    return out


def rho_zero(m: int) -> ExpVector:
    if m < 1:
        raise ValueError("rank must be positive")
    return ExpVector(tuple(range(m, 0, -1)), "a0")


def project_aM(v: Sequence, M: LeviDatum) -> ExpVector:
    """Orthogonal projection of v in R^m onto the centre of M, in block coordinates."""
    v = vec(v)
    if len(v) != M.m:
        raise ValueError(f"expected a vector of length {M.m}, got {len(v)}")
    out = []
    for o, b in zip(M.offsets(), M.blocks):
        out.append(sum(v[o : o + b], Fraction(0)) / b)
    return ExpVector(tuple(out), "aM")


def rho_P(M: LeviDatum) -> ExpVector:
    """Half-sum of the roots in the unipotent radical, as a vector of R^m."""
    return ExpVector(M.embed(project_aM(rho_zero(M.m).coords, M).coords) if M.m else (), "a0")


def simple_root_coords(v: Sequence, m: int) -> tuple:
    """Coefficients c with v = sum c_i alpha_i in the basis e_i - e_{i+1}, 2 e_m."""
    v = vec(v)
    if len(v) != m:
        raise ValueError(f"expected a vector of length {m}, got {len(v)}")
    out, acc = [], Fraction(0)
    for i in range(m - 1):
        acc += v[i]
        out.append(acc)
    out.append((acc + v[m - 1]) / 2)
    return tuple(out)


def from_simple_root_coords(c: Sequence, m: int) -> tuple:
    out = [Fraction(0)] * m
    for ci, a in zip(vec(c), simple_roots(m)):
        for j in range(m):
            out[j] += ci * a[j]
    return tuple(out)


def delta_p_elements(M: LeviDatum) -> list:
    """Nonzero projections of the simple roots onto the centre of M, deduplicated.

    The list is ordered by the simple root it comes from; entry j corresponds to
    the boundary after block j (and the last one to the long direction).
    """
    out = []
    for a in simple_roots(M.m):
        p = project_aM(a, M)
        if any(p.coords) and p not in out:
            out.append(p)
    return out


def pairing_coroot(lam: Sequence, beta: Sequence) -> Fraction:
    """<lam, beta^vee> for a root beta of C_m given as a coordinate vector."""
    beta = vec(beta)
    return 2 * dot(vec(lam), beta) / dot(beta, beta)


def levi_roots(M: LeviDatum) -> set:
    """All roots of M, as integer tuples."""
    m = M.m
    out = set()
    for beta in positive_roots(m):
        support = [i for i, c in enumerate(beta) if c]
        blocks = {M.block_of(i) for i in support}
        if len(blocks) != 1:
            continue
        (b,) = blocks
        if b is None or (len(support) == 2 and beta[support[0]] == -beta[support[1]]):
            out.add(beta)
            out.add(tuple(-c for c in beta))
    return out


def block_signed_images(k: int) -> Iterator[tuple]:
    """Signed permutations of k block labels (helper for transport searches)."""
    from itertools import permutations

    for perm in permutations(range(1, k + 1)):
        for signs in product((1, -1), repeat=k):
            yield tuple(s * p for s, p in zip(signs, perm))
