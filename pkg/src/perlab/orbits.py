"""Orbits of Levi subgroups on the symmetric space of balanced symplectic involutions.

An element x normalising a standard Levi M permutes the block spaces V_i and
their duals.  Up to M-conjugacy it is pinned down by an ``OrbitKey``: the
signed block involution it induces, the signature (p_i, q_i) on every block
it fixes, and the signature (p, q) on the Sp tail.  Matrices are built from
keys on demand, and canonical keys are read back off matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterator, Sequence

from . import sympmat
from .errors import check_size
from .levi import LeviDatum, delta_p_elements, levi_roots
from .linalg import nullspace
from .rootsys import SignedPerm, longest_relative
from .sympmat import ExactMatrix, SympInvolution

ORBIT_RANK_LIMIT = 6


@dataclass(frozen=True)
class OrbitData:
    """The datum (p_1, q_1, ..., p_l, q_l; p, q) with its block pattern."""

    r_list: tuple = ()
    s_list: tuple = ()
    t_list: tuple = ()
    pq_list: tuple = ()
    p: int = 0
    q: int = 0

    def __post_init__(self):
        for name in ("r_list", "s_list", "t_list", "pq_list"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if any(t % 2 for t in self.t_list):
            raise ValueError(f"t blocks must be even: {self.t_list}")
        if len(self.pq_list) != len(self.s_list):
            raise ValueError("one (p_i, q_i) per s block is required")
        for s, (pi, qi) in zip(self.s_list, self.pq_list):
            if pi + qi != s or pi < 0 or qi < 0:
                raise ValueError(f"(p_i, q_i)=({pi}, {qi}) does not split s={s}")
        if self.p + sum(p for p, _ in self.pq_list) != self.q + sum(q for _, q in self.pq_list):
            raise ValueError("signature condition fails")

    @property
    def u(self) -> int:
        return self.p + self.q

    @property
    def v(self) -> int:
        return self.u + sum(self.t_list)

    def levi(self) -> LeviDatum:
        blocks = []
        for r in self.r_list:
            blocks += [r, r]
        return LeviDatum(tuple(blocks) + self.s_list + self.t_list, self.u)

    def pair_levi(self) -> LeviDatum:
        return LeviDatum(tuple(2 * r for r in self.r_list) + self.s_list, self.v)


def x_p(data: OrbitData, alternative: bool = False) -> ExactMatrix:
    """The representative iota(x_alpha, y_beta; z_gamma) of the orbit with this datum.

    With alternative=True, every even block with p_i = q_i uses the swap
    [[0, I], [I, 0]] in place of diag(I, -I); the two are GL-conjugate.
    """
    parts, sizes = [], []
    if data.r_list:
        parts.append(sympmat.special_blocks("x_alpha", r_list=data.r_list))
        sizes.append(2 * sum(data.r_list))
    if data.s_list:
        ys = []
        for s, (pi, qi) in zip(data.s_list, data.pq_list):
            if alternative and s % 2 == 0 and pi == qi:
                ys.append(sympmat.special_blocks("swap", r=s // 2))
            else:
                ys.append(sympmat.special_blocks("y_beta", pq_list=((pi, qi),)))
        parts.append(ExactMatrix.block_diag(ys))
        sizes.append(sum(data.s_list))
    z = sympmat.special_blocks("z_gamma", t_list=data.t_list, p=data.p, q=data.q)
    coarse = LeviDatum(tuple(sizes), data.v)
    return sympmat.iota(coarse, parts, z if data.v else None)


@dataclass(frozen=True)
class OrbitKey:
    """Canonical M-orbit data of x in N_G(M) cap X.

    images: signed block involution (1-based); signatures: (p_i, q_i) for each
    block fixed with sign +, None otherwise; tail: (p, q) on the Sp tail.
    """

    levi: LeviDatum
    images: tuple
    signatures: tuple
    tail: tuple = (0, 0)

    def fixed_plus(self) -> list:
        return [i for i, t in enumerate(self.images, start=1) if t == i]

    def fixed_minus(self) -> list:
        return [i for i, t in enumerate(self.images, start=1) if t == -i]

    def pairs(self) -> list:
        return [(i, t) for i, t in enumerate(self.images, start=1) if abs(t) > i]

    def trace(self) -> int:
        tr = sum(2 * (p - q) for p, q in (s for s in self.signatures if s is not None))
        return tr + 2 * (self.tail[0] - self.tail[1])

    def as_dict(self) -> dict:
        return {
            "levi": str(self.levi),
            "images": list(self.images),
            "signatures": [list(s) if s else None for s in self.signatures],
            "tail": list(self.tail),
        }


def build_representative(key: OrbitKey) -> ExactMatrix:
    """Matrix in N_G(M) realising the key (swap blocks, diag signs, antidiagonal d_t)."""
    M = key.levi
    d = 2 * M.m
    rows = [[Fraction(0)] * d for _ in range(d)]
    offs = M.offsets()

    def dual(c):
        return d - 1 - c

    for i, t in enumerate(key.images, start=1):
        o, b = offs[i - 1], M.blocks[i - 1]
        j = abs(t)
        oj = offs[j - 1]
        if t == i:
            pi, qi = key.signatures[i - 1]
            signs = [1] * pi + [-1] * qi
            for a, s in enumerate(signs):
                rows[o + a][o + a] = Fraction(s)
            # g* = w g w for a diagonal involution g: reversed entries on the dual block
            for a, s in enumerate(signs):
                rows[dual(o + a)][dual(o + a)] = Fraction(s)
        elif t == -i:
            if b % 2:
                raise ValueError("a block sent to its own dual must have even size")
            dt = [1] * (b // 2) + [-1] * (b // 2)
            for a in range(b):
                # x e_{o+a} = dt[a] e_{(o+b-1-a)'}
                rows[dual(o + b - 1 - a)][o + a] = Fraction(dt[a])
                rows[o + a][dual(o + b - 1 - a)] = Fraction(dt[a])
        elif t > 0:
            for a in range(b):
                rows[oj + a][o + a] = Fraction(1)
                rows[dual(oj + a)][dual(o + a)] = Fraction(1)
        else:
            # i -> -j: e_{o+a} -> e_{(oj+b-1-a)'} and e_{(o+a)'} -> +-e_{oj+b-1-a}
            sign = 1 if i < j else -1
            for a in range(b):
                c = oj + b - 1 - a
                rows[dual(c)][o + a] = Fraction(sign)
                rows[c][dual(o + a)] = Fraction(-sign)
    g = M.gl_rank
    p, q = key.tail
    for a, s in enumerate([1] * p + [-1] * (2 * q) + [1] * p):
        rows[g + a][g + a] = Fraction(s)
    return ExactMatrix(rows)


def orbit_key(M: LeviDatum, x: ExactMatrix) -> OrbitKey:
    images = sympmat.block_images(x, M)
    if images is None:
        raise ValueError("x does not normalise M")
    offs = M.offsets()
    sigs = []
    for i, t in enumerate(images, start=1):
        if t == i:
            o, b = offs[i - 1], M.blocks[i - 1]
            cs = range(o, o + b)
            tr = x.submatrix(cs, cs).trace()
            sigs.append((int((b + tr) / 2), int((b - tr) / 2)))
        else:
            sigs.append(None)
    r = M.sp_rank
    if r:
        cs = range(M.gl_rank, 2 * M.m - M.gl_rank)
        tr = x.submatrix(cs, cs).trace()
        tail = (int((r + tr / 2) / 2), int((r - tr / 2) / 2))
    else:
        tail = (0, 0)
    return OrbitKey(M, images, tuple(sigs), tail)


def _signed_involutions(sizes: Sequence[int]) -> Iterator[tuple]:
    """Signed block involutions pairing only blocks of equal size."""
    k = len(sizes)

    def rec(img):
        try:
            i = img.index(0)
        except ValueError:
            yield tuple(img)
            return
        img[i] = i + 1
        yield from rec(img)
        if sizes[i] % 2 == 0:
            img[i] = -(i + 1)
            yield from rec(img)
        for j in range(i + 1, k):
            if img[j] == 0 and sizes[j] == sizes[i]:
                for s in (1, -1):
                    img[i], img[j] = s * (j + 1), s * (i + 1)
                    yield from rec(img)
                img[j] = 0
        img[i] = 0

    yield from rec([0] * k)


def enumerate_orbit_keys(M: LeviDatum) -> list:
    """All M-orbits in N_G(M) cap X, as canonical keys."""
    check_size(M.m, ORBIT_RANK_LIMIT, "2n")
    out = []
    for images in _signed_involutions(M.blocks):
        fixed = [i for i, t in enumerate(images, start=1) if t == i]
        choices = [range(M.blocks[i - 1] + 1) for i in fixed]
        for ps in product(*choices, range(M.sp_rank + 1)):
            sigs = [None] * M.k
            for i, p in zip(fixed, ps):
                sigs[i - 1] = (p, M.blocks[i - 1] - p)
            tail = (ps[-1], M.sp_rank - ps[-1])
            key = OrbitKey(M, images, tuple(sigs), tail)
            if key.trace() == 0:
                out.append(key)
    return out


def is_cuspidal_key(key: OrbitKey) -> bool:
    """Local cuspidality test on the canonical data."""
    if key.levi.sp_rank:
        return False
    for i, t in enumerate(key.images, start=1):
        if t == -i:
            return False
        if t == i:
            b = key.levi.blocks[i - 1]
            p, q = key.signatures[i - 1]
            if not (b == 1 or (b % 2 == 0 and p == q)):
                return False
    return True


# -- Weyl group side -------------------------------------------------------


def classify_involution(w: SignedPerm) -> int | None:
    """k if w is a product of k pairwise strongly orthogonal short reflections, else None."""
    if not w.is_involution():
        raise ValueError(f"{w} is not an involution")
    k = 0
    for i, t in enumerate(w.images, start=1):
        if t == -i:
            return None
        if abs(t) > i:
            k += 1
    return k


def t_orbit_count(n: int, k: int) -> int:
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    return comb(2 * (n - k), n - k)


def is_M_admissible(w: SignedPerm, M: LeviDatum) -> bool:
    roots = levi_roots(M)
    return all(tuple(w.act(b)) in roots for b in roots)


def block_action(w: SignedPerm, M: LeviDatum) -> tuple:
    """Signed block images of a Weyl element normalising M."""
    out = []
    for i in range(M.k):
        e = [0] * M.k
        e[i] = 1
        img = w.act(M.embed(e))
        found = None
        for j in range(M.k):
            for s in (1, -1):
                f = [0] * M.k
                f[j] = s
                if tuple(img) == M.embed(f):
                    found = s * (j + 1)
        if found is None:
            raise ValueError(f"{w} does not normalise {M}")
        out.append(found)
    return tuple(out)


def block_matrix(images: Sequence[int]) -> list:
    """k x k signed permutation matrix of a block action (columns are images)."""
    k = len(images)
    rows = [[Fraction(0)] * k for _ in range(k)]
    for i, t in enumerate(images):
        rows[abs(t) - 1][i] = Fraction(1 if t > 0 else -1)
    return rows


def eigenspaces(images: Sequence[int]) -> tuple:
    """Bases of the +1 and -1 eigenspaces of a signed block involution on R^k."""
    A = block_matrix(images)
    k = len(images)
    plus = nullspace([[A[i][j] - (i == j) for j in range(k)] for i in range(k)], k)
    minus = nullspace([[A[i][j] + (i == j) for j in range(k)] for i in range(k)], k)
    return plus, minus


def levi_of_plus_space(M: LeviDatum, plus: Sequence[Sequence]) -> LeviDatum | None:
    """Standard L with centre equal to the given subspace of the centre of M, if any."""
    deltas = delta_p_elements(M)
    S = [j for j, a in enumerate(deltas) if all(M.pairing(a.coords, h) == 0 for h in plus)]
    if len(plus) != M.k - len(S):
        return None
    return M.merge(S)


def weyl_image(M: LeviDatum, images: Sequence[int]) -> SignedPerm:
    """Canonical Weyl element inducing a signed block involution.

    A block sent to +j maps order-preservingly onto block j; a block sent to
    -j maps onto block j reversed and negated; the Sp tail is fixed.
    """
    offs = M.offsets()
    img = list(range(1, M.m + 1))
    for i, t in enumerate(images):
        o, b = offs[i], M.blocks[i]
        oj = offs[abs(t) - 1]
        for a in range(b):
            img[o + a] = (oj + a + 1) if t > 0 else -(oj + b - a)
    return SignedPerm(img)


def is_M_minimal(w: SignedPerm, M: LeviDatum) -> LeviDatum | None:
    """L with w = w_M^L acting as -1 on the complement of the centre of L, or None."""
    if not w.is_involution():
        raise ValueError(f"{w} is not an involution")
    if not is_M_admissible(w, M):
        raise ValueError(f"{w} does not normalise {M}")
    images = block_action(w, M)
    plus, _ = eigenspaces(images)
    L = levi_of_plus_space(M, plus)
    if L is None:
        return None
    return L if longest_relative(M, L) == w else None


def is_standard_relevant(M: LeviDatum, L: LeviDatum) -> bool:
    """M = (r,r,...,s,...,t,...;u) and L = (2r,...,s,...;v) with every t even."""
    if not M.contained_in(L):
        raise ValueError(f"{M} is not contained in {L}")
    groups, pos, i = [], 0, 0
    for size in L.blocks:
        g, acc = [], 0
        while acc < size:
            g.append(M.blocks[i])
            acc += M.blocks[i]
            i += 1
        groups.append(g)
    seen_single = False
    for g in groups:
        if len(g) == 2:
            if seen_single or g[0] != g[1]:
                return False
        elif len(g) == 1:
            seen_single = True
        else:
            return False
    return all(t % 2 == 0 for t in M.blocks[i:])


def is_standard_relevant_vertex(M: LeviDatum, key: OrbitKey) -> bool:
    L = is_M_minimal(weyl_image(M, key.images), M)
    return L is not None and is_standard_relevant(M, L)


# -- cuspidal orbits --------------------------------------------------------


@dataclass(frozen=True)
class CuspidalOrbit:
    levi: LeviDatum
    pair_levi: LeviDatum
    data: OrbitData
    rep: SympInvolution
    h: tuple
    l1: int

    @property
    def k(self) -> int:
        return len(self.data.r_list)

    @property
    def l2(self) -> int:
        return len(self.h)

    @property
    def key(self) -> OrbitKey:
        return orbit_key(self.levi, self.rep.matrix)

    def as_dict(self) -> dict:
        return {
            "levi": str(self.levi),
            "pair_levi": str(self.pair_levi),
            "r": list(self.data.r_list),
            "s": list(self.data.s_list),
            "pq": [list(x) for x in self.data.pq_list],
            "h": list(self.h),
            "l1": self.l1,
        }


def balanced_signs(l2: int) -> list:
    if l2 % 2:
        return []
    return [h for h in product((1, -1), repeat=l2) if sum(h) == 0]


def make_cuspidal_orbit(M: LeviDatum, K: int, h: Sequence[int]) -> CuspidalOrbit:
    """Standard cuspidal orbit with K leading pairs and signs h on the size-1 tail."""
    blocks = M.blocks
    r_list = tuple(blocks[2 * i] for i in range(K))
    s_list = blocks[2 * K :]
    l2 = len(h)
    l1 = len(s_list) - l2
    pq = [(s // 2, s // 2) for s in s_list[:l1]] + [((1, 0) if e > 0 else (0, 1)) for e in h]
    data = OrbitData(r_list, s_list, (), tuple(pq), 0, 0)
    x = x_p(data)
    w = weyl_image(M, orbit_key(M, x).images)
    rep = SympInvolution(x, M, w, data)
    return CuspidalOrbit(M, data.pair_levi(), data, rep, tuple(h), l1)


def cuspidal_patterns(M: LeviDatum) -> list:
    """(K, l1, l2) for every leading-pair count K giving a cuspidal block pattern."""
    if M.sp_rank:
        return []
    out = []
    b = M.blocks
    for K in range(len(b) // 2 + 1):
        if any(b[2 * i] != b[2 * i + 1] for i in range(K)):
            break
        s = b[2 * K :]
        l1 = 0
        while l1 < len(s) and s[l1] % 2 == 0:
            l1 += 1
        if any(x != 1 for x in s[l1:]):
            continue
        l2 = len(s) - l1
        if l2 % 2:
            continue
        out.append((K, l1, l2))
    return out


def enumerate_cuspidal_orbits(M: LeviDatum) -> list:
    check_size(M.m, ORBIT_RANK_LIMIT, "2n")
    out = []
    for K, _, l2 in cuspidal_patterns(M):
        for h in balanced_signs(l2):
            orbit = make_cuspidal_orbit(M, K, h)
            if not sympmat.in_X(orbit.rep.matrix, M.m // 2):
                from .errors import InvariantError

                raise InvariantError(f"representative for {orbit.as_dict()} is not in X")
            out.append(orbit)
    return out


def centralizer_dim(M: LeviDatum, x) -> int:
    x = getattr(x, "matrix", x)
    if not sympmat.normalizes(x, M):
        raise ValueError("x does not normalise M")
    return len(sympmat.fixed_subspace(x, sympmat.lie_levi_basis(M)))


def is_vanishing_centralizer(M: LeviDatum, x) -> bool:
    """True iff (M, M_x) is a product containing a vanishing pair.

    Factors: a pair of blocks gives GL_r diagonally (not vanishing); a fixed
    block GL_s with centraliser GL_p x GL_q vanishes when p != q and s > 1; a
    block sent to its dual gives (GL_t, Sp_{t/2}) which vanishes; a nonzero
    Sp tail gives (Sp_u, Sp_p x Sp_q) which vanishes.
    """
    x = getattr(x, "matrix", x)
    if x.dim % 4 or not sympmat.in_X(x, x.dim // 4):
        raise ValueError("x is not in X")
    key = orbit_key(M, x)
    if M.sp_rank:
        return True
    for i, t in enumerate(key.images, start=1):
        if t == -i:
            return True
        if t == i:
            p, q = key.signatures[i - 1]
            if M.blocks[i - 1] > 1 and p != q:
                return True
    return False
