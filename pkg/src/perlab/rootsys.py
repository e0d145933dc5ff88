"""Root system C_m and its Weyl group realised as signed permutations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _kernel
from .errors import check_size
from .levi import LeviDatum, positive_roots
from .linalg import dot, vec

WEYL_RANK_LIMIT = 7


@dataclass(frozen=True)
class Root:
    """A root of C_m.

    Short roots are sign*(e_i + sign_j e_j) with i < j, long roots are
    sign*2e_i (then j is None).  Indices are 1-based.
    """

    m: int
    i: int
    j: int | None = None
    sign_j: int = 1
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1) or self.sign_j not in (1, -1):
            raise ValueError("signs must be +1 or -1")
        if self.j is None:
            if not 1 <= self.i <= self.m:
                raise ValueError(f"long root index {self.i} out of range for rank {self.m}")
        elif not 1 <= self.i < self.j <= self.m:
            raise ValueError(f"short root needs 1 <= i < j <= m, got i={self.i}, j={self.j}, m={self.m}")

    @classmethod
    def short(cls, m, i, j, sign_j=1, sign=1) -> "Root":
        return cls(m, i, j, sign_j, sign)

    @classmethod
    def long(cls, m, i, sign=1) -> "Root":
        return cls(m, i, None, 1, sign)

    @classmethod
    def simple(cls, m, i) -> "Root":
        """alpha_i = e_i - e_{i+1} (i < m) or 2e_m."""
        return cls.long(m, m) if i == m else cls.short(m, i, i + 1, -1)

    @classmethod
    def from_vector(cls, v: Sequence[int]) -> "Root":
        m = len(v)
        support = [k for k, c in enumerate(v) if c]
        if len(support) == 1 and abs(v[support[0]]) == 2:
            i = support[0]
            return cls.long(m, i + 1, 1 if v[i] > 0 else -1)
        if len(support) == 2 and all(abs(v[k]) == 1 for k in support):
            a, b = support
            s = 1 if v[a] > 0 else -1
            return cls.short(m, a + 1, b + 1, v[b] * s, s)
        raise ValueError(f"{tuple(v)} is not a root of C_{m}")

    @property
    def is_long(self) -> bool:
        return self.j is None

    def vector(self) -> tuple:
        v = [0] * self.m
        if self.j is None:
            v[self.i - 1] = 2 * self.sign
        else:
            v[self.i - 1] = self.sign
            v[self.j - 1] = self.sign * self.sign_j
        return tuple(v)

    def negate(self) -> "Root":
        return Root(self.m, self.i, self.j, self.sign_j, -self.sign)

    def is_positive(self) -> bool:
        return self.sign > 0


def is_root(v: Sequence) -> bool:
    try:
        Root.from_vector(tuple(int(c) if c == int(c) else c for c in v))
    except (ValueError, TypeError):
        return False
    return True


def all_roots(m: int) -> list:
    out = []
    for b in positive_roots(m):
        out.append(Root.from_vector(b))
        out.append(Root.from_vector(tuple(-c for c in b)))
    return out


class SignedPerm:
    """Weyl group element of C_m; images[i-1] = +-sigma(i)."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(abs(x) for x in images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a signed permutation")
        self.images = images

    @classmethod
    def identity(cls, m: int) -> "SignedPerm":
        return cls(range(1, m + 1))

    @property
    def m(self) -> int:
        return len(self.images)

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        if other.m != self.m:
            raise ValueError("rank mismatch")
        return SignedPerm(_kernel.compose(self.images, other.images))

    def inverse(self) -> "SignedPerm":
        return SignedPerm(_kernel.inverse(self.images))

    def length(self) -> int:
        return _kernel.length(self.images)

    def is_involution(self) -> bool:
        return _kernel.is_involution(self.images)

    def act(self, v: Sequence) -> tuple:
        return _kernel.act(self.images, tuple(v))

    def act_root(self, beta: Root) -> Root:
        return Root.from_vector(self.act(beta.vector()))

    def __eq__(self, other):
        return isinstance(other, SignedPerm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __repr__(self):
        return f"SignedPerm{self.images}"


def weyl_act(w: SignedPerm, v: Sequence) -> tuple:
    """(w v)_{|t(i)|} = sign(t(i)) v_i."""
    return w.act(vec(v))


def reflect(beta: Root) -> SignedPerm:
    m = beta.m
    img = list(range(1, m + 1))
    if beta.j is None:
        img[beta.i - 1] = -beta.i
    elif beta.sign_j < 0:  # e_i - e_j swaps the two coordinates
        img[beta.i - 1], img[beta.j - 1] = beta.j, beta.i
    else:  # e_i + e_j
        img[beta.i - 1], img[beta.j - 1] = -beta.j, -beta.i
    return SignedPerm(img)


def simple_reflection(i: int, m: int) -> SignedPerm:
    return reflect(Root.simple(m, i))


def is_strongly_orthogonal(b1: Root, b2: Root) -> bool:
    """Orthogonal roots whose sum and difference are both non-roots."""
    if b1.m != b2.m:
        raise ValueError("roots of different rank")
    v1, v2 = b1.vector(), b2.vector()
    if dot(vec(v1), vec(v2)) != 0:
        return False
    plus = tuple(a + b for a, b in zip(v1, v2))
    minus = tuple(a - b for a, b in zip(v1, v2))
    return not is_root(plus) and not is_root(minus)


def longest_levi_element(L: LeviDatum) -> SignedPerm:
    """w_0^L: reverses every GL block and acts as -1 on the Sp tail."""
    img = []
    for o, b in zip(L.offsets(), L.blocks):
        img.extend(range(o + b, o, -1))
    img.extend(-c for c in range(L.gl_rank + 1, L.m + 1))
    return SignedPerm(img)


def longest_relative(M: LeviDatum, L: LeviDatum) -> SignedPerm:
    """w_M^L = w_0^L w_0^M, the longest w in W^L with w(Delta^M) inside Delta_0."""
    if not M.contained_in(L):
        raise ValueError(f"{M} is not contained in {L}")
    return longest_levi_element(L) * longest_levi_element(M)


def enumerate_weyl(m: int) -> list:
    if m < 1:
        raise ValueError("rank must be positive")
    check_size(m, WEYL_RANK_LIMIT, "m")
    return [SignedPerm(t) for t in _kernel.enumerate_all(m)]


def levi_weyl_group(L: LeviDatum) -> list:
    """W_L as the pointwise stabiliser of the centre of L; small ranks only."""
    return [w for w in enumerate_weyl(L.m) if _fixes_centre(w, L)]


def _fixes_centre(w: SignedPerm, L: LeviDatum) -> bool:
    for j in range(L.k):
        basis = [0] * L.k
        basis[j] = 1
        h = L.embed(basis)
        if w.act(h) != h:
            return False
    return True
