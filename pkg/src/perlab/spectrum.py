"""Decision procedures for distinguished spectral data.

Cuspidal representations are opaque labels carrying declared flags.  Classes
(M, pi, S) pair a Levi and a label per block with an affine subspace S of the
block coordinates; transports act on all three by signed block permutations
(plain permutations on the GL side), dualising labels on negated blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterator, Sequence

from .levi import ExpVector, LeviDatum, simple_root_coords
from .linalg import AffineSubspace, frac, vec
from .orbits import balanced_signs


@dataclass(frozen=True)
class CuspLabel:
    id: str
    gl_size: int = field(compare=False)
    is_trivial_char: bool = field(default=False, compare=False)
    is_glhalf_distinguished: bool = field(default=False, compare=False)
    is_selfdual: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.gl_size < 1:
            raise ValueError("gl_size must be positive")
        if self.is_trivial_char:
            if self.gl_size != 1:
                raise ValueError("the trivial character lives on GL_1")
            object.__setattr__(self, "is_selfdual", True)
        if self.is_glhalf_distinguished and self.gl_size % 2:
            raise ValueError("GL_{m/2} x GL_{m/2}-distinction needs m even")

    def dual(self) -> "CuspLabel":
        if self.is_selfdual:
            return self
        new = self.id[:-1] if self.id.endswith("~") else self.id + "~"
        return CuspLabel(new, self.gl_size, self.is_trivial_char, self.is_glhalf_distinguished, False)

    def twisted(self, sign: int) -> "CuspLabel":
        return self if sign > 0 else self.dual()

    def __str__(self):
        return self.id


TRIVIAL = CuspLabel("1", 1, is_trivial_char=True)


@dataclass(frozen=True)
class Speh:
    tau: CuspLabel
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("Speh parameter must be positive")

    @property
    def size(self) -> int:
        return self.r * self.tau.gl_size

    def exponent(self) -> tuple:
        """((r-1)/2, (r-3)/2, ..., (1-r)/2)."""
        return tuple(Fraction(self.r - 1 - 2 * i, 2) for i in range(self.r))


@dataclass(frozen=True)
class SpRepDatum:
    """Cuspidal support (M', pi', mu') of a discrete-spectrum member of a smaller Sp."""

    levi: LeviDatum
    labels: tuple
    mu: ExpVector


@dataclass(frozen=True)
class DiscreteDatum:
    group: str
    levi: LeviDatum
    factors: tuple
    sp_factor: SpRepDatum | None = None

    def __post_init__(self):
        if self.group not in ("GL", "Sp"):
            raise ValueError(f"unknown group {self.group!r}")
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) != self.levi.k:
            raise ValueError("one Speh factor per GL block is required")
        for f, b in zip(self.factors, self.levi.blocks):
            if f.size != b:
                raise ValueError(f"Speh({f.tau}, {f.r}) has size {f.size}, block has size {b}")
        if self.group == "GL" and self.levi.sp_rank:
            raise ValueError("a GL datum has no Sp tail")
        if self.sp_factor is not None and self.sp_factor.levi.m != self.levi.sp_rank:
            raise ValueError("Sp factor rank does not match the tail")


@dataclass(frozen=True)
class SpectralClass:
    levi: LeviDatum
    labels: tuple
    subspace: AffineSubspace

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) != self.levi.k:
            raise ValueError("one label per block is required")
        if self.subspace.ambient_dim != self.levi.k:
            raise ValueError("subspace must live in the block coordinates")
        for lab, b in zip(self.labels, self.levi.blocks):
            if lab.gl_size != b:
                raise ValueError(f"label {lab} lives on GL_{lab.gl_size}, block has size {b}")

    def transport(self, images: Sequence[int]) -> "SpectralClass":
        """Apply a signed block permutation (images[i] = +-j sends block i to slot j)."""
        k = self.levi.k
        if sorted(abs(t) for t in images) != list(range(1, k + 1)):
            raise ValueError(f"{images} is not a signed permutation of {k} blocks")
        blocks = [0] * k
        labels = [None] * k
        rows = [[Fraction(0)] * k for _ in range(k)]
        for i, t in enumerate(images):
            j = abs(t) - 1
            sign = 1 if t > 0 else -1
            blocks[j] = self.levi.blocks[i]
            labels[j] = self.labels[i].twisted(sign)
            rows[j][i] = Fraction(sign)
        return SpectralClass(LeviDatum(tuple(blocks), self.levi.sp_rank), tuple(labels), self.subspace.map(rows))

    def canonical(self) -> tuple:
        return (self.levi, tuple(lab.id for lab in self.labels), self.subspace.canonical())


# -- shared helpers ----------------------------------------------------------


def _unit(k: int, *entries) -> tuple:
    v = [Fraction(0)] * k
    for i, c in entries:
        v[i] += c
    return tuple(v)


def _block_constants(c: SpectralClass) -> list:
    k = c.levi.k
    return [c.subspace.restriction_constant(_unit(k, (i, 1))) for i in range(k)]


# -- GL side -----------------------------------------------------------------


def gl_is_H_dist_datum(d: DiscreteDatum) -> bool:
    """Every block even and every Speh parameter even."""
    return all(b % 2 == 0 for b in d.levi.blocks) and all(f.r % 2 == 0 for f in d.factors)


def gl_datum_class(d: DiscreteDatum) -> SpectralClass:
    """[(M_pi, pi, mu_delta + a_L^{G,*})] for a GL discrete datum."""
    if d.group != "GL":
        raise ValueError("expected a GL datum")
    blocks, labels, base, owner = [], [], [], []
    for idx, f in enumerate(d.factors):
        blocks += [f.tau.gl_size] * f.r
        labels += [f.tau] * f.r
        base += list(f.exponent())
        owner += [idx] * f.r
    k = len(blocks)
    # a_L^* inside the trace-zero part: sum_f c_f * size_f = 0
    sizes = [f.size for f in d.factors]
    dirs = []
    for idx in range(1, len(d.factors)):
        c = [Fraction(0)] * len(d.factors)
        c[0] = Fraction(sizes[idx])
        c[idx] = Fraction(-sizes[0])
        dirs.append(tuple(c[owner[i]] for i in range(k)))
    return SpectralClass(LeviDatum(tuple(blocks), 0), tuple(labels), AffineSubspace(tuple(base), tuple(dirs)))


def _weighted_trace_zero(c: SpectralClass) -> bool:
    return c.subspace.restriction_constant(vec(c.levi.blocks)) == 0


def gl_classify_class(c: SpectralClass) -> bool:
    """Does some block permutation carry c into an (M, tau_1 x tau_1 x ..., (l_i+1/2, l_i-1/2)) class?

    That happens iff the blocks split into ordered pairs (a, b) with equal
    labels and x_a - x_b = 1 on S, with S inside the weighted trace-zero space.
    """
    if c.levi.sp_rank:
        raise ValueError("a GL class has no Sp tail")
    k = c.levi.k
    if k % 2 or not _weighted_trace_zero(c):
        return False
    ok = {}
    for a in range(k):
        for b in range(k):
            if a != b and c.labels[a] == c.labels[b]:
                ok[a, b] = c.subspace.restriction_constant(_unit(k, (a, 1), (b, -1))) == 1

    def match(free: frozenset) -> bool:
        if not free:
            return True
        a = min(free)
        rest = free - {a}
        return any((ok.get((a, b)) or ok.get((b, a))) and match(rest - {b}) for b in rest)

    return match(frozenset(range(k)))


def gl_convergence_check(lam: Sequence, M: LeviDatum) -> bool:
    """pr_H(Re lam) - (1, ..., 1) has negative C_n coefficients off pr_H(Delta_0^M)."""
    lam = [_re(x) for x in lam]
    if M.sp_rank or M.gl_rank != len(lam) or len(lam) % 2:
        raise ValueError(f"lambda of length {len(lam)} does not fit the GL composition {M}")
    n = len(lam) // 2
    y = [lam[j] - lam[2 * n - 1 - j] - 1 for j in range(n)]
    coef = simple_root_coords(y, n)
    covered = set()
    for i in range(1, 2 * n):
        a, b = M.block_of(i - 1), M.block_of(i)
        if a == b:
            covered.add(min(i, 2 * n - i))
    return all(coef[i - 1] < 0 for i in range(1, n + 1) if i not in covered)


def _re(x):
    if isinstance(x, complex):
        return frac(str(x.real)) if x.real == int(x.real) else Fraction(x.real)
    if isinstance(x, float):
        return Fraction(x)
    return frac(x)


# -- Sp side -----------------------------------------------------------------


@lru_cache(maxsize=None)
def _lambda_multisets(l2: int) -> frozenset:
    out = set()
    for h in balanced_signs(l2):
        lam = []
        for i in range(l2):
            same = sum(1 for j in range(i, l2) if h[j] == h[i])
            lam.append(abs(2 * same - (l2 - i)))
        out.add(tuple(sorted(lam)))
    return frozenset(out)


def sp_classify_class(c: SpectralClass) -> bool:
    """Is some transport of c contained in a class attached to a cuspidal orbit?

    The target shape has (tau, tau) pairs carrying (nu + 1/2, nu - 1/2) with
    nu free, GL_{s/2} x GL_{s/2}-distinguished even blocks at +-1/2, and
    trivial characters on size-one blocks whose absolute values match the
    orbit exponent of a balanced sign sequence.
    """
    if c.levi.sp_rank:
        return False
    k = c.levi.k
    consts = _block_constants(c)
    pair_ok = {}
    for a in range(k):
        for b in range(a + 1, k):
            if c.levi.blocks[a] != c.levi.blocks[b]:
                continue
            good = False
            for ea, eb in product((1, -1), repeat=2):
                if c.labels[a].twisted(ea) != c.labels[b].twisted(eb):
                    continue
                val = c.subspace.restriction_constant(_unit(k, (a, ea), (b, -eb)))
                if val is not None and abs(val) == 1:
                    good = True
                    break
            pair_ok[a, b] = good

    def search(free: frozenset, ones: tuple) -> bool:
        if not free:
            return len(ones) % 2 == 0 and tuple(sorted(ones)) in _lambda_multisets(len(ones))
        a = min(free)
        rest = free - {a}
        lab, size, val = c.labels[a], c.levi.blocks[a], consts[a]
        if size % 2 == 0 and lab.is_glhalf_distinguished and val is not None and abs(val) == Fraction(1, 2):
            if search(rest, ones):
                return True
        if size == 1 and lab.is_trivial_char and val is not None:
            if search(rest, ones + (abs(val),)):
                return True
        return any(pair_ok.get((a, b)) and search(rest - {b}, ones) for b in rest)

    return search(frozenset(range(k)), ())


def sp_is_H_type_datum(d: DiscreteDatum) -> bool:
    if d.group != "Sp":
        raise ValueError("expected an Sp datum")
    if not all(f.size % 2 == 0 and f.r % 2 == 0 for f in d.factors):
        return False
    if d.levi.sp_rank == 0:
        return True
    if d.sp_factor is None:
        raise ValueError("the Sp factor needs its cuspidal support")
    sp = d.sp_factor
    return sp_classify_class(SpectralClass(sp.levi, sp.labels, AffineSubspace.point(sp.mu.coords)))


def sp_convergence_check(lam: Sequence, M: LeviDatum) -> bool:
    """Re lam + (0, 1, ..., n-1, -n, ..., -1) has negative coefficients off Delta_0^M."""
    lam = [_re(x) for x in lam]
    m = len(lam)
    if m != M.m or m % 2:
        raise ValueError(f"lambda of length {m} does not fit {M}")
    n = m // 2
    shift = list(range(n)) + list(range(-n, 0))
    coef = simple_root_coords([a + b for a, b in zip(lam, shift)], m)
    inside = set(M.simple_root_indices())
    return all(coef[i - 1] < 0 for i in range(1, m + 1) if i not in inside)


# -- transports and domination -------------------------------------------------


def transports(k: int, signed: bool = True) -> Iterator[tuple]:
    for perm in permutations(range(1, k + 1)):
        for signs in product((1, -1), repeat=k) if signed else [(1,) * k]:
            yield tuple(s * p for s, p in zip(signs, perm))


def dominates(c1: SpectralClass, c2: SpectralClass, group: str = "Sp") -> bool:
    """c1 dominates c2: a transport of c1 has the same (M, pi) and contains S_2."""
    if c1.levi.k != c2.levi.k or c1.levi.m != c2.levi.m:
        return False
    for w in transports(c1.levi.k, signed=group == "Sp"):
        t = c1.transport(w)
        if t.levi == c2.levi and t.labels == c2.labels and t.subspace.contains(c2.subspace):
            return True
    return False


def canonical_class(c: SpectralClass, group: str = "Sp") -> tuple:
    """Least canonical form over all transports; equal iff the classes are transports of each other."""
    return min(
        (c.transport(w).canonical() for w in transports(c.levi.k, signed=group == "Sp")),
        key=repr,
    )
