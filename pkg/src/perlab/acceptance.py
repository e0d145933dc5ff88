"""Executable acceptance checks, shared by the test suite and `perlab selftest`.

Each check returns a CheckResult; `slow=True` adds the 2n = 6 variants.
"""

from __future__ import annotations

import random
import time
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import comb

from . import sympmat
from .errors import PoleError
from .exponents import rho_x_formula, rho_x_oracle
from .graph import all_vertices, components, edges_from, normalize_to_standard_relevant, transport_exponent
from .levi import LeviDatum, compositions, standard_levis
from .linalg import AffineSubspace
from .orbits import (
    balanced_signs,
    classify_involution,
    enumerate_cuspidal_orbits,
    is_standard_relevant_vertex,
    orbit_key,
    t_orbit_count,
)
from .periods import J1, Jn, LocalField, REAL, is_pole, j1_real_quadrature, j1_series, j1_series_limit, jn_factor
from .rootsys import SignedPerm, enumerate_weyl, longest_levi_element, simple_reflection
from .spectrum import (
    TRIVIAL,
    CuspLabel,
    DiscreteDatum,
    Speh,
    SpectralClass,
    gl_classify_class,
    gl_datum_class,
    gl_is_H_dist_datum,
    sp_classify_class,
    sp_convergence_check,
)


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] criterion {self.number:>2}: {self.title} ({self.detail}; {self.seconds:.2f}s)"


def _ranks(slow: bool) -> tuple:
    return (2, 4, 6) if slow else (2, 4)


def check_rho_formula(slow: bool = False) -> tuple:
    checked, bad = 0, []
    for m in _ranks(slow):
        for M in standard_levis(m):
            for o in enumerate_cuspidal_orbits(M):
                checked += 1
                if rho_x_formula(o).coords != rho_x_oracle(M, o.rep).coords:
                    bad.append((str(M), o.h))
    return not bad, f"{checked} orbits, {len(bad)} mismatches"


def check_exponent_transport(slow: bool = False) -> tuple:
    edges, bad = 0, 0
    for m in (2, 4):
        for v in all_vertices(m, cuspidal_only=True):
            rho = rho_x_oracle(v.levi, v.x)
            for e in edges_from(v):
                edges += 1
                if transport_exponent(e, rho).coords != rho_x_oracle(e.target.levi, e.target.x).coords:
                    bad += 1
    return bad == 0 and edges > 0, f"{edges} edges, {bad} failures"


def check_standard_relevant_components(slow: bool = False) -> tuple:
    ncomp, bad = 0, 0
    for m in (2, 4):
        verts = all_vertices(m, cuspidal_only=True)
        for comp in components(verts):
            ncomp += 1
            keys = {v.key for v in comp}
            for v in comp:
                n, std = normalize_to_standard_relevant(v)
                moved = orbit_key(std.levi, n @ v.x @ n.inverse())
                if std.key not in keys or moved != std.key or not is_standard_relevant_vertex(std.levi, std.key):
                    bad += 1
    return bad == 0, f"{ncomp} components, {bad} failures"


def _conjugacy_class(w: SignedPerm) -> set:
    m = w.m
    gens = [simple_reflection(i, m) for i in range(1, m + 1)]
    seen = {w}
    queue = deque([w])
    while queue:
        u = queue.popleft()
        for s in gens:
            c = s * u * s
            if c not in seen:
                seen.add(c)
                queue.append(c)
    return seen


def check_weyl_decomposition(slow: bool = False) -> tuple:
    details = []
    ok = True
    for m in (2, 4, 6) if slow else (2, 4):
        by_k = {}
        for w in enumerate_weyl(m):
            if w.is_involution():
                k = classify_involution(w)
                if k is not None:
                    by_k.setdefault(k, set()).add(w)
        classes = {}
        for k in range(m // 2 + 1):
            L = LeviDatum((2,) * k + (1,) * (m - 2 * k), 0)
            classes[k] = _conjugacy_class(longest_levi_element(L))
            ok &= classes[k] == by_k.get(k, set())
        for a in classes:
            for b in classes:
                if a < b and classes[a] & classes[b]:
                    ok = False
        details.append(f"m={m}: " + "/".join(str(len(classes[k])) for k in sorted(classes)))
    return ok, ", ".join(details)


def _t_orbits_over(n: int, k: int) -> int:
    """Distinct T-orbit keys among d * lift(w_k) in X, d running over sign tori."""
    m = 2 * n
    images = []
    for i in range(k):
        images += [2 * i + 2, 2 * i + 1]
    images += list(range(2 * k + 1, m + 1))
    base = sympmat.lift(images)
    T = LeviDatum.torus(m)
    keys = set()
    for signs in product((1, -1), repeat=m):
        d = sympmat.ExactMatrix.diag(list(signs) + list(reversed(signs)))
        x = d @ base
        if sympmat.in_X(x, n):
            keys.add(orbit_key(T, x))
    return len(keys)


def check_orbit_counts(slow: bool = False) -> tuple:
    c2 = len(enumerate_cuspidal_orbits(LeviDatum.torus(2)))
    c4 = len(enumerate_cuspidal_orbits(LeviDatum.torus(4)))
    ok = c2 == 3 and c4 == 9
    mism = 0
    for n in range(1, 5):
        for k in range(n + 1):
            expected = comb(2 * (n - k), n - k)
            if t_orbit_count(n, k) != expected or _t_orbits_over(n, k) != expected:
                mism += 1
    return ok and mism == 0, f"T-orbits Sp_2={c2}, Sp_4={c4}; binomial mismatches {mism}"


def check_j1_nonarch(slow: bool = False) -> tuple:
    worst = 0.0
    exact_ok = True
    for q in (2, 3, 5):
        F = LocalField.nonarch(q)
        for s in (Fraction(1, 2), Fraction(1), Fraction(3, 2)):
            worst = max(worst, abs(float(J1(s, F)) - float(j1_series(s, q, 60))))
            if (s + Fraction(1, 2)).denominator == 1:
                exact_ok &= J1(s, F) == j1_series_limit(s, q)
    return worst < 1e-12 and exact_ok, f"max abs error {worst:.2e}, exact resummation {'ok' if exact_ok else 'failed'}"


def check_j1_arch(slow: bool = False) -> tuple:
    worst = 0.0
    for t in (0.5, 1.0, 2.0, 3.0):
        closed = J1(t - 0.5, REAL)
        quad = j1_real_quadrature(t)
        worst = max(worst, abs(closed - quad) / abs(quad))
    return worst < 1e-8, f"max relative error {worst:.2e}"


def check_jn(slow: bool = False) -> tuple:
    rng = random.Random(20261016)
    F = LocalField.nonarch(64)
    sym_bad = 0
    for n in (2, 3):
        for _ in range(50):
            lam = [Fraction(rng.randint(1, 30), 6) for _ in range(n)]
            ref = Jn(lam, F)
            if not isinstance(ref, Fraction):
                sym_bad += 1
            for _ in range(3):
                perm = lam[:]
                rng.shuffle(perm)
                if Jn(perm, F) != ref:
                    sym_bad += 1
    F2 = LocalField.nonarch(2)
    pole_bad = 0
    grid = [Fraction(a, 2) for a in range(-4, 5)]
    for n in (2, 3):
        for lam in product(grid, repeat=n):
            if any(lam[i] + lam[j] == -1 for i in range(n) for j in range(i + 1, n)):
                continue  # zeros of c_w may cancel poles there
            expected = any(x == Fraction(-1, 2) for x in lam) or any(
                lam[i] + lam[j] == 0 for i in range(n) for j in range(i + 1, n)
            )
            predicted = is_pole(lam, F2)
            try:
                Jn(lam, F2, continue_analytically=True)
                raised = False
            except PoleError:
                raised = True
            if predicted != expected or raised != expected or (jn_factor(n).pole_order(lam, F2) > 0) != expected:
                pole_bad += 1
    worked = Jn([Fraction(3, 2), Fraction(1, 2)], F2)
    ok = sym_bad == 0 and pole_bad == 0 and worked == Fraction(35, 6)
    return ok, f"symmetry failures {sym_bad}, pole mismatches {pole_bad}, J2((3/2,1/2), q=2) = {worked}"


def check_not_convergent(slow: bool = False) -> tuple:
    bad, total = 0, 0
    for n in range(1, 5):
        for comp in compositions(n):
            if list(comp) != sorted(comp):
                continue
            total += 1
            M = LeviDatum(tuple(2 * c for c in comp), 0)
            if sp_convergence_check([Fraction(-1, 2)] * (2 * n), M) != (len(comp) == 1):
                bad += 1
    return bad == 0, f"{total} compositions, {bad} mismatches"


FLAG_COMBOS = {
    "odd": [dict(), dict(is_selfdual=True)],
    "one": [dict(), dict(is_selfdual=True), dict(is_trivial_char=True)],
    "even": [
        dict(),
        dict(is_selfdual=True),
        dict(is_glhalf_distinguished=True),
        dict(is_glhalf_distinguished=True, is_selfdual=True),
    ],
}


def _combos_for(m: int) -> list:
    if m == 1:
        return FLAG_COMBOS["one"]
    return FLAG_COMBOS["even"] if m % 2 == 0 else FLAG_COMBOS["odd"]


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for p in range(min(n, largest), 0, -1):
        for rest in _partitions(n - p, p):
            yield (p,) + rest


def gl_data(size: int, alphabet: str = "abc", flag_index: int = 0):
    """All GL discrete data of the given size up to reordering of the Speh factors.

    Labels are (symbol, GL size); flag_index selects which valid flag
    combination each label carries (cycled per label).
    """
    from collections import Counter

    def label(sym, m):
        combos = _combos_for(m)
        flags = combos[(flag_index + alphabet.index(sym)) % len(combos)]
        return CuspLabel(f"{sym}{m}", m, **flags)

    def factors(f):
        return [Speh(label(s, f // r), r) for r in range(1, f + 1) if f % r == 0 for s in alphabet]

    for part in _partitions(size):
        groups = sorted(Counter(part).items())
        choices = [list(combinations_with_replacement(factors(f), mult)) for f, mult in groups]
        for pick in product(*choices):
            fs = [x for grp in pick for x in grp]
            yield DiscreteDatum("GL", LeviDatum(tuple(f.size for f in fs), 0), tuple(fs))


def check_even_speh(slow: bool = False) -> tuple:
    total, bad = 0, 0
    for size in (2, 4, 6, 8):
        for flag_index in range(4):
            for d in gl_data(size, flag_index=flag_index):
                total += 1
                if gl_is_H_dist_datum(d) != gl_classify_class(gl_datum_class(d)):
                    bad += 1
    return bad == 0, f"{total} data (4 flag rotations), {bad} disagreements"


def _random_sp_class(rng: random.Random) -> SpectralClass:
    sigma = CuspLabel("s", 1, is_selfdual=True)
    chi = CuspLabel("c", 1)
    tau = CuspLabel("t2", 2, is_glhalf_distinguished=True, is_selfdual=True)
    rho = CuspLabel("r", 2)
    m = rng.choice((2, 4))
    levis = [L for L in standard_levis(m) if L.sp_rank == 0]
    M = rng.choice(levis)
    orbits = enumerate_cuspidal_orbits(M)
    pool = {1: [TRIVIAL, sigma, chi, chi.dual()], 2: [tau, rho, rho.dual()]}
    labels = []
    for b in M.blocks:
        labels.append(rng.choice(pool.get(b, [CuspLabel(f"g{b}", b)])))
    if orbits and rng.random() < 0.6:
        from .exponents import singular_subspace

        o = rng.choice(orbits)
        sub = singular_subspace(o)
        if rng.random() < 0.5:
            sub = AffineSubspace.point(sub.base)
        # matching labels make the orbit's own class a positive instance
        labels = []
        for i, b in enumerate(M.blocks):
            if i < 2 * o.k:
                labels.append(sigma if b == 1 else CuspLabel(f"p{b}", b, is_selfdual=True))
            elif b == 1:
                labels.append(TRIVIAL)
            else:
                labels.append(CuspLabel(f"t{b}", b, is_glhalf_distinguished=True, is_selfdual=True))
    else:
        sub = AffineSubspace.point(tuple(Fraction(rng.randint(-4, 4), 2) for _ in M.blocks))
    return SpectralClass(M, tuple(labels), sub)


def check_sp_classify(slow: bool = False) -> tuple:
    L = LeviDatum((1, 1), 0)
    sigma = CuspLabel("s", 1, is_selfdual=True)
    ex = [
        sp_classify_class(SpectralClass(L, (TRIVIAL, TRIVIAL), AffineSubspace.point((0, 1)))),
        sp_classify_class(SpectralClass(L, (sigma, sigma), AffineSubspace.from_equations([[1, 1]], [1], 2))),
        sp_classify_class(SpectralClass(L, (TRIVIAL, TRIVIAL), AffineSubspace.point((0, 0)))),
    ]
    rng = random.Random(11)
    bad, positives = 0, 0
    for _ in range(100):
        c = _random_sp_class(rng)
        k = c.levi.k
        perm = list(range(1, k + 1))
        rng.shuffle(perm)
        w = [p * rng.choice((1, -1)) for p in perm]
        a, b = sp_classify_class(c), sp_classify_class(c.transport(w))
        positives += a
        bad += a != b
    ok = ex == [True, True, False] and bad == 0
    return ok, f"examples {ex}, transport disagreements {bad}/100 ({positives} positive)"


CRITERIA = [
    (1, "rho_x formula equals oracle", check_rho_formula),
    (2, "exponent transport along cuspidal edges", check_exponent_transport),
    (3, "standard relevant vertex in every cuspidal component", check_standard_relevant_components),
    (4, "involution classes W_k are conjugacy classes", check_weyl_decomposition),
    (5, "cuspidal and T-orbit counts", check_orbit_counts),
    (6, "J1 non-archimedean vs geometric series", check_j1_nonarch),
    (7, "J1 archimedean vs quadrature", check_j1_arch),
    (8, "Jn symmetry, pole locus, worked value", check_jn),
    (9, "(-1/2, ..., -1/2) convergent only for one block", check_not_convergent),
    (10, "even Speh criterion vs class classification", check_even_speh),
    (11, "Sp class classification examples and transport invariance", check_sp_classify),
]


def run_one(number: int, slow: bool = False) -> CheckResult:
    for num, title, fn in CRITERIA:
        if num == number:
            t0 = time.perf_counter()
            try:
                passed, detail = fn(slow)
            except Exception as exc:  # a crash is a failure, reported not raised
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            return CheckResult(num, title, bool(passed), detail, time.perf_counter() - t0)
    raise ValueError(f"no criterion {number}")


def run_all(slow: bool = False) -> list:
    return [run_one(num, slow) for num, _, _ in CRITERIA]


__all__ = ["CRITERIA", "CheckResult", "gl_data", "run_all", "run_one", "balanced_signs"]
