from collections import Counter
from math import comb
import random

import pytest

from perlab import sympmat
from perlab.errors import SizeGuardError
from perlab.levi import LeviDatum, standard_levis
from perlab.orbits import (
    OrbitData,
    build_representative,
    centralizer_dim,
    classify_involution,
    enumerate_cuspidal_orbits,
    enumerate_orbit_keys,
    is_cuspidal_key,
    is_M_admissible,
    is_M_minimal,
    is_standard_relevant,
    is_standard_relevant_vertex,
    is_vanishing_centralizer,
    orbit_key,
    t_orbit_count,
    x_p,
)
from perlab.rootsys import Root, SignedPerm, enumerate_weyl, reflect
from perlab.sympmat import ExactMatrix, iota

T2, T4 = LeviDatum.torus(2), LeviDatum.torus(4)


def test_classify_involution_examples():
    assert classify_involution(SignedPerm.identity(2)) == 0
    assert classify_involution(reflect(Root.short(2, 1, 2, -1))) == 1
    assert classify_involution(reflect(Root.long(2, 1))) is None


def _short_factorisations(w):
    """Oracle: smallest k with w a product of k strongly orthogonal short reflections."""
    from itertools import combinations

    from perlab.rootsys import all_roots, is_strongly_orthogonal

    shorts = [b for b in all_roots(w.m) if not b.is_long and b.is_positive()]
    for k in range(w.m // 2 + 1):
        for combo in combinations(shorts, k):
            if all(is_strongly_orthogonal(a, b) for a, b in combinations(combo, 2)):
                prod = SignedPerm.identity(w.m)
                for b in combo:
                    prod = prod * reflect(b)
                if prod == w:
                    return k
    return None


@pytest.mark.parametrize("m", [2, 3, 4])
def test_classify_involution_against_factor_search(m):
    for w in enumerate_weyl(m):
        if w.is_involution():
            assert classify_involution(w) == _short_factorisations(w)


@pytest.mark.parametrize("n,k,count", [(1, 1, 1), (1, 0, 2), (2, 0, 6)])
def test_t_orbit_count(n, k, count):
    assert t_orbit_count(n, k) == count


def test_admissibility_examples():
    assert is_M_admissible(SignedPerm.identity(2), LeviDatum((2,)))
    assert is_M_admissible(SignedPerm((2, 1)), T2)
    assert not is_M_admissible(SignedPerm((2, -1)), LeviDatum((2,)))


def test_minimality_examples():
    assert is_M_minimal(SignedPerm.identity(2), T2) == T2
    assert is_M_minimal(SignedPerm((2, 1)), T2) == LeviDatum((2,))
    assert is_M_minimal(SignedPerm((2, 1, 4, 3)), T4) == LeviDatum((2, 2))
    # a swap of non-adjacent blocks is not the longest element of any L
    assert is_M_minimal(SignedPerm((3, 2, 1, 4)), T4) is None


def test_standard_relevant_examples():
    assert is_standard_relevant(T2, LeviDatum((2,)))
    assert is_standard_relevant(T4, LeviDatum((2, 1, 1)))
    assert is_standard_relevant(T4, LeviDatum((2, 2)))
    # a pair after a single block is out of order
    assert not is_standard_relevant(T4, LeviDatum((1, 1, 2)))
    with pytest.raises(ValueError):
        is_standard_relevant(LeviDatum((2, 2)), T4)


def test_cuspidal_orbit_counts_on_torus():
    assert len(enumerate_cuspidal_orbits(T2)) == 3
    assert len(enumerate_cuspidal_orbits(T4)) == 9
    assert enumerate_cuspidal_orbits(LeviDatum((1, 1), 1)) == []


@pytest.mark.parametrize("n", [1, 2])
def test_cuspidal_torus_keys_match_binomial_count(n):
    m = 2 * n
    keys = [k for k in enumerate_orbit_keys(LeviDatum.torus(m)) if is_cuspidal_key(k)]
    # each pair may be signed or not; the fixed size-one blocks carry balanced signs
    assert len(keys) == sum(comb(m - 2 * k, n - k) * _pairings(m, k) * 2 ** k for k in range(n + 1))


def _pairings(m, k):
    """Number of involutions of {1..m} with k two-cycles, no sign changes."""
    from math import factorial

    return factorial(m) // (factorial(k) * 2 ** k * factorial(m - 2 * k))


@pytest.mark.parametrize("m", [2, 4])
def test_representatives_realise_their_keys(m):
    for M in standard_levis(m):
        for key in enumerate_orbit_keys(M):
            x = build_representative(key)
            assert sympmat.is_symplectic(x) and sympmat.is_involution(x)
            assert orbit_key(M, x) == key


def test_keys_are_conjugation_invariant():
    rng = random.Random(5)
    M = LeviDatum((1, 2, 1))
    for key in enumerate_orbit_keys(M):
        x = build_representative(key)
        for _ in range(3):
            parts = []
            for b in M.blocks:
                while True:
                    g = ExactMatrix([[rng.randint(-2, 2) for _ in range(b)] for _ in range(b)])
                    if g.dim == 1 and g[0, 0] or g.dim > 1 and (g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]):
                        break
                parts.append(g)
            h = iota(M, parts)
            assert orbit_key(M, h @ x @ h.inverse()) == key


@pytest.mark.parametrize("m", [2, 4])
def test_cuspidal_orbits_are_the_standard_relevant_cuspidal_keys(m):
    for M in standard_levis(m):
        got = {o.key for o in enumerate_cuspidal_orbits(M)}
        expected = {
            k
            for k in enumerate_orbit_keys(M)
            if is_cuspidal_key(k) and is_standard_relevant_vertex(M, k) and _evens_before_ones(k)
        }
        assert got == expected
        for o in enumerate_cuspidal_orbits(M):
            assert sympmat.in_X(o.rep.matrix, m // 2)


def _evens_before_ones(key):
    sizes = [key.levi.blocks[i - 1] for i in key.fixed_plus()]
    return sizes == sorted(sizes, key=lambda b: b == 1)


def test_cuspidal_orbits_separated_by_centraliser_and_signs():
    for M in standard_levis(4):
        seen = Counter()
        for o in enumerate_cuspidal_orbits(M):
            x = o.rep.matrix
            diag = tuple(x[i, i] for i in range(x.dim))
            seen[(centralizer_dim(M, x), diag)] += 1
        assert all(v == 1 for v in seen.values())


def test_centralizer_dim_examples():
    pair, *signs = sorted(enumerate_cuspidal_orbits(T2), key=lambda o: -o.k)
    assert centralizer_dim(T2, signs[0].rep) == 2
    assert centralizer_dim(T2, pair.rep) == 1
    siegel = LeviDatum((2,))
    # GL_1 x GL_1 for the balanced fixed block, Sp_1 for the block sent to its dual
    assert centralizer_dim(siegel, x_p(OrbitData(s_list=(2,), pq_list=((1, 1),)))) == 2
    assert centralizer_dim(siegel, x_p(OrbitData(t_list=(2,)))) == 3


@pytest.mark.parametrize("m", [2, 4])
def test_vanishing_is_complement_of_cuspidal(m):
    for M in standard_levis(m):
        for key in enumerate_orbit_keys(M):
            x = build_representative(key)
            if not sympmat.in_X(x, m // 2):
                continue
            assert is_vanishing_centralizer(M, x) == (not is_cuspidal_key(key))


def test_vanishing_examples():
    for o in enumerate_cuspidal_orbits(T4):
        assert not is_vanishing_centralizer(T4, o.rep)
    # (GL_2, GL_1 x GL_1) on a 2-block with p != q elsewhere balanced
    M = LeviDatum((3, 1))
    x = iota(M, [ExactMatrix.diag([1, 1, -1]), ExactMatrix([[-1]])])
    assert is_vanishing_centralizer(M, x)


def test_orbit_enumeration_guard():
    with pytest.raises(SizeGuardError):
        enumerate_cuspidal_orbits(LeviDatum.torus(8))
