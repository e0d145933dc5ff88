from fractions import Fraction as F

import pytest

from perlab.exponents import (
    eigen_split,
    rho_x_formula,
    rho_x_oracle,
    singular_subspace,
    singular_subspace_from_equations,
)
from perlab.levi import LeviDatum, standard_levis
from perlab.linalg import AffineSubspace, rank
from perlab.orbits import enumerate_cuspidal_orbits, make_cuspidal_orbit
from perlab.sympmat import ExactMatrix

half = F(1, 2)
T2, T4 = LeviDatum.torus(2), LeviDatum.torus(4)


def test_formula_examples():
    assert rho_x_formula(make_cuspidal_orbit(T2, 1, ())).coords == (half, half)
    assert rho_x_formula(make_cuspidal_orbit(T4, 0, (1, -1, 1, -1))).coords == (0, 1, 0, 1)
    assert rho_x_formula(make_cuspidal_orbit(T4, 0, (1, 1, -1, -1))).coords == (0, -1, 2, 1)


@pytest.mark.parametrize("K,h", [(1, ()), (0, (1, -1, 1, -1)), (0, (1, 1, -1, -1))])
def test_oracle_agrees_on_examples(K, h):
    M = T2 if K == 1 else T4
    o = make_cuspidal_orbit(M, K, h)
    assert rho_x_oracle(M, o.rep) == rho_x_formula(o)


def test_oracle_on_diagonal_rep():
    assert rho_x_oracle(T2, ExactMatrix.diag([1, -1, -1, 1])).coords == (0, 1)


@pytest.mark.parametrize("m", [2, 4])
def test_formula_equals_oracle_everywhere(m):
    for M in standard_levis(m):
        for o in enumerate_cuspidal_orbits(M):
            assert rho_x_formula(o) == rho_x_oracle(M, o.rep), o.as_dict()


def test_eigen_split_examples():
    s = eigen_split(LeviDatum((2,)), ExactMatrix.identity(4))
    assert len(s.plus_basis) == 1 and s.minus_basis == ()
    pair = make_cuspidal_orbit(T2, 1, ())
    s = eigen_split(T2, pair.rep)
    assert rank(list(s.plus_basis) + [(1, 1)], 2) == 1
    assert rank(list(s.minus_basis) + [(1, -1)], 2) == 1
    two_pairs = make_cuspidal_orbit(T4, 2, ())
    s = eigen_split(T4, two_pairs.rep)
    assert len(s.plus_basis) == 2 and len(s.minus_basis) == 2


def test_singular_subspace_examples():
    pair = make_cuspidal_orbit(T2, 1, ())
    assert singular_subspace(pair) == AffineSubspace.from_equations([[1, 1]], [1], 2)
    assert singular_subspace(make_cuspidal_orbit(T2, 0, (1, -1))) == AffineSubspace.point((0, 1))
    two = singular_subspace(make_cuspidal_orbit(T4, 2, ()))
    assert two.dim == 2
    assert two == AffineSubspace.from_equations([[1, 1, 0, 0], [0, 0, 1, 1]], [1, 1], 4)


@pytest.mark.parametrize("m", [2, 4])
def test_subspace_matches_hyperplane_list(m):
    for M in standard_levis(m):
        for o in enumerate_cuspidal_orbits(M):
            sub = singular_subspace(o)
            assert sub == singular_subspace_from_equations(o)
            assert sub.contains_point(rho_x_oracle(M, o.rep).coords)


def test_formula_rejects_non_cuspidal():
    with pytest.raises(ValueError):
        rho_x_formula(object())
