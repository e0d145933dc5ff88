from fractions import Fraction as F
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perlab.acceptance import _random_sp_class, gl_data
from perlab.levi import ExpVector, LeviDatum, rho_zero
from perlab.linalg import AffineSubspace
from perlab.spectrum import (
    TRIVIAL,
    CuspLabel,
    DiscreteDatum,
    SpectralClass,
    SpRepDatum,
    Speh,
    canonical_class,
    dominates,
    gl_classify_class,
    gl_convergence_check,
    gl_datum_class,
    gl_is_H_dist_datum,
    sp_classify_class,
    sp_convergence_check,
    sp_is_H_type_datum,
    transports,
)

half = F(1, 2)
L11 = LeviDatum((1, 1))
chi, chi2 = CuspLabel("x", 1), CuspLabel("y", 1)
sigma = CuspLabel("s", 1, is_selfdual=True)
tau2 = CuspLabel("t", 2, is_glhalf_distinguished=True, is_selfdual=True)


def test_speh_exponent():
    assert Speh(chi, 3).exponent() == (1, 0, -1)
    assert Speh(tau2, 2).size == 4


def test_label_duals():
    assert chi.dual().id == "x~" and chi.dual().dual() == chi
    assert sigma.dual() == sigma and TRIVIAL.dual() == TRIVIAL
    with pytest.raises(ValueError):
        CuspLabel("bad", 3, is_glhalf_distinguished=True)


def test_gl_datum_examples():
    G4 = LeviDatum((4,))
    assert gl_is_H_dist_datum(DiscreteDatum("GL", G4, (Speh(CuspLabel("t", 2), 2),)))
    assert not gl_is_H_dist_datum(DiscreteDatum("GL", G4, (Speh(CuspLabel("p", 4), 1),)))
    both = DiscreteDatum("GL", LeviDatum((2, 2)), (Speh(chi, 2), Speh(chi2, 2)))
    assert gl_is_H_dist_datum(both)
    assert gl_classify_class(gl_datum_class(both))


def test_gl_class_examples():
    T = LeviDatum((1, 1, 1, 1))
    labels = (chi, chi, chi2, chi2)
    line = AffineSubspace((half, -half, half, -half), ((1, 1, -1, -1),))
    assert gl_classify_class(SpectralClass(T, labels, line))
    assert not gl_classify_class(SpectralClass(T, labels, AffineSubspace.point((0, 0, 0, 0))))
    rho = CuspLabel("r", 2)
    mixed = SpectralClass(LeviDatum((2, 2)), (rho, rho.dual()), AffineSubspace.point((half, -half)))
    assert not gl_classify_class(mixed)


def test_gl_convergence_examples():
    assert gl_convergence_check((0, 0), LeviDatum((2,)))
    assert gl_convergence_check((0, 0), L11)
    assert not gl_convergence_check((1, -1), L11)


def test_sp_class_examples():
    assert sp_classify_class(SpectralClass(L11, (TRIVIAL, TRIVIAL), AffineSubspace.point((0, 1))))
    pair = AffineSubspace.from_equations([[1, 1]], [1], 2)
    assert sp_classify_class(SpectralClass(L11, (sigma, sigma), pair))
    assert not sp_classify_class(SpectralClass(L11, (TRIVIAL, TRIVIAL), AffineSubspace.point((0, 0))))


def test_sp_datum_examples():
    M = LeviDatum((2,), 2)
    good_sp = SpRepDatum(L11, (TRIVIAL, TRIVIAL), ExpVector((0, 1), "aM"))
    assert sp_is_H_type_datum(DiscreteDatum("Sp", M, (Speh(chi, 2),), good_sp))
    assert not sp_is_H_type_datum(DiscreteDatum("Sp", M, (Speh(CuspLabel("g", 2), 1),), good_sp))
    bad_sp = SpRepDatum(L11, (TRIVIAL, TRIVIAL), ExpVector((0, 0), "aM"))
    assert not sp_is_H_type_datum(DiscreteDatum("Sp", M, (Speh(chi, 2),), bad_sp))


def test_sp_convergence_examples():
    lam = [-half] * 4
    assert sp_convergence_check(lam, LeviDatum((4,)))
    assert not sp_convergence_check(lam, LeviDatum((2, 2)))
    for M in (LeviDatum((4,)), LeviDatum((1, 1, 2)), LeviDatum((2,), 2)):
        assert sp_convergence_check([-10 * c for c in rho_zero(4).coords], M)


@pytest.mark.parametrize("size", [2, 4, 6])
def test_gl_procedures_ignore_label_flags(size):
    # the same data with each flag rotation gives identical answers
    per_flag = []
    for flag_index in range(4):
        per_flag.append(
            [(gl_is_H_dist_datum(d), gl_classify_class(gl_datum_class(d))) for d in gl_data(size, flag_index=flag_index)]
        )
    assert all(p == per_flag[0] for p in per_flag)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_sp_classification_is_transport_invariant(seed):
    rng = random.Random(seed)
    c = _random_sp_class(rng)
    for w in rng.sample(list(transports(c.levi.k)), min(4, 2 ** c.levi.k)):
        assert sp_classify_class(c) == sp_classify_class(c.transport(w))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_gl_classification_is_transport_invariant(seed):
    rng = random.Random(seed)
    data = list(gl_data(4))
    c = gl_datum_class(rng.choice(data))
    for w in transports(c.levi.k, signed=False):
        assert gl_classify_class(c) == gl_classify_class(c.transport(w))


def test_domination_and_canonical_form():
    pair = SpectralClass(L11, (sigma, sigma), AffineSubspace.from_equations([[1, 1]], [1], 2))
    point = SpectralClass(L11, (sigma, sigma), AffineSubspace.point((half, half)))
    assert dominates(pair, point) and not dominates(point, pair)
    assert dominates(pair, pair.transport((-2, -1)))
    assert canonical_class(pair) == canonical_class(pair.transport((2, -1)))


def test_class_validation():
    with pytest.raises(ValueError):
        SpectralClass(L11, (tau2, sigma), AffineSubspace.point((0, 0)))
    with pytest.raises(ValueError):
        DiscreteDatum("GL", LeviDatum((2,)), (Speh(chi, 3),))
