from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from perlab import sympmat
from perlab.levi import LeviDatum
from perlab.rootsys import enumerate_weyl
from perlab.sympmat import ExactMatrix, epsilon, in_X, iota, is_symplectic, lift, special_blocks


def test_iota_examples():
    assert iota(LeviDatum((1,)), [ExactMatrix([[2]])]) == ExactMatrix.diag([2, F(1, 2)])
    assert iota(LeviDatum((2,)), [ExactMatrix.identity(2)]) == ExactMatrix.identity(4)
    assert iota(LeviDatum((1, 1)), [ExactMatrix([[1]]), ExactMatrix([[-1]])]) == ExactMatrix.diag([1, -1, -1, 1])


def test_iota_rejects_singular_block():
    with pytest.raises(ValueError):
        iota(LeviDatum((2,)), [ExactMatrix([[1, 1], [1, 1]])])


small_invertible = st.lists(st.integers(-3, 3), min_size=4, max_size=4).filter(
    lambda e: e[0] * e[3] - e[1] * e[2] != 0
)


@given(small_invertible, st.integers(-3, 3).filter(bool))
def test_iota_lands_in_sp(entries, c):
    g = ExactMatrix([entries[:2], entries[2:]])
    x = iota(LeviDatum((2, 1)), [g, ExactMatrix([[c]])])
    assert is_symplectic(x)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_epsilon(n):
    e = epsilon(n)
    assert e.trace() == 0
    assert (e @ e).is_identity()
    assert in_X(e, n)


def test_epsilon_small():
    assert epsilon(1) == ExactMatrix.diag([1, -1, -1, 1])


def test_in_X_examples():
    assert not in_X(ExactMatrix.identity(4), 1)
    x = iota(LeviDatum.torus(4), [ExactMatrix([[c]]) for c in (1, -1, 1, -1)])
    assert x == ExactMatrix.diag([1, -1, 1, -1, -1, 1, -1, 1])
    assert in_X(x, 2)


def test_special_blocks_examples():
    assert special_blocks("dpq", p=1, q=1) == ExactMatrix.diag([1, -1, -1, 1])
    assert special_blocks("eta", r=1) == ExactMatrix([[1, 1], [1, -1]])
    z = special_blocks("z_gamma", t_list=(), p=1, q=1)
    assert z == ExactMatrix.diag([1, -1, -1, 1])
    z2 = special_blocks("z_gamma", t_list=(2,))
    assert z2.is_signed_permutation() and (z2 @ z2).is_identity()
    assert is_symplectic(z2) and z2.trace() == 0


@pytest.mark.parametrize("m", [1, 2, 3])
def test_lift_is_a_section_up_to_signs(m):
    # lift(wu) and lift(w)lift(u) differ by a diagonal +-1 torus element
    W = enumerate_weyl(m)
    for w in W[:: max(1, len(W) // 12)]:
        assert is_symplectic(lift(w))
        for u in W[:: max(1, len(W) // 6)]:
            d = lift(w * u).inverse() @ lift(w) @ lift(u)
            assert d.is_signed_permutation()
            assert all(d[i, j] == 0 for i in range(d.dim) for j in range(d.dim) if i != j)


def test_lift_acts_on_torus_weights():
    # n t n^{-1} has weights permuted by w
    m = 3
    t = ExactMatrix.diag([2, 3, 5, F(1, 5), F(1, 3), F(1, 2)])
    for w in enumerate_weyl(m)[:20]:
        n = lift(w)
        conj = n @ t @ n.inverse()
        diag = [conj[i, i] for i in range(2 * m)]
        for i, val in enumerate((2, 3, 5)):
            j = abs(w.images[i]) - 1
            expected = val if w.images[i] > 0 else F(1, val)
            assert diag[j] == expected


def test_root_vectors_are_weight_vectors():
    m = 2
    for beta in [(1, -1), (1, 1), (2, 0), (0, -2)]:
        X = sympmat.root_vector(beta, m)
        assert sympmat.is_in_sp(X)
        for H, h in zip(sympmat.cartan_basis(m), [(1, 0), (0, 1)]):
            assert H @ X - X @ H == X.scale(sum(a * b for a, b in zip(beta, h)))


def test_sympinvolution_validation():
    M = LeviDatum((1, 1))
    inv = sympmat.SympInvolution(epsilon(1), M)
    assert inv.violations() == []
    bad = sympmat.SympInvolution(ExactMatrix.identity(4), M)
    assert "trace(x) != 0" in bad.violations()
