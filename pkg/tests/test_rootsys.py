from hypothesis import given
from hypothesis import strategies as st

import pytest

from perlab.errors import SizeGuardError
from perlab.levi import LeviDatum
from perlab.rootsys import (
    Root,
    SignedPerm,
    all_roots,
    enumerate_weyl,
    is_strongly_orthogonal,
    longest_relative,
    reflect,
    weyl_act,
)


def test_weyl_act_examples():
    assert weyl_act(SignedPerm.identity(4), (4, 3, 2, 1)) == (4, 3, 2, 1)
    assert weyl_act(reflect(Root.short(4, 1, 2, -1)), (1, 0, 0, 0)) == (0, 1, 0, 0)
    assert weyl_act(reflect(Root.long(2, 1)), (5, 2)) == (-5, 2)


def test_reflect_examples():
    assert reflect(Root.long(2, 1)).images == (-1, 2)
    assert reflect(Root.short(2, 1, 2, -1)).images == (2, 1)
    s = reflect(Root.short(2, 1, 2, 1))
    assert s.images == (-2, -1)
    assert s.act((1, 1)) == (-1, -1)
    assert s.act((1, -1)) == (1, -1)


@pytest.mark.parametrize("m", [2, 3])
def test_reflection_negates_its_root_and_fixes_the_hyperplane(m):
    for beta in all_roots(m):
        s = reflect(beta)
        v = beta.vector()
        assert s.act(v) == tuple(-c for c in v)
        assert s.is_involution()
        for gamma in all_roots(m):
            g = gamma.vector()
            if sum(a * b for a, b in zip(v, g)) == 0:
                assert s.act(g) == g


def test_strong_orthogonality_examples():
    assert is_strongly_orthogonal(Root.short(4, 1, 2, -1), Root.short(4, 3, 4, -1))
    assert not is_strongly_orthogonal(Root.short(4, 1, 2, -1), Root.short(4, 1, 2, 1))
    assert not is_strongly_orthogonal(Root.short(4, 1, 2, -1), Root.short(4, 2, 3, -1))


def test_longest_relative_examples():
    T, S = LeviDatum((1, 1)), LeviDatum((2,))
    assert longest_relative(T, S) == reflect(Root.short(2, 1, 2, -1))
    assert longest_relative(S, S) == SignedPerm.identity(2)
    assert longest_relative(T, S).images == (2, 1)


def test_longest_relative_is_longest_in_its_coset_family():
    # brute force: max length over w in W_L with w(Delta^M) positive simple
    from perlab.rootsys import levi_weyl_group
    from perlab.levi import simple_roots

    M, L = LeviDatum((1, 1, 2)), LeviDatum((4,))
    simple = set(simple_roots(4))
    m_simple = [simple_roots(4)[i - 1] for i in M.simple_root_indices()]
    cands = [w for w in levi_weyl_group(L) if all(tuple(w.act(a)) in simple for a in m_simple)]
    best = max(cands, key=lambda w: w.length())
    assert longest_relative(M, L) == best


@pytest.mark.parametrize("m,size", [(1, 2), (2, 8), (4, 384)])
def test_enumerate_weyl_sizes(m, size):
    assert len(enumerate_weyl(m)) == size


def test_enumerate_weyl_guard():
    with pytest.raises(SizeGuardError):
        enumerate_weyl(9)


def test_root_vector_roundtrip():
    for beta in all_roots(3):
        assert Root.from_vector(beta.vector()) == beta
    with pytest.raises(ValueError):
        Root.from_vector((1, 1, 1))


@given(st.permutations(range(1, 5)), st.lists(st.sampled_from((1, -1)), min_size=4, max_size=4))
def test_weyl_action_permutes_roots(perm, signs):
    w = SignedPerm(s * p for s, p in zip(signs, perm))
    roots = {b.vector() for b in all_roots(4)}
    assert {tuple(w.act(b)) for b in roots} == roots
