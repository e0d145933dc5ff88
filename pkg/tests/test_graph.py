import pytest

from perlab import sympmat
from perlab.exponents import rho_x_oracle
from perlab.graph import (
    GraphVertex,
    all_vertices,
    components,
    descend_to_minimal,
    edges_from,
    is_minimal_vertex,
    normalize_to_standard_relevant,
    to_edge_list,
    to_json,
    transport_exponent,
)
from perlab.levi import LeviDatum, positive_roots
from perlab.orbits import OrbitKey, is_standard_relevant_vertex, make_cuspidal_orbit
from perlab.sympmat import ExactMatrix

T2, T4 = LeviDatum.torus(2), LeviDatum.torus(4)


@pytest.fixture(scope="module")
def cusp4():
    return all_vertices(4, cuspidal_only=True)


def test_central_vertex_has_no_edges():
    v = GraphVertex(T2, ExactMatrix.diag([1, -1, -1, 1]))
    assert edges_from(v) == []


def test_edges_conjugate_and_reverse(cusp4):
    for v in cusp4:
        for e in edges_from(v):
            n = e.n_alpha
            assert sympmat.is_symplectic(n)
            assert e.target.key == GraphVertex(e.target.levi, n @ v.x @ n.inverse()).key
            back = [f for f in edges_from(e.target) if f.target.key == v.key]
            assert back and any(f.descending != e.descending for f in back)


@pytest.mark.parametrize("m", [2, 4])
def test_no_edge_leaves_the_cuspidal_subgraph(m):
    for v in all_vertices(m):
        for e in edges_from(v):
            assert e.target.is_cuspidal == v.is_cuspidal


def test_cuspidal_graph_shape(cusp4):
    edges = sum(len(edges_from(v)) for v in cusp4)
    assert (len(cusp4), edges, len(components(cusp4))) == (58, 110, 19)


def test_exponent_transport(cusp4):
    for v in cusp4:
        rho = rho_x_oracle(v.levi, v.x)
        for e in edges_from(v):
            assert transport_exponent(e, rho) == rho_x_oracle(e.target.levi, e.target.x)


def test_descent_from_minimal_is_trivial():
    o = make_cuspidal_orbit(T2, 1, ())
    v = GraphVertex(T2, o.rep.matrix)
    assert is_minimal_vertex(v)
    n, w = descend_to_minimal(v)
    assert n.is_identity() and w.key == v.key


def test_one_ascent_descends_back():
    v = GraphVertex(T2, make_cuspidal_orbit(T2, 1, ()).rep.matrix)
    up = [e for e in edges_from(v) if not e.descending and e.index == 1]
    assert up
    n, w = descend_to_minimal(up[0].target)
    assert w.key == v.key
    down = [e for e in edges_from(up[0].target) if e.descending]
    assert len(down) == 1 and n == down[0].n_alpha


@pytest.mark.parametrize("m", [2, 4])
def test_descent_reaches_minimal_vertex(m):
    bound = len(positive_roots(m))
    for v in all_vertices(m):
        n, w = descend_to_minimal(v)
        assert is_minimal_vertex(w)
        assert GraphVertex(w.levi, n @ v.x @ n.inverse()).key == w.key
        steps, cur = 0, v
        while True:
            down = [e for e in edges_from(cur) if e.descending]
            if not down:
                break
            cur, steps = down[0].target, steps + 1
        assert steps <= bound


def test_normalize_standard_input_is_fixed():
    o = make_cuspidal_orbit(T4, 1, (1, -1))
    v = GraphVertex(T4, o.rep.matrix)
    n, w = normalize_to_standard_relevant(v)
    assert n.is_identity() and w.key == v.key


def test_normalize_moves_middle_pair_to_front():
    # blocks 2 and 3 swapped, block 1 and 4 carry opposite signs
    key = OrbitKey(T4, (1, 3, 2, 4), ((1, 0), None, None, (0, 1)))
    v = GraphVertex.from_key(key)
    assert not is_standard_relevant_vertex(T4, key)
    n, w = normalize_to_standard_relevant(v)
    assert is_standard_relevant_vertex(w.levi, w.key)
    assert w.key.images[:2] == (2, 1)
    assert GraphVertex(w.levi, n @ v.x @ n.inverse()).key == w.key


def test_normalize_rejects_non_cuspidal():
    v = GraphVertex(LeviDatum((1,), 1), ExactMatrix.diag([1, 1, -1, -1]))
    with pytest.raises(ValueError):
        normalize_to_standard_relevant(v)


def test_every_cuspidal_vertex_normalizes(cusp4):
    for v in cusp4:
        n, w = normalize_to_standard_relevant(v)
        assert is_standard_relevant_vertex(w.levi, w.key)


def test_exports_are_consistent():
    V = all_vertices(2, cuspidal_only=True)
    lines = to_edge_list(V).splitlines()
    assert len(lines) == sum(len(edges_from(v)) for v in V)
    assert all(line.split()[-1] in ("down", "up") for line in lines)
    import json

    payload = json.loads(to_json(V))
    assert len(payload["vertices"]) == len(V)
    assert len(payload["edges"]) == len(lines)
    assert to_json(V) == to_json(V)
