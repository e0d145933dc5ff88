"""The graph of pairs (M, x) joined by elementary symmetries.

For alpha in Delta_P with x alpha != +-alpha there is an edge
(M, x) -> (s_alpha M s_alpha^{-1}, n x n^{-1}) with n the symplectic lift of
s_alpha = w_M^{M_alpha}.  Vertices are identified by canonical orbit keys.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from . import sympmat
from .errors import InvariantError, check_size
from .levi import ExpVector, LeviDatum, delta_p_elements, standard_levis
from .orbits import (
    ORBIT_RANK_LIMIT,
    OrbitKey,
    block_action,
    build_representative,
    enumerate_orbit_keys,
    is_cuspidal_key,
    is_M_minimal,
    is_standard_relevant_vertex,
    orbit_key,
    weyl_image,
)
from .rootsys import SignedPerm, longest_relative
from .sympmat import ExactMatrix


@dataclass(frozen=True)
class GraphVertex:
    levi: LeviDatum
    x: ExactMatrix = field(compare=False, repr=False)
    key: OrbitKey = field(default=None)

    def __post_init__(self):
        if self.key is None:
            object.__setattr__(self, "key", orbit_key(self.levi, self.x))

    @classmethod
    def from_key(cls, key: OrbitKey) -> "GraphVertex":
        return cls(key.levi, build_representative(key), key)

    @property
    def images(self) -> tuple:
        return self.key.images

    @property
    def is_cuspidal(self) -> bool:
        return is_cuspidal_key(self.key)

    def as_dict(self) -> dict:
        return self.key.as_dict()


@dataclass(frozen=True)
class GraphEdge:
    source: GraphVertex
    index: int
    alpha: ExpVector
    s_alpha: SignedPerm
    n_alpha: ExactMatrix = field(repr=False)
    target: GraphVertex
    descending: bool


def act_on_block_vector(images, v) -> tuple:
    out = [Fraction(0)] * len(images)
    for i, t in enumerate(images):
        out[abs(t) - 1] = v[i] if t > 0 else -v[i]
    return tuple(out)


def _first_sign(v) -> int:
    for c in v:
        if c:
            return 1 if c > 0 else -1
    return 0


def elementary_symmetry(M: LeviDatum, index: int) -> tuple:
    """(s_alpha, M') for the index-th element of Delta_P."""
    s = longest_relative(M, M.merge([index]))
    if index < M.k - 1:
        blocks = list(M.blocks)
        blocks[index], blocks[index + 1] = blocks[index + 1], blocks[index]
        target = LeviDatum(tuple(blocks), M.sp_rank)
    else:
        target = M
    return s, target


def edges_from(v: GraphVertex) -> list:
    out = []
    M = v.levi
    for j, alpha in enumerate(delta_p_elements(M)):
        image = act_on_block_vector(v.images, alpha.coords)
        if image == alpha.coords or image == tuple(-c for c in alpha.coords):
            continue
        s, M2 = elementary_symmetry(M, j)
        n = sympmat.lift(s)
        x2 = n @ v.x @ n.inverse()
        target = GraphVertex(M2, x2)
        out.append(GraphEdge(v, j, alpha, s, n, target, _first_sign(image) < 0))
    return out


def transport_exponent(edge: GraphEdge, lam) -> ExpVector:
    """s_alpha lam, moving a vector of a_M^* to a_{M'}^*."""
    M = edge.source.levi
    M2 = edge.target.levi
    images = []
    for i in range(M.k):
        e = [0] * M.k
        e[i] = 1
        img = edge.s_alpha.act(M.embed(e))
        for j in range(M2.k):
            for sgn in (1, -1):
                f = [0] * M2.k
                f[j] = sgn
                if tuple(img) == M2.embed(f):
                    images.append(sgn * (j + 1))
    return ExpVector(act_on_block_vector(images, tuple(lam)), "aM")


def is_minimal_vertex(v: GraphVertex) -> bool:
    return is_M_minimal(weyl_image(v.levi, v.images), v.levi) is not None


def descend_to_minimal(v: GraphVertex) -> tuple:
    """Follow descending edges (lowest Delta_P index first) until none is left."""
    n = ExactMatrix.identity(v.x.dim)
    cur = v
    steps = 0
    limit = len(v.levi.blocks) ** 2 + v.levi.k + 1
    while True:
        down = [e for e in edges_from(cur) if e.descending]
        if not down:
            break
        e = down[0]
        n = e.n_alpha @ n
        cur = e.target
        steps += 1
        if steps > limit:
            raise InvariantError("descent did not terminate")
    if not is_minimal_vertex(cur):
        raise InvariantError(f"descent stopped at a non-minimal vertex {cur.key.as_dict()}")
    return n, cur


def normalize_to_standard_relevant(v: GraphVertex) -> tuple:
    """Breadth-first search in the component of v for a standard relevant vertex."""
    if not v.is_cuspidal:
        raise ValueError("vertex is not cuspidal")
    start = ExactMatrix.identity(v.x.dim)
    seen = {v.key}
    queue = deque([(v, start)])
    while queue:
        cur, n = queue.popleft()
        if is_standard_relevant_vertex(cur.levi, cur.key):
            return n, cur
        for e in edges_from(cur):
            if e.target.key not in seen:
                seen.add(e.target.key)
                queue.append((e.target, e.n_alpha @ n))
    raise InvariantError(f"no standard relevant vertex reachable from {v.key.as_dict()}")


def all_vertices(m: int, cuspidal_only: bool = False) -> list:
    check_size(m, ORBIT_RANK_LIMIT, "2n")
    out = []
    for M in standard_levis(m):
        for key in enumerate_orbit_keys(M):
            if cuspidal_only and not is_cuspidal_key(key):
                continue
            out.append(GraphVertex.from_key(key))
    return out


def component(v: GraphVertex) -> list:
    seen = {v.key: v}
    queue = deque([v])
    while queue:
        cur = queue.popleft()
        for e in edges_from(cur):
            if e.target.key not in seen:
                seen[e.target.key] = e.target
                queue.append(e.target)
    return list(seen.values())


def components(vertices: Iterable[GraphVertex]) -> list:
    remaining = {v.key: v for v in vertices}
    out = []
    while remaining:
        _, v = next(iter(remaining.items()))
        comp = component(v)
        for w in comp:
            remaining.pop(w.key, None)
        out.append(comp)
    return out


def iter_edges(vertices: Iterable[GraphVertex]) -> Iterator[GraphEdge]:
    for v in vertices:
        yield from edges_from(v)


def _vertex_label(v: GraphVertex) -> str:
    k = v.key
    sig = ",".join("-" if s is None else f"{s[0]}:{s[1]}" for s in k.signatures)
    return f"({k.levi}|{','.join(map(str, k.images))}|{sig}|{k.tail[0]}:{k.tail[1]})"


def to_edge_list(vertices: Iterable[GraphVertex]) -> str:
    """One line per edge: source, target, Delta_P index, 'down' or 'up'."""
    lines = []
    for e in iter_edges(vertices):
        d = "down" if e.descending else "up"
        lines.append(f"{_vertex_label(e.source)} {_vertex_label(e.target)} {e.index} {d}")
    return "\n".join(lines) + ("\n" if lines else "")


def to_json(vertices: Iterable[GraphVertex], with_rho: bool = True) -> str:
    from .exponents import rho_x_oracle

    vertices = list(vertices)
    payload = {"vertices": [], "edges": []}
    ids = {}
    for i, v in enumerate(vertices):
        ids[v.key] = i
        entry = {"id": i, **v.as_dict()}
        if with_rho:
            entry["rho_x"] = [str(c) for c in rho_x_oracle(v.levi, v.x)]
        payload["vertices"].append(entry)
    for e in iter_edges(vertices):
        payload["edges"].append(
            {
                "source": ids.get(e.source.key),
                "target": ids.get(e.target.key),
                "alpha_index": e.index,
                "descending": e.descending,
            }
        )
    return json.dumps(payload, sort_keys=True, indent=2)
