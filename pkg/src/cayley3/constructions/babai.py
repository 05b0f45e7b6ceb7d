"""Contracting a fundamental domain of a free vertex action.

The domain D is grown breadth-first from the least vertex, adding a
neighbour whenever its orbit is not represented yet; connectivity of the
graph guarantees every orbit is reached.  Contracting each translate hD
along the growth tree leaves one vertex per group element, and the edges
outside the translated trees (loops included) carry the induced action.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from ..action import CellMap, CellularAction
from ..complex import TwoComplex
from ..errors import ActionNotFree, DisconnectedInput


def _closure(gens: list[tuple[int, ...]], limit: int = 100_000) -> list[tuple[int, ...]]:
    """All products of the permutations ``gens`` (tuples over one index set)."""
    n = len(gens[0]) if gens else 0
    ident = tuple(range(n))
    seen = {ident}
    order = [ident]
    queue = deque(order)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[x[i]] for i in range(n))  # apply x then g
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
                if len(order) > limit:
                    raise ActionNotFree("acting group too large to enumerate")
    return order


@dataclass
class Contraction:
    domain: tuple[int, ...]  # vertices of D
    tree: tuple[int, ...]  # edges of the growth tree of D
    complex: TwoComplex
    action: CellularAction
    elements: tuple[tuple[int, ...], ...]  # vertex i of the contraction is elements[i] . D


def babai_contract(G: TwoComplex, action: CellularAction) -> Contraction:
    """Contract a connected fundamental domain of a free action on the 1-skeleton of ``G``."""
    if not G.is_connected():
        raise DisconnectedInput("graph is not connected")
    verts = list(G.vertices)
    pos = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    eids = sorted(G.edges)
    epos = {e: n + i for i, e in enumerate(eids)}
    # each generator as one permutation of vertices followed by edges
    full = []
    for name in action.generators:
        m = action.maps[name]
        full.append(
            tuple(pos[m.vertices[v]] for v in verts) + tuple(epos[m.edges[e][0]] for e in eids)
        )
    if not full:
        full = [tuple(range(n + len(eids)))]
    group = _closure(full)
    elements = [x[:n] for x in group]
    gens = [g[:n] for g in full]
    ident = tuple(range(n))
    for x in elements:
        if x != ident and any(x[i] == i for i in range(n)):
            raise ActionNotFree(f"a group element fixes vertex {verts[next(i for i in range(n) if x[i] == i)]}")
    # orbit of each vertex (as an index set)
    orbit_of = {}
    for i in range(n):
        if i not in orbit_of:
            for x in elements:
                orbit_of[x[i]] = i
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(n)}
    for e, (a, b) in sorted(G.edges.items()):
        adj[pos[a]].append((e, pos[b]))
        adj[pos[b]].append((e, pos[a]))
    start = 0
    domain = [start]
    seen_orbits = {orbit_of[start]}
    tree = []
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for e, w in adj[u]:
            if orbit_of[w] not in seen_orbits:
                seen_orbits.add(orbit_of[w])
                domain.append(w)
                tree.append(e)
                queue.append(w)
    # which translate each vertex lies in: vertex x[d] lies in x.D
    elem_index = {x: k for k, x in enumerate(elements)}
    where = {}
    for k, x in enumerate(elements):
        for d in domain:
            where[x[d]] = k
    tree_set = {eids[x[epos[e]] - n] for x in group for e in tree}
    new_edges = {}
    for e, (a, b) in sorted(G.edges.items()):
        if e not in tree_set:
            new_edges[e] = (where[pos[a]], where[pos[b]])
    C = TwoComplex(range(len(elements)), new_edges, {})
    maps = {}
    for name, g in zip(action.generators, gens):
        vmap = {}
        for k, x in enumerate(elements):
            y = tuple(g[x[i]] for i in range(n))
            vmap[k] = elem_index[y]
        m = action.maps[name]
        emap = {e: m.edges[e] for e in new_edges}
        maps[name] = CellMap(vmap, emap, {})
    contracted = CellularAction(C, action.generators, maps, action.relators)
    return Contraction(
        tuple(verts[i] for i in domain), tuple(tree), C, contracted, tuple(elements)
    )


def subgroup_action(action: CellularAction, elements: Sequence, names: Sequence[str] | None = None) -> CellularAction:
    """Restrict the left action of a finite model to the subgroup generated by ``elements``."""
    model = action.model
    names = list(names) if names is not None else [f"h{i}" for i in range(len(elements))]
    maps = {}
    for name, h in zip(names, elements):
        maps[name] = action.word_map(model.word_for(h))
    return CellularAction(action.complex, tuple(names), maps, (), model=None, vertex_handles=action.vertex_handles)
