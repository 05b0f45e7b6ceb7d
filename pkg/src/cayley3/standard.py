"""Standard example complexes and the small-group presentation list."""

from __future__ import annotations

import itertools

from .cayley import cayley_complex
from .complex import DirectedEdge, TwoComplex, complex_from_cycles
from .groups import model_from_presentation, translation_group, translation_vector
from .presentation import parse_presentation
from .rotation import RotationSystem, check_invariance, is_planar_rotation_system, transport_rotation


def triangle() -> TwoComplex:
    return complex_from_cycles([[0, 1, 2]])


def tetrahedron() -> tuple[TwoComplex, dict]:
    X = complex_from_cycles([[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]])
    coords = {0: (1, 1, 1), 1: (1, -1, -1), 2: (-1, 1, -1), 3: (-1, -1, 1)}
    return X, coords


def cube() -> tuple[TwoComplex, dict]:
    coords = {i: ((i >> 0) & 1, (i >> 1) & 1, (i >> 2) & 1) for i in range(8)}
    faces = [
        [0, 1, 3, 2], [4, 6, 7, 5],  # z = 0, 1
        [0, 4, 5, 1], [2, 3, 7, 6],  # y = 0, 1
        [0, 2, 6, 4], [1, 5, 7, 3],  # x = 0, 1
    ]
    return complex_from_cycles(faces), coords


def commutator_relators(dim: int) -> list[tuple[int, ...]]:
    return [(-i, -j, i, j) for i, j in itertools.combinations(range(1, dim + 1), 2)]


def lattice_ball(dim: int, radius: int):
    """Ball of the standard cubical Cayley complex of Z^dim.

    Returns ``(X, action, coords)`` with integer coordinates padded to R^3.
    """
    model = translation_group(dim)
    X, action = cayley_complex(model, commutator_relators(dim), radius=radius)
    coords = {}
    for v, h in enumerate(action.vertex_handles):
        vec = translation_vector(h)
        coords[v] = tuple(vec) + (0,) * (3 - dim)
    return X, action, coords


def lattice_vertex(action, point) -> int:
    for v, h in enumerate(action.vertex_handles):
        if tuple(translation_vector(h)) == tuple(point):
            return v
    raise KeyError(point)


TORUS_TEXT = "gens: a b\nrels: a^{k} b^{l} [a,b]"


def torus_complex(k: int = 3, l: int = 3):
    """Cayley complex of C_k x C_l (k, l >= 3) with an invariant planar rotation system.

    The rotation system is transported from one a-edge and one b-edge with
    eta = 0; among the 2 x 2 seed orders the planar one is returned.
    """
    p = parse_presentation(TORUS_TEXT.format(k=k, l=l))
    X, action = cayley_complex(model_from_presentation(p), p)
    seeds = torus_seed_edges(action)
    for orders in itertools.product(*(_orders(X, e) for e in seeds)):
        sigma = transport_rotation(X, action, {DirectedEdge(e, 1): o for e, o in zip(seeds, orders)})
        if is_planar_rotation_system(X, sigma)[0] and check_invariance(X, sigma, action).invariant:
            return X, action, sigma
    raise RuntimeError("no planar seed combination found")


def torus_seed_edges(action) -> list[int]:
    out = []
    for gen in (0, 1):
        out.append(min(e for e, lab in action.edge_labels.items() if lab[1] == gen))
    return out


def _orders(X: TwoComplex, e: int):
    slots = X.slots(e)
    return [(slots[0],) + rest for rest in itertools.permutations(slots[1:])]


# every group of order <= 12, one fixed presentation each
SMALL_GROUPS: dict[str, str] = {
    "C1": "gens: a\nrels: a",
    **{f"C{n}": f"gens: a\nrels: a^{n}" for n in range(2, 13)},
    "C2xC2": "gens: a b\nrels: a^2 b^2 [a,b]",
    "S3": "gens: a b\nrels: a^3 b^2 (ab)^2",
    "D4": "gens: a b\nrels: a^4 b^2 (ab)^2",
    "Q8": "gens: a b\nrels: a^4; a^2 = b^2; b^-1 a b = a^-1",
    "C4xC2": "gens: a b\nrels: a^4 b^2 [a,b]",
    "C2xC2xC2": "gens: a b c\nrels: a^2 b^2 c^2 [a,b] [a,c] [b,c]",
    "C3xC3": "gens: a b\nrels: a^3 b^3 [a,b]",
    "D5": "gens: a b\nrels: a^5 b^2 (ab)^2",
    "C6xC2": "gens: a b\nrels: a^6 b^2 [a,b]",
    "D6": "gens: a b\nrels: a^6 b^2 (ab)^2",
    "A4": "gens: a b\nrels: a^2 b^3 (ab)^3",
    "Dic3": "gens: a b\nrels: a^6; b^2 = a^3; b^-1 a b = a^-1",
}


def small_group(name: str):
    p = parse_presentation(SMALL_GROUPS[name])
    return p, model_from_presentation(p)


def rotation_is_reversal_closed(sigma: RotationSystem) -> bool:
    return all(
        tuple(reversed(sigma[d])) in _rotations(sigma[d.reverse()]) for d in sigma
    )


def _rotations(seq):
    return {seq[i:] + seq[:i] for i in range(len(seq))}


def edge_orbit_representatives(X: TwoComplex, action) -> list[int]:
    """Least edge of each orbit of the action on edges that meet a face."""
    rep = {}
    for e in X.edge_ids():
        if e in rep or not X.slots(e):
            continue
        stack = [e]
        rep[e] = e
        while stack:
            x = stack.pop()
            for name in action.generators:
                m = action.maps[name]
                for y in (m.edges.get(x, (None,))[0], _preimage(m, x)):
                    if y is not None and y not in rep:
                        rep[y] = e
                        stack.append(y)
    return sorted(set(rep.values()))


def _preimage(m, e):
    for x, (y, _) in m.edges.items():
        if y == e:
            return x
    return None


def transported_planar_rotation(X: TwoComplex, action, eta=None, max_tries: int = 10_000):
    """Search seed orders (one edge per orbit) for an invariant planar rotation system.

    Returns ``None`` when no combination within ``max_tries`` works.
    """
    from .errors import TransportConflict

    seeds = edge_orbit_representatives(X, action)
    for tries, orders in enumerate(itertools.product(*(_orders(X, e) for e in seeds))):
        if tries >= max_tries:
            return None
        try:
            sigma = transport_rotation(X, action, {DirectedEdge(e, 1): o for e, o in zip(seeds, orders)}, eta)
        except TransportConflict:
            continue
        if is_planar_rotation_system(X, sigma)[0] and check_invariance(X, sigma, action).invariant:
            return sigma
    return None
