"""Shared inputs for tests: small graph fixtures and seeded random plane graphs."""

import itertools

from cayley3.graphs import Multigraph, is_planar

K5 = list(itertools.combinations(range(5), 2))
K33 = [(i, j) for i in range(3) for j in range(3, 6)]

# (name, vertex count, edges, planar)
GRAPH_CORPUS = [
    ("K4", 4, list(itertools.combinations(range(4), 2)), True),
    ("K5", 5, K5, False),
    ("K5-minus-edge", 5, K5[1:], True),
    ("K33", 6, K33, False),
    ("K33-minus-edge", 6, K33[1:], True),
    ("prism", 6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)], True),
    ("octahedron", 6, [(a, b) for a, b in itertools.combinations(range(6), 2) if b - a != 3], True),
    ("wagner", 8, [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)], False),
    ("cube", 8, [(a, b) for a, b in itertools.combinations(range(8), 2) if bin(a ^ b).count("1") == 1], True),
    ("C8", 8, [(i, (i + 1) % 8) for i in range(8)], True),
    ("star", 7, [(0, i) for i in range(1, 7)], True),
    # K4,4 minus a perfect matching is the cube graph again
    ("K4-4-minus-matching", 8, [(i, j) for i in range(4) for j in range(4, 8) if j - i != 4], True),
    # K3,3 with one edge subdivided twice
    ("K33-subdivided", 8, K33[1:] + [(0, 6), (6, 7), (7, 3)], False),
    ("K5-subdivided", 7, K5[1:] + [(0, 5), (5, 6), (6, 1)], False),
]


def random_plane_graph(rng, max_nodes=12):
    """A connected simple planar graph: a random tree plus random edges kept while planar."""
    n = rng.randint(2, max_nodes)
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    pairs = [p for p in itertools.combinations(range(n), 2) if p not in edges and p[::-1] not in edges]
    rng.shuffle(pairs)
    extra = rng.randint(0, len(pairs))
    for p in pairs[:extra]:
        trial = Multigraph.build(range(n), edges + [p])
        if is_planar(trial):
            edges.append(p)
    return Multigraph.build(range(n), edges)
