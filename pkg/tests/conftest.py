import itertools
import random

import pytest

from trislope import triangulation as tg


@pytest.fixture
def k3():
    return tg.triangle_graph()


@pytest.fixture
def octa():
    return tg.octahedron()


def colored(tri):
    coloring = tg.three_color(tri)
    bip = tg.bipartition_faces(tri, coloring)
    return tri, coloring, bip


def brute_force_colorings(tri):
    """Every proper 3-coloring, by exhaustive assignment (oracle)."""
    verts = list(tri.vertices)
    out = []
    for combo in itertools.product("ABC", repeat=len(verts)):
        color = dict(zip(verts, combo))
        if all(color[u] != color[v]
               for u in verts for v in tri.rotation[u]):
            out.append(color)
    return out


def dual_bfs_bipartition(tri):
    """2-color the dual from the outer face by BFS (oracle)."""
    side = {tri.outer_face: "ccw"}
    queue = [tri.outer_face]
    while queue:
        face = queue.pop(0)
        for i in range(3):
            nbr = tri.face_of_directed(face[(i + 1) % 3], face[i])
            if nbr not in side:
                side[nbr] = "cw" if side[face] == "ccw" else "ccw"
                queue.append(nbr)
    cw = frozenset(f for f, s in side.items() if s == "cw")
    ccw = frozenset(f for f, s in side.items() if s == "ccw")
    return cw, ccw


def instance_pool(count, max_gluings, seed):
    """Deterministic pool of random instances of varied size."""
    rng = random.Random(seed)
    pool = []
    for _ in range(count):
        k = rng.randint(1, max_gluings)
        pool.append(tg.random_instance(k, rng=rng))
    return pool
