"""Build the contact scheme: the unique contact representation on three
slopes whose corner graph is a submap of the input triangulation.

Construction, given the exact face sizes:

  1. Around every vertex, walk the faces in clockwise order and accumulate
     the signed sizes of the clockwise-class faces.  The nonzero sizes must
     form one positive and one negative arc (checked); the cumulative sums,
     shifted so their minimum is zero, position every adjacent
     counterclockwise-class face along the vertex's future segment.
  2. Contacts that land on the same position of the same segment are one
     geometric point; a union-find over faces builds the shared nodes.  The
     outer face contributes the three fixed corners of the unit triangle.
  3. Coordinates propagate path by path from the corners (an A path loses
     lam per unit of position, a B path loses nu, a C path gains lam); any
     disagreement on a revisited node is an invariant breach, as is any
     placed triangle whose size differs from its face's solution value.

A vertex whose faces are all zero has a zero-length segment and is omitted:
it stays hidden inside a degenerate contact point until the resolver hands
it a real segment.  This one-pass handling of zero faces replaces a
face-by-face reduction that provably cannot work on instances where a whole
glued patch carries size zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import geometry as geo
from .errors import (
    InconsistentPropagation,
    SignPatternViolation,
    ZeroEdgeLength,
)
from .geometry import Frame, Segment, SlopeBasis
from .linsys import SizeSolution, solve_sizes
from .triangulation import (
    FaceBipartition,
    PlanarTriangulation,
    ThreeColoring,
    bipartition_faces,
    three_color,
)

CORNER_AB = ("corner", "ab")
CORNER_BC = ("corner", "bc")
CORNER_CA = ("corner", "ca")

_PLUS_CORNER = {0: CORNER_AB, 1: CORNER_BC, 2: CORNER_CA}
_MINUS_CORNER = {0: CORNER_CA, 1: CORNER_AB, 2: CORNER_BC}


@dataclass(frozen=True)
class IncidenceOrientation:
    """Contact positions of every counterclockwise face along each segment.

    positions[v] lists (face, position) pairs in clockwise order around v;
    path_length[v] is the total positive size around v (zero for hidden
    vertices).  For outer vertices the positions run from 0 at the corner
    clockwise-adjacent to the outer face to 1 at the other corner.
    """

    positions: dict
    path_length: dict
    hidden: frozenset


def orient_incidence(tri: PlanarTriangulation, coloring: ThreeColoring,
                     bipartition: FaceBipartition,
                     solution: SizeSolution) -> IncidenceOrientation:
    outer_face = tri.outer_face
    outer = set(tri.outer)
    sizes = solution.sizes
    positions = {}
    path_length = {}
    hidden = set()

    for v in tri.vertices:
        faces = tri.faces_around(v)
        d = len(faces)
        kinds = [bipartition.side(f) for f in faces]
        if any(kinds[i] == kinds[(i + 1) % d] for i in range(d)):
            raise SignPatternViolation("faces do not alternate around %r" % v)

        if v in outer:
            k = faces.index(outer_face)
            cum = Fraction(0)
            entries = []
            first_size = last_size = None
            for j in range(k + 1, k + d):
                f = faces[j % d]
                if f in bipartition.clockwise:
                    if sizes[f] < 0:
                        raise SignPatternViolation(
                            "negative face %s at outer vertex %r" % (f, v))
                    if first_size is None:
                        first_size = sizes[f]
                    last_size = sizes[f]
                    cum += sizes[f]
                else:
                    if not (0 < cum < 1):
                        raise SignPatternViolation(
                            "contact at position %s on outer vertex %r"
                            % (cum, v))
                    entries.append((f, cum))
            if cum != 1 or first_size <= 0 or last_size <= 0:
                raise SignPatternViolation(
                    "sizes around outer vertex %r are inconsistent" % (v,))
            positions[v] = entries
            path_length[v] = Fraction(1)
            continue

        signs = [sizes[f] > 0 for f in faces
                 if f in bipartition.clockwise and sizes[f] != 0]
        if not signs:
            hidden.add(v)
            positions[v] = []
            path_length[v] = Fraction(0)
            continue
        changes = sum(signs[i] != signs[(i + 1) % len(signs)]
                      for i in range(len(signs)))
        if changes != 2:
            raise SignPatternViolation(
                "positive faces around %r form %d arcs" % (v, changes))

        cum = Fraction(0)
        raw = []
        for i in range(d):
            f = faces[i]
            if f in bipartition.clockwise:
                cum += sizes[f]
            else:
                raw.append((f, cum))
        if cum != 0:
            raise SignPatternViolation(
                "signed sizes around %r sum to %s" % (v, cum))
        lo = min(p for _, p in raw)
        hi = max(p for _, p in raw)
        positions[v] = [(f, p - lo) for f, p in raw]
        path_length[v] = hi - lo
        total_pos = sum(sizes[f] for f in faces
                        if f in bipartition.clockwise and sizes[f] > 0)
        if hi - lo != total_pos:
            raise SignPatternViolation(
                "path of %r spans %s but positive sizes sum to %s"
                % (v, hi - lo, total_pos))
    return IncidenceOrientation(positions, dict(path_length),
                                frozenset(hidden))


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # deterministic representative: smaller key wins
            rx, ry = sorted((rx, ry))
            self.parent[ry] = rx


@dataclass
class Skeleton:
    """Contact paths with shared node identities and positions."""

    node_of_face: dict   # inner ccw face -> node id
    paths: dict          # vertex -> list of (node id, position), ends first
    path_length: dict


def build_skeleton(tri: PlanarTriangulation,
                   orientation: IncidenceOrientation) -> Skeleton:
    uf = _UnionFind()
    for v, entries in orientation.positions.items():
        by_pos = {}
        for f, pos in entries:
            by_pos.setdefault(pos, []).append(f)
        for group in by_pos.values():
            for f in group[1:]:
                uf.union(group[0], f)

    node_of_face = {}
    for v, entries in orientation.positions.items():
        for f, _ in entries:
            node_of_face[f] = uf.find(f)

    a0, b0, c0 = tri.outer
    corner_plus = {a0: CORNER_AB, b0: CORNER_BC, c0: CORNER_CA}
    corner_minus = {a0: CORNER_CA, b0: CORNER_AB, c0: CORNER_BC}

    paths = {}
    for v in tri.vertices:
        if v in orientation.hidden:
            continue
        node_pos = {}
        for f, pos in orientation.positions[v]:
            node = node_of_face[f]
            if node_pos.get(node, pos) != pos:
                raise ZeroEdgeLength(
                    "node %s at two positions on the path of %r" % (node, v))
            node_pos[node] = pos
        by_pos = {pos: node for node, pos in node_pos.items()}
        length = orientation.path_length[v]
        if v in corner_plus:
            if Fraction(0) in by_pos or length in by_pos:
                raise SignPatternViolation(
                    "contact at a unit-triangle corner on %r" % (v,))
            by_pos[Fraction(0)] = corner_plus[v]
            by_pos[length] = corner_minus[v]
        else:
            if Fraction(0) not in by_pos or length not in by_pos:
                raise SignPatternViolation(
                    "path of %r has no end contact" % (v,))
        path = sorted(by_pos.items(), key=lambda kv: kv[0])
        nodes = [n for _, n in path]
        if len(set(nodes)) != len(nodes):
            raise ZeroEdgeLength(
                "node repeated along the path of %r" % (v,))
        paths[v] = [(n, p) for p, n in path]
    return Skeleton(node_of_face, paths, dict(orientation.path_length))


def embed_skeleton(tri: PlanarTriangulation, coloring: ThreeColoring,
                   skeleton: Skeleton, frame: Frame) -> dict:
    """Exact (lam, nu) node coordinates by propagation along paths."""
    coords = {
        CORNER_CA: (Fraction(0), Fraction(0)),
        CORNER_AB: (Fraction(1), Fraction(0)),
        CORNER_BC: (Fraction(1), Fraction(1)),
    }
    pending = set(skeleton.paths)
    while pending:
        placed_one = False
        for v in sorted(pending):
            known = None
            for node, pos in skeleton.paths[v]:
                if node in coords:
                    known = (pos, coords[node])
                    break
            if known is None:
                continue
            placed_one = True
            pending.discard(v)
            color = coloring.of(v)
            (p0, (lam0, nu0)) = known
            for node, pos in skeleton.paths[v]:
                dt = pos - p0
                if color == "A":
                    lam, nu = lam0 - dt, nu0
                elif color == "B":
                    lam, nu = lam0, nu0 - dt
                else:
                    # mu = lam - nu stays fixed along a C path
                    lam, nu = lam0 + dt, nu0 + dt
                if node in coords and coords[node] != (lam, nu):
                    raise InconsistentPropagation(
                        "node %s placed at %s and %s"
                        % (node, coords[node], (lam, nu)))
                coords[node] = (lam, nu)
            break
        if not placed_one:
            raise InconsistentPropagation(
                "unreachable paths: %s" % sorted(pending))
    return coords


@dataclass
class ContactScheme:
    """Contact representation whose corner graph is a submap of tri.

    segments maps each non-hidden vertex to its slope-class segment;
    triangles maps every nonzero clockwise face to its three corner points
    keyed 'ab', 'bc', 'ca' (the contact shared by that pair of its sides).
    """

    tri: PlanarTriangulation
    coloring: ThreeColoring
    bipartition: FaceBipartition
    solution: SizeSolution
    basis: SlopeBasis
    frame: Frame
    segments: dict
    triangles: dict
    hidden: frozenset

    def segment_points(self, v):
        return self.segments[v].endpoints(self.frame)


def build_scheme(tri: PlanarTriangulation,
                 basis: SlopeBasis | None = None,
                 coloring: ThreeColoring | None = None) -> ContactScheme:
    """Construct the scheme for an Eulerian triangulation (deterministic)."""
    if basis is None:
        basis = geo.standard_basis()
    if coloring is None:
        coloring = three_color(tri)
    bipartition = bipartition_faces(tri, coloring)
    solution = solve_sizes(tri, coloring, bipartition)
    frame = Frame(basis)

    orientation = orient_incidence(tri, coloring, bipartition, solution)
    skeleton = build_skeleton(tri, orientation)
    coords = embed_skeleton(tri, coloring, skeleton, frame)

    segments = {}
    for v, path in skeleton.paths.items():
        color = coloring.of(v)
        pts = [frame.point(*coords[node]) for node, _ in path]
        level = frame.level(color, pts[0])
        for p in pts[1:]:
            if frame.level(color, p) != level:
                raise InconsistentPropagation(
                    "path of %r bends off its line" % (v,))
        params = [geo.param_of(frame, color, p) for p in pts]
        segments[v] = Segment(color, level, min(params), max(params))

    outer_corner_point = {
        "ab": frame.point(Fraction(1), Fraction(0)),
        "bc": frame.point(Fraction(1), Fraction(1)),
        "ca": frame.point(Fraction(0), Fraction(0)),
    }

    triangles = {}
    for face in sorted(bipartition.clockwise):
        size = solution.of(face)
        if size == 0:
            continue
        by_color = coloring.vertex_by_color(face)
        corners = {}
        for key, (u, w) in (("ab", (by_color["A"], by_color["B"])),
                            ("bc", (by_color["B"], by_color["C"])),
                            ("ca", (by_color["C"], by_color["A"]))):
            i = face.index(u)
            if face[(i + 1) % 3] == w:
                nbr = tri.face_of_directed(w, u)
            else:
                nbr = tri.face_of_directed(u, w)
            if nbr == tri.outer_face:
                corners[key] = outer_corner_point[key]
            else:
                corners[key] = frame.point(*coords[skeleton.node_of_face[nbr]])
        lam_b = frame.lam(corners["ab"])
        nu_a = frame.nu(corners["ab"])
        mu_c = frame.mu(corners["bc"])
        if (frame.lam(corners["bc"]) != lam_b
                or frame.nu(corners["ca"]) != nu_a
                or frame.mu(corners["ca"]) != mu_c):
            raise InconsistentPropagation(
                "triangle of %s has mismatched corner lines" % (face,))
        if geo.triangle_size(lam_b, nu_a, mu_c) != size:
            raise InconsistentPropagation(
                "triangle of %s has size %s, solution says %s"
                % (face, geo.triangle_size(lam_b, nu_a, mu_c), size))
        triangles[face] = corners

    return ContactScheme(tri, coloring, bipartition, solution, basis, frame,
                         segments, triangles, orientation.hidden)
