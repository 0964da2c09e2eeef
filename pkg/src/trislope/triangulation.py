"""Combinatorial layer: plane triangulations given as rotation systems.

A triangulation is stored purely combinatorially: vertex ids, the clockwise
cyclic order of neighbors around every vertex, and a distinguished outer
face.  Faces are derived by the standard trace rule: after walking the
directed edge (u, v) continue with (v, w) where w is the clockwise successor
of u around v.  With clockwise rotations this traces every inner face
counterclockwise and the outer face clockwise, so each directed edge belongs
to exactly one face.

Face values are canonical directed triples (rotated so the smallest vertex
id comes first).  Orientation is part of the identity; the two faces of the
triangle graph share a vertex set but are distinct faces.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass

from .errors import (
    BadOuterFace,
    EulerViolation,
    NoContractiblePair,
    NotADisk,
    NotEulerian,
    NotSimple,
    NotTriangulation,
    OuterFaceNotAllowed,
    ParseError,
    ResultNotEulerian,
    ResultNotSimple,
)

Face = tuple  # canonical directed triple of vertex ids


def canon_face(cycle) -> Face:
    """Rotate a directed cycle so the smallest id comes first."""
    cycle = tuple(cycle)
    k = cycle.index(min(cycle))
    return cycle[k:] + cycle[:k]


class PlanarTriangulation:
    """Validated plane triangulation with a distinguished outer face."""

    def __init__(self, vertices, rotation, outer):
        self.vertices = tuple(sorted(vertices))
        # rotations are cyclic; store each starting at the smallest neighbor
        # so equal embeddings compare equal
        self.rotation = {}
        for v in self.vertices:
            rot = tuple(rotation[v])
            if rot:
                k = rot.index(min(rot))
                rot = rot[k:] + rot[:k]
            self.rotation[v] = rot
        self.outer = tuple(outer)
        self._validate_graph()
        self.faces = self._trace_faces()
        self._edge_face = {}
        for face in self.faces:
            for i in range(3):
                self._edge_face[(face[i], face[(i + 1) % 3])] = face
        self._validate_faces()

    # -- construction checks -------------------------------------------------

    def _validate_graph(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise NotSimple("duplicate vertex ids")
        seen = set(self.vertices)
        for v, nbrs in self.rotation.items():
            if v in nbrs:
                raise NotSimple("loop at %r" % (v,))
            if len(set(nbrs)) != len(nbrs):
                raise NotSimple("repeated neighbor around %r" % (v,))
            for u in nbrs:
                if u not in seen:
                    raise ParseError("unknown vertex %r in rotation of %r" % (u, v))
                if v not in self.rotation.get(u, ()):
                    raise NotSimple("edge %r-%r is not symmetric" % (v, u))
        if len(self.vertices) < 3:
            raise NotTriangulation("need at least 3 vertices")

    def _trace_faces(self):
        succ = {}
        for v, nbrs in self.rotation.items():
            d = len(nbrs)
            for i, u in enumerate(nbrs):
                succ[(v, u)] = nbrs[(i + 1) % d]
        faces = []
        visited = set()
        for start in sorted(succ):
            if start in visited:
                continue
            cycle = []
            edge = start
            while edge not in visited:
                visited.add(edge)
                cycle.append(edge[0])
                u, v = edge
                edge = (v, succ[(v, u)])
            if edge != start:
                raise NotTriangulation("face walk did not close")
            if len(cycle) != 3:
                raise NotTriangulation(
                    "face %s has length %d" % (cycle, len(cycle)))
            faces.append(canon_face(cycle))
        return tuple(sorted(faces))

    def _validate_faces(self):
        n = len(self.vertices)
        if len(self.faces) != 2 * n - 4:
            raise EulerViolation(
                "expected %d faces, traced %d" % (2 * n - 4, len(self.faces)))
        if len(self.outer) != 3 or len(set(self.outer)) != 3:
            raise BadOuterFace("outer face must be three distinct vertices")
        if canon_face(self.outer) not in self.faces:
            raise BadOuterFace(
                "outer triple %s is not a clockwise face of the embedding"
                % (self.outer,))

    # -- basic queries --------------------------------------------------------

    @property
    def outer_face(self) -> Face:
        return canon_face(self.outer)

    def degree(self, v) -> int:
        return len(self.rotation[v])

    def edges(self):
        return {frozenset((u, v)) for u in self.vertices
                for v in self.rotation[u]}

    def has_edge(self, u, v) -> bool:
        return v in self.rotation[u]

    def face_of_directed(self, u, v) -> Face:
        return self._edge_face[(u, v)]

    def faces_around(self, v):
        """Faces in clockwise order around v, aligned with rotation[v].

        Entry i is the face at the corner between neighbors i and i+1.
        """
        nbrs = self.rotation[v]
        return [self._edge_face[(nbrs[i], v)] for i in range(len(nbrs))]

    def face_with_vertices(self, trio):
        """The unique inner face on a vertex set, or None."""
        want = frozenset(trio)
        hits = [f for f in self.faces
                if frozenset(f) == want and f != self.outer_face]
        return hits[0] if hits else None

    def third_vertex(self, face: Face, u, v):
        (w,) = [x for x in face if x not in (u, v)]
        return w

    def __repr__(self):
        return "PlanarTriangulation(n=%d, outer=%s)" % (
            len(self.vertices), list(self.outer))


def validate(vertices, rotation, outer) -> PlanarTriangulation:
    """Build a PlanarTriangulation, raising a ValidationError subclass."""
    return PlanarTriangulation(vertices, rotation, outer)


def is_eulerian(tri: PlanarTriangulation) -> bool:
    return all(tri.degree(v) % 2 == 0 for v in tri.vertices)


@dataclass(frozen=True)
class ThreeColoring:
    color: dict
    anchors: tuple

    def of(self, v) -> str:
        return self.color[v]

    def vertex_by_color(self, face: Face) -> dict:
        return {self.color[v]: v for v in face}


def three_color(tri: PlanarTriangulation) -> ThreeColoring:
    """Proper 3-coloring with outer anchors mapped to A, B, C.

    Colors propagate face by face: once a face has two colored corners the
    third is forced, and in an Eulerian triangulation this never conflicts.
    """
    if not is_eulerian(tri):
        raise NotEulerian("a vertex of odd degree admits no proper 3-coloring")
    a0, b0, c0 = tri.outer
    color = {a0: "A", b0: "B", c0: "C"}
    pending = list(tri.faces)
    progress = True
    while pending and progress:
        progress = False
        rest = []
        for face in pending:
            known = [v for v in face if v in color]
            if len(known) == 3:
                progress = True
            elif len(known) == 2:
                missing = ({"A", "B", "C"}
                           - {color[known[0]], color[known[1]]})
                (w,) = [v for v in face if v not in color]
                color[w] = missing.pop()
                progress = True
            else:
                rest.append(face)
        pending = rest
    if len(color) != len(tri.vertices):
        raise NotEulerian("coloring propagation did not reach every vertex")
    for u in tri.vertices:
        for v in tri.rotation[u]:
            if color[u] == color[v]:
                raise NotEulerian("coloring conflict on edge %r-%r" % (u, v))
    return ThreeColoring(color, (a0, b0, c0))


@dataclass(frozen=True)
class FaceBipartition:
    """Dual 2-coloring of the faces.

    clockwise holds the faces whose corners read A, B, C in clockwise order
    (the triangles that become homothets of the outer one); counterclockwise
    holds the rest, including the outer face.
    """

    clockwise: frozenset
    counterclockwise: frozenset

    def side(self, face: Face) -> str:
        return "cw" if face in self.clockwise else "ccw"


def bipartition_faces(tri: PlanarTriangulation,
                      coloring: ThreeColoring) -> FaceBipartition:
    cw = set()
    ccw = set()
    for face in tri.faces:
        i = [coloring.of(v) for v in face].index("A")
        nxt = coloring.of(face[(i + 1) % 3])
        # traces run counterclockwise on inner faces, so a clockwise
        # A,B,C reading shows up as A followed by C in the trace
        if nxt == "C":
            cw.add(face)
        else:
            ccw.add(face)
    if tri.outer_face in cw:
        raise BadOuterFace("outer face fell on the clockwise side")
    return FaceBipartition(frozenset(cw), frozenset(ccw))


# -- fixed instances and generation --------------------------------------------


def triangle_graph():
    """The smallest triangulation: a single triangle."""
    rotation = {"a0": ("b0", "c0"), "b0": ("c0", "a0"), "c0": ("a0", "b0")}
    return PlanarTriangulation(["a0", "b0", "c0"], rotation, ("a0", "b0", "c0"))


def octahedron():
    rotation = {
        "a0": ("b0", "c1", "b1", "c0"),
        "b0": ("c0", "a1", "c1", "a0"),
        "c0": ("a0", "b1", "a1", "b0"),
        "a1": ("b1", "c1", "b0", "c0"),
        "b1": ("a0", "c1", "a1", "c0"),
        "c1": ("b1", "a0", "b0", "a1"),
    }
    verts = ["a0", "b0", "c0", "a1", "b1", "c1"]
    return PlanarTriangulation(verts, rotation, ("a0", "b0", "c0"))


def k4():
    """Valid triangulation with all degrees odd (rejected by is_eulerian)."""
    rotation = {
        "a": ("b", "d", "c"),
        "b": ("c", "d", "a"),
        "c": ("a", "d", "b"),
        "d": ("a", "b", "c"),
    }
    return PlanarTriangulation(["a", "b", "c", "d"], rotation, ("a", "b", "c"))


def _rot_insert_between(rot, after, before, inserted):
    """New rotation tuple with items inserted between two adjacent entries."""
    rot = list(rot)
    i = rot.index(after)
    if rot[(i + 1) % len(rot)] != before:
        raise AssertionError("entries %r,%r not adjacent in %r"
                             % (after, before, rot))
    return tuple(rot[:i + 1] + list(inserted) + rot[i + 1:])


def _fresh_ids(existing, count):
    out = []
    k = len(existing)
    taken = set(existing)
    while len(out) < count:
        cand = "g%d" % k
        k += 1
        if cand not in taken:
            taken.add(cand)
            out.append(cand)
    return out


def glue_octahedron(tri: PlanarTriangulation, face: Face,
                    new_ids=None) -> PlanarTriangulation:
    """Replace an inner face by an octahedron patch.

    Three fresh vertices form an inverted triangle inside the face; each is
    adjacent to two of the face's corners, so every old corner gains degree
    two and the result stays simple and Eulerian.
    """
    face = canon_face(face)
    if face == tri.outer_face:
        raise OuterFaceNotAllowed("cannot glue into the outer face")
    if face not in tri.faces:
        raise NotADisk("%s is not a face" % (face,))
    u, v, w = face  # counterclockwise trace of the inner face
    if new_ids is None:
        new_ids = _fresh_ids(tri.vertices, 3)
    x, y, z = new_ids  # antipodes of u, v, w
    rotation = dict(tri.rotation)
    rotation[u] = _rot_insert_between(rotation[u], w, v, (y, z))
    rotation[v] = _rot_insert_between(rotation[v], u, w, (z, x))
    rotation[w] = _rot_insert_between(rotation[w], v, u, (x, y))
    rotation[x] = (z, y, w, v)
    rotation[y] = (z, u, w, x)
    rotation[z] = (u, y, x, v)
    verts = list(tri.vertices) + [x, y, z]
    return PlanarTriangulation(verts, rotation, tri.outer)


def random_instance(num_gluings: int, seed=None,
                    rng: random.Random | None = None) -> PlanarTriangulation:
    """Random Eulerian triangulation with 3 + 3*num_gluings vertices."""
    if rng is None:
        rng = random.Random(seed)
    tri = triangle_graph()
    for _ in range(num_gluings):
        inner = sorted(f for f in tri.faces if f != tri.outer_face)
        tri = glue_octahedron(tri, rng.choice(inner))
    return tri


# -- extraction and contraction -------------------------------------------------


def faces_inside_cycle(tri: PlanarTriangulation, cycle):
    """Faces strictly inside a cycle bounding a disk away from the outer face.

    Raises NotADisk when the cycle's edges do not separate exactly that disk.
    """
    cyc_edges = {frozenset((cycle[i], cycle[(i + 1) % len(cycle)]))
                 for i in range(len(cycle))}
    for e in cyc_edges:
        u, v = tuple(e)
        if not tri.has_edge(u, v):
            raise NotADisk("cycle edge %r-%r missing" % (u, v))
    outside = {tri.outer_face}
    stack = [tri.outer_face]
    while stack:
        face = stack.pop()
        for i in range(3):
            e = frozenset((face[i], face[(i + 1) % 3]))
            if e in cyc_edges:
                continue
            nbr = tri.face_of_directed(face[(i + 1) % 3], face[i])
            if nbr not in outside:
                outside.add(nbr)
                stack.append(nbr)
    inside = [f for f in tri.faces if f not in outside]
    if not inside:
        raise NotADisk("cycle bounds no inner face")
    boundary = set()
    for face in inside:
        for i in range(3):
            e = frozenset((face[i], face[(i + 1) % 3]))
            nbr = tri.face_of_directed(face[(i + 1) % 3], face[i])
            if nbr in outside:
                boundary.add(e)
    if boundary != cyc_edges:
        raise NotADisk("cycle does not bound a disk")
    return inside


def assemble_triangulation(fixed_faces, flexible_faces, outer):
    """Rebuild a rotation system from face traces.

    fixed_faces keep their orientation (they come from an existing
    embedding); flexible_faces and the outer trio may each be reversed.
    Orientations are brute forced under the rule that every directed edge is
    used exactly once and twins pair up; the face count is tiny (at most the
    few completion faces of an extraction).
    """
    flex = [tuple(f) for f in flexible_faces] + [tuple(outer)]
    fixed = [tuple(f) for f in fixed_faces]
    for flips in itertools.product((False, True), repeat=len(flex)):
        traces = fixed + [f[::-1] if flip else f
                          for f, flip in zip(flex, flips)]
        used = set()
        ok = True
        for f in traces:
            for i in range(3):
                de = (f[i], f[(i + 1) % 3])
                if de in used:
                    ok = False
                    break
                used.add(de)
            if not ok:
                break
        if not ok or any((v, u) not in used for (u, v) in used):
            continue
        succ = {}
        bad = False
        for f in traces:
            for i in range(3):
                prv, mid, nxt = f[i], f[(i + 1) % 3], f[(i + 2) % 3]
                # corner prv -> mid -> nxt: nxt follows prv clockwise at mid
                if (mid, prv) in succ:
                    bad = True
                    break
                succ[(mid, prv)] = nxt
            if bad:
                break
        if bad:
            continue
        verts = sorted({v for f in traces for v in f})
        rotation = {}
        for v in verts:
            nbrs = sorted({u for (w, u) in succ if w == v})
            start = nbrs[0]
            cyc = [start]
            while True:
                nxt = succ.get((v, cyc[-1]))
                if nxt is None or nxt == start:
                    break
                cyc.append(nxt)
            if len(cyc) != len(nbrs) or set(cyc) != set(nbrs):
                bad = True
                break
            rotation[v] = tuple(cyc)
        if bad:
            continue
        try:
            return PlanarTriangulation(verts, rotation, outer)
        except (NotSimple, NotTriangulation, BadOuterFace, EulerViolation):
            continue
    raise NotADisk("faces do not assemble into a planar triangulation")


def _complete_outside(cycle, added_edges):
    """Ear-clip the outside of a cycle with the given chords.

    Returns (completion_faces, outer_trio); a 3-cycle needs no chords and is
    its own outer trio.
    """
    k = len(cycle)
    if k == 3:
        if added_edges:
            raise NotADisk("a 3-cycle needs no completion edges")
        return [], tuple(cycle)
    chords = {frozenset(e) for e in added_edges}
    if len(chords) != k - 3:
        raise NotADisk("need exactly %d completion edges, got %d"
                       % (k - 3, len(chords)))
    poly = list(cycle)
    faces = []
    while len(poly) > 3:
        for i in range(len(poly)):
            a, b, c = (poly[i], poly[(i + 1) % len(poly)],
                       poly[(i + 2) % len(poly)])
            if frozenset((a, c)) in chords:
                faces.append((a, b, c))
                chords.discard(frozenset((a, c)))
                poly.pop((i + 1) % len(poly))
                break
        else:
            raise NotADisk("completion edges do not triangulate the outside")
    return faces, tuple(poly)


def extract_subtriangulation(tri: PlanarTriangulation, cycle, added_edges=(),
                             outer=None):
    """Triangulation induced inside a cycle, completed outside by chords.

    Vertex ids are preserved.  Returns (sub, inside_faces) where
    inside_faces are the faces of tri that ended up inside the cycle.
    """
    inside = faces_inside_cycle(tri, cycle)
    completion, auto_outer = _complete_outside(list(cycle), added_edges)
    if outer is not None:
        candidates = [tuple(outer)]
    else:
        candidates = [auto_outer, auto_outer[::-1]]
    sub = None
    for cand in candidates:
        try:
            sub = assemble_triangulation(inside, completion, cand)
            break
        except NotADisk:
            if cand is candidates[-1]:
                raise
    if not is_eulerian(sub):
        raise ResultNotEulerian("extracted subtriangulation has odd degrees")
    return sub, inside


@dataclass(frozen=True)
class MergeRecord:
    """Bookkeeping for undoing a zero-face contraction on the geometry side."""

    merged_label: str
    kept: str          # face corner that was merged with its opposite
    opposite: str      # vertex across the face's far edge
    zero_face: Face
    far_edge: tuple    # the two common neighbors (their edge is deleted)
    kept_arc: tuple    # neighbors contributed by kept, in rotation order
    opposite_arc: tuple


def contract_zero_face(tri: PlanarTriangulation, face: Face,
                       coloring: ThreeColoring):
    """Contract a zero-size inner face to a smaller Eulerian triangulation.

    For the face's corners in color order A, B, C, each corner has an
    opposite vertex across the far edge.  The first pair (in that fixed
    order) with exactly two common neighbors is merged after deleting the
    far edge and the opposite vertex's two edges into it.
    """
    face = canon_face(face)
    if face not in tri.faces or face == tri.outer_face:
        raise NoContractiblePair("%s is not an inner face" % (face,))
    by_color = coloring.vertex_by_color(face)
    for col in ("A", "B", "C"):
        vp = by_color[col]
        i = face.index(vp)
        in_v = face[(i - 1) % 3]   # trace predecessor
        out_v = face[(i + 1) % 3]  # trace successor
        opp_face = tri.face_of_directed(in_v, out_v)
        vq = tri.third_vertex(opp_face, in_v, out_v)
        common = set(tri.rotation[vp]) & set(tri.rotation[vq])
        if common == {in_v, out_v}:
            return _contract_pair(tri, vp, vq, in_v, out_v, face)
    raise NoContractiblePair(
        "no corner of %s has a two-common-neighbor pair" % (face,))


def _arc_between(rot, first, last):
    """Cyclic slice of a rotation strictly between two entries."""
    i = rot.index(first)
    out = []
    j = (i + 1) % len(rot)
    while rot[j] != last:
        out.append(rot[j])
        j = (j + 1) % len(rot)
    return out


def _contract_pair(tri, vp, vq, in_v, out_v, face):
    merged = vq if vq in tri.outer else vp
    xs = _arc_between(list(tri.rotation[vp]), out_v, in_v)
    ys = _arc_between(list(tri.rotation[vq]), in_v, out_v)
    new_rot = [out_v] + xs + [in_v] + ys

    rotation = {}
    for v in tri.vertices:
        if v in (vp, vq):
            continue
        nbrs = list(tri.rotation[v])
        if v in (in_v, out_v):
            other = in_v if v == out_v else out_v
            nbrs = [u for u in nbrs if u not in (other, vq)]
            nbrs = [merged if u == vp else u for u in nbrs]
        else:
            nbrs = [merged if u in (vp, vq) else u for u in nbrs]
        rotation[v] = tuple(nbrs)
    rotation[merged] = tuple(new_rot)
    verts = [v for v in tri.vertices if v not in (vp, vq)] + [merged]
    outer = tuple(merged if v in (vp, vq) else v for v in tri.outer)
    try:
        sub = PlanarTriangulation(verts, rotation, outer)
    except (NotSimple, NotTriangulation, EulerViolation) as exc:
        raise ResultNotSimple("contraction broke the triangulation: %s" % exc)
    if not is_eulerian(sub):
        raise ResultNotEulerian("contraction produced odd degrees")
    record = MergeRecord(
        merged_label=merged,
        kept=vp,
        opposite=vq,
        zero_face=face,
        far_edge=(in_v, out_v),
        kept_arc=tuple(xs),
        opposite_arc=tuple(ys),
    )
    return sub, record


def face_origin_map(tri: PlanarTriangulation, sub: PlanarTriangulation,
                    record: MergeRecord):
    """Map each face of the contracted triangulation to its face in tri.

    Faces away from the merged vertex keep their identity.  Faces around it
    are split by the corner they occupy in the merged rotation: corners from
    the kept vertex's fan rename back to it, the rest to the opposite one.
    """
    w = record.merged_label
    m = len(record.kept_arc)
    rot = sub.rotation[w]
    d = len(rot)
    around = sub.faces_around(w)
    i0 = rot.index(record.far_edge[1])  # the out-vertex of the face corner
    assert rot[(i0 + m + 1) % d] == record.far_edge[0]
    mapping = {}
    for j in range(d):
        k = (i0 + j) % d
        origin = record.kept if j <= m else record.opposite
        g = canon_face(tuple(origin if x == w else x for x in around[k]))
        if g not in tri.faces:
            raise AssertionError("face origin %s not found in parent" % (g,))
        mapping[around[k]] = g
    for f in sub.faces:
        if f not in mapping:
            mapping[f] = f
    return mapping


# -- json io ------------------------------------------------------------------


def to_json_dict(tri: PlanarTriangulation) -> dict:
    return {
        "vertices": list(tri.vertices),
        "rotation": {v: list(tri.rotation[v]) for v in tri.vertices},
        "outer": list(tri.outer),
    }


def from_json_dict(data: dict) -> PlanarTriangulation:
    if not isinstance(data, dict):
        raise ParseError("graph file must hold a JSON object")
    extra = set(data) - {"vertices", "rotation", "outer"}
    if extra:
        raise ParseError("unknown keys in graph file: %s" % sorted(extra))
    for key in ("vertices", "rotation", "outer"):
        if key not in data:
            raise ParseError("graph file is missing %r" % key)
    verts = [str(v) for v in data["vertices"]]
    if not isinstance(data["rotation"], dict):
        raise ParseError("rotation must be an object")
    rotation = {str(v): [str(u) for u in nbrs]
                for v, nbrs in data["rotation"].items()}
    if set(rotation) != set(verts):
        raise ParseError("rotation keys must match the vertex list")
    outer = [str(v) for v in data["outer"]]
    return validate(verts, rotation, outer)


def load_graph(path) -> PlanarTriangulation:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON in %s: %s" % (path, exc))
    return from_json_dict(data)
