"""Corner graph of a contact scheme, recomputed from exact geometry.

Nothing here peeks at how the scheme was built: intersection points,
rays, triangular regions and degenerate contact points are all derived
from the segments alone, then checked against the triangulation.

At an intersection point every segment contributes one ray per direction
it continues in.  A sector between two cyclically consecutive rays that
spans less than a straight angle is the corner of exactly one inner
region; walking corner to corner recovers each region, which must be a
triangle.  Points where three or more segments meet are the degenerate
contact points; their cycles (the segments in ray order, split at a
through-going segment) are the degenerate faces of the corner graph.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from . import geometry as geo
from .errors import UnclassifiablePoint
from .geometry import Frame
from .scheme import ContactScheme


def _ray_vector(frame: Frame, color: str, sign: int):
    ax, ay = frame.basis.vec(color)
    if color == "C":
        # the C parameter is lam, which grows against vec_c
        ax, ay = -ax, -ay
    return (sign * ax, sign * ay)


def _sort_ccw(vec_rays):
    """Sort (vector, payload) pairs counterclockwise by exact comparisons."""
    def half(v):
        x, y = v
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    def cmp(a, b):
        va, vb = a[0], b[0]
        ha, hb = half(va), half(vb)
        if ha != hb:
            return -1 if ha < hb else 1
        c = va[0] * vb[1] - va[1] * vb[0]
        if c == 0:
            return 0
        return -1 if c > 0 else 1

    return sorted(vec_rays, key=functools.cmp_to_key(cmp))


@dataclass
class Ray:
    vertex: str
    color: str
    vector: tuple
    param_sign: int


@dataclass
class ContactPoint:
    point: tuple
    vertices: list
    enders: list
    rays: list              # counterclockwise order
    kind: str


@dataclass
class Region:
    labels: dict            # color -> vertex
    size: Fraction
    corners: list           # the three corner points


@dataclass
class CornerGraph:
    nodes: list
    edges: set              # frozenset pairs of vertex labels
    regions: list
    degenerate_faces: list  # (point, cycle tuple of vertex labels)
    points: dict            # point -> ContactPoint
    outer_corner_points: dict


def _classify(n_segs, n_end):
    if n_segs == 2 and n_end == 2:
        return "corner2"
    if n_segs == 3 and n_end == 2:
        return "simple3"
    if n_segs == 5 and n_end == 4:
        return "double5"
    if n_segs == 6 and n_end == 6:
        return "full6"
    raise UnclassifiablePoint(
        "%d segments with %d ending is outside the contact taxonomy"
        % (n_segs, n_end))


def intersection_points(scheme: ContactScheme):
    """All pairwise intersection points of the scheme's segments.

    Overlapping collinear segments are an immediate breach.  Returns
    point -> sorted list of vertex labels.
    """
    frame = scheme.frame
    labels = sorted(scheme.segments)
    pts = {}
    for i, u in enumerate(labels):
        for w in labels[i + 1:]:
            kind, data = geo.segment_intersection(
                frame, scheme.segments[u], scheme.segments[w])
            if kind == "none":
                continue
            if kind == "overlap":
                raise UnclassifiablePoint(
                    "segments %r and %r overlap" % (u, w))
            pts.setdefault(data, set()).update((u, w))
    return {p: sorted(vs) for p, vs in pts.items()}


def analyze_points(scheme: ContactScheme):
    frame = scheme.frame
    out = {}
    for point, verts in intersection_points(scheme).items():
        rays = []
        enders = []
        for v in verts:
            seg = scheme.segments[v]
            where = geo.point_position_on(frame, seg, point)
            t = geo.param_of(frame, seg.color, point)
            if where == "interior":
                rays.append(Ray(v, seg.color,
                                _ray_vector(frame, seg.color, 1), 1))
                rays.append(Ray(v, seg.color,
                                _ray_vector(frame, seg.color, -1), -1))
            elif where == "endpoint":
                enders.append(v)
                sign = 1 if t == seg.lo else -1
                rays.append(Ray(v, seg.color,
                                _ray_vector(frame, seg.color, sign), sign))
            else:
                raise AssertionError("intersection off its own segment")
        ordered = [r for _, r in _sort_ccw([(r.vector, r) for r in rays])]
        kind = _classify(len(verts), len(enders))
        out[point] = ContactPoint(point, list(verts), enders, ordered, kind)
    return out


def _corner_sectors(cp: ContactPoint):
    """Indexes i such that rays i, i+1 bound a corner sector (angle < pi)."""
    rays = cp.rays
    n = len(rays)
    out = []
    for i in range(n):
        r1, r2 = rays[i], rays[(i + 1) % n]
        cross = (r1.vector[0] * r2.vector[1] - r1.vector[1] * r2.vector[0])
        if cross > 0:
            out.append(i)
    return out


def build_corner_graph(scheme: ContactScheme) -> CornerGraph:
    frame = scheme.frame
    points = analyze_points(scheme)

    # positions of the contact points along each segment, for corner walks
    on_segment = {v: [] for v in scheme.segments}
    for p, cp in points.items():
        for v in cp.vertices:
            t = geo.param_of(frame, scheme.segments[v].color, p)
            on_segment[v].append((t, p))
    for v in on_segment:
        on_segment[v].sort()

    def next_point(v, p, param_sign):
        t = geo.param_of(frame, scheme.segments[v].color, p)
        seq = on_segment[v]
        idx = seq.index((t, p))
        j = idx + param_sign
        if j < 0 or j >= len(seq):
            return None
        return seq[j][1]

    # corners: (point, sector index) -> consumed flag
    sectors = {}
    for p, cp in points.items():
        for i in _corner_sectors(cp):
            sectors[(p, i)] = False

    def ray_index(cp, vertex, param_sign):
        for i, r in enumerate(cp.rays):
            if r.vertex == vertex and r.param_sign == param_sign:
                return i
        raise AssertionError("missing ray")

    regions = []
    edges = set()
    for start in sorted(sectors):
        if sectors[start]:
            continue
        walk = []
        cur = start
        for _ in range(3):
            p, i = cur
            cp = points[p]
            sectors[cur] = True
            ray_a = cp.rays[i]
            ray_b = cp.rays[(i + 1) % len(cp.rays)]
            walk.append((p, ray_a, ray_b))
            q = next_point(ray_a.vertex, p, ray_a.param_sign)
            if q is None:
                raise UnclassifiablePoint(
                    "region walk fell off segment %r" % (ray_a.vertex,))
            cq = points[q]
            back = ray_index(cq, ray_a.vertex, -ray_a.param_sign)
            cur = (q, (back - 1) % len(cq.rays))
        if cur != start:
            raise UnclassifiablePoint("region walk did not close in three steps")
        labels = {}
        corners = []
        for p, ray_a, ray_b in walk:
            corners.append(p)
            labels[scheme.segments[ray_a.vertex].color] = ray_a.vertex
            labels[scheme.segments[ray_b.vertex].color] = ray_b.vertex
            edges.add(frozenset((ray_a.vertex, ray_b.vertex)))
        if len(labels) != 3:
            raise UnclassifiablePoint(
                "region with sides %s" % (sorted(labels.values()),))
        lam_b = frame.lam(
            geo.point_at(frame, "B", scheme.segments[labels["B"]].level,
                         Fraction(0)))
        size = geo.triangle_size(scheme.segments[labels["B"]].level,
                                 scheme.segments[labels["A"]].level,
                                 scheme.segments[labels["C"]].level)
        regions.append(Region(labels, size, corners))

    degenerate = []
    for p, cp in sorted(points.items()):
        if len(cp.vertices) < 3:
            continue
        through = [v for v in cp.vertices if v not in cp.enders]
        if not through:
            cycle = tuple(r.vertex for r in cp.rays)
            degenerate.append((p, cycle))
            continue
        (t,) = through
        n = len(cp.rays)
        i1 = ray_index(cp, t, 1)
        i2 = ray_index(cp, t, -1)
        for a, b in ((i1, i2), (i2, i1)):
            arc = []
            j = (a + 1) % n
            while j != b:
                arc.append(cp.rays[j].vertex)
                j = (j + 1) % n
            if arc:
                degenerate.append((p, tuple([t] + arc)))
    out_pts = {
        "ca": frame.point(Fraction(0), Fraction(0)),
        "ab": frame.point(Fraction(1), Fraction(0)),
        "bc": frame.point(Fraction(1), Fraction(1)),
    }
    return CornerGraph(sorted(scheme.segments), edges, regions, degenerate,
                       points, out_pts)


@dataclass
class SchemeReport:
    ok: bool
    violations: list = field(default_factory=list)

    def fail(self, msg):
        self.ok = False
        self.violations.append(msg)


def verify_scheme(scheme: ContactScheme,
                  tri=None) -> SchemeReport:
    """Independent structural check of a contact scheme.

    Confirms that the corner graph's outer face and regions are faces of
    the triangulation, that region sizes match the solved face sizes,
    that degenerate faces have size three or six (six-cycles chordless),
    and that the corner graph is 3-connected.
    """
    if tri is None:
        tri = scheme.tri
    report = SchemeReport(True)
    try:
        cg = build_corner_graph(scheme)
    except UnclassifiablePoint as exc:
        report.fail("corner structure: %s" % exc)
        return report

    # outer corner contacts sit exactly at the unit triangle's corners
    for key, pt in cg.outer_corner_points.items():
        if pt not in cg.points:
            report.fail("missing outer corner %s" % key)
            continue
        cp = cg.points[pt]
        if cp.kind != "corner2":
            report.fail("outer corner %s has kind %s" % (key, cp.kind))

    # every corner-graph edge is an edge of the triangulation
    for e in cg.edges:
        u, w = sorted(e)
        if not tri.has_edge(u, w):
            report.fail("corner contact %r-%r is not an edge" % (u, w))

    # regions are exactly the nonzero clockwise faces, with the right sizes
    want = {}
    for face in scheme.bipartition.clockwise:
        if scheme.solution.of(face) != 0:
            want[frozenset(face)] = scheme.solution.of(face)
    got = {}
    for region in cg.regions:
        trio = frozenset(region.labels.values())
        if trio in got:
            report.fail("region %s appears twice" % sorted(trio))
        got[trio] = region.size
    if set(got) != set(want):
        report.fail("regions %s differ from nonzero faces %s"
                    % (sorted(map(sorted, got)), sorted(map(sorted, want))))
    else:
        for trio, size in want.items():
            if got[trio] != size:
                report.fail("region %s has size %s, expected %s"
                            % (sorted(trio), got[trio], size))
        for trio in got:
            if tri.face_with_vertices(tuple(trio)) is None:
                report.fail("region %s is not an inner face" % sorted(trio))

    # degenerate faces have size three or six; six-cycles are chordless
    for p, cycle in cg.degenerate_faces:
        if len(cycle) not in (3, 6):
            report.fail("degenerate face of size %d at %s"
                        % (len(cycle), p))
        if len(cycle) == 6:
            k = len(cycle)
            for i in range(k):
                for j in range(i + 2, k):
                    if i == 0 and j == k - 1:
                        continue
                    if frozenset((cycle[i], cycle[j])) in cg.edges:
                        report.fail("chord %r-%r inside degenerate face"
                                    % (cycle[i], cycle[j]))

    # signed areas tile the unit triangle
    if sum(r.size * r.size for r in cg.regions) != 1:
        report.fail("region areas do not tile the unit triangle")
    if not _regions_disjoint(scheme.frame, cg.regions):
        report.fail("region interiors overlap")

    g = nx.Graph()
    g.add_nodes_from(cg.nodes)
    g.add_edges_from(tuple(e) for e in cg.edges)
    if len(g) >= 4 and nx.node_connectivity(g) < 3:
        report.fail("corner graph is not 3-connected")
    return report


def _regions_disjoint(frame: Frame, regions) -> bool:
    boxes = []
    for r in regions:
        lams = [frame.lam(p) for p in r.corners]
        mus = [frame.mu(p) for p in r.corners]
        nus = [frame.nu(p) for p in r.corners]
        boxes.append(((min(lams), max(lams)), (min(mus), max(mus)),
                      (min(nus), max(nus))))
    n = len(boxes)
    for i in range(n):
        for j in range(i + 1, n):
            separated = False
            for axis in range(3):
                lo1, hi1 = boxes[i][axis]
                lo2, hi2 = boxes[j][axis]
                if hi1 <= lo2 or hi2 <= lo1:
                    separated = True
                    break
            if not separated:
                return False
    return True
