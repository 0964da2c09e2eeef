import random

import pytest

from trislope import errors
from trislope import triangulation as tg

from conftest import brute_force_colorings, dual_bfs_bipartition


def test_k3_validates(k3):
    assert len(k3.faces) == 2
    assert k3.outer_face in k3.faces


def test_octahedron_validates(octa):
    assert len(octa.vertices) == 6
    assert len(octa.faces) == 8
    assert all(octa.degree(v) == 4 for v in octa.vertices)


def test_k4_is_valid_but_not_eulerian():
    tri = tg.k4()
    assert len(tri.faces) == 4
    assert not tg.is_eulerian(tri)
    with pytest.raises(errors.NotEulerian):
        tg.three_color(tri)


def test_loop_rejected():
    with pytest.raises(errors.NotSimple):
        tg.validate(["a", "b", "c"],
                    {"a": ["a", "b", "c"], "b": ["c", "a"], "c": ["a", "b"]},
                    ("a", "b", "c"))


def test_quad_face_rejected():
    # square with one diagonal missing traces a 4-face
    rotation = {
        "a": ["b", "d"],
        "b": ["c", "a"],
        "c": ["d", "b"],
        "d": ["a", "c"],
    }
    with pytest.raises(errors.NotTriangulation):
        tg.validate(["a", "b", "c", "d"], rotation, ("a", "b", "c"))


def test_bad_outer_orientation_rejected(octa):
    with pytest.raises(errors.BadOuterFace):
        tg.validate(octa.vertices, octa.rotation, ("a0", "c0", "b0"))


def test_eulerian_examples(k3, octa):
    assert tg.is_eulerian(k3)
    assert tg.is_eulerian(octa)


def test_three_color_k3(k3):
    coloring = tg.three_color(k3)
    assert coloring.color == {"a0": "A", "b0": "B", "c0": "C"}


def test_three_color_octahedron_matches_brute_force(octa):
    proper = brute_force_colorings(octa)
    assert len(proper) == 6  # unique up to the 3! color permutations
    coloring = tg.three_color(octa)
    anchored = [c for c in proper
                if c["a0"] == "A" and c["b0"] == "B" and c["c0"] == "C"]
    assert len(anchored) == 1
    assert coloring.color == anchored[0]
    # antipodal pairs share a color
    assert coloring.of("a1") == "A"
    assert coloring.of("b1") == "B"
    assert coloring.of("c1") == "C"


def test_bipartition_k3(k3):
    coloring = tg.three_color(k3)
    bip = tg.bipartition_faces(k3, coloring)
    assert bip.counterclockwise == frozenset({k3.outer_face})
    assert len(bip.clockwise) == 1


def test_bipartition_octahedron(octa):
    coloring = tg.three_color(octa)
    bip = tg.bipartition_faces(octa, coloring)
    expect_cw = {tg.canon_face(f) for f in
                 [("a0", "b0", "c1"), ("a1", "b0", "c0"),
                  ("a0", "b1", "c0"), ("a1", "b1", "c1")]}
    cw_sets = {frozenset(f) for f in bip.clockwise}
    assert cw_sets == {frozenset(f) for f in expect_cw}
    cw_oracle, ccw_oracle = dual_bfs_bipartition(octa)
    assert bip.clockwise == cw_oracle
    assert bip.counterclockwise == ccw_oracle


def test_bipartition_counts_on_random_instances():
    rng = random.Random(11)
    for _ in range(20):
        tri = tg.random_instance(rng.randint(1, 8), rng=rng)
        coloring = tg.three_color(tri)
        bip = tg.bipartition_faces(tri, coloring)
        n = len(tri.vertices)
        assert len(bip.clockwise) == n - 2
        assert len(bip.counterclockwise) == n - 2
        cw_oracle, ccw_oracle = dual_bfs_bipartition(tri)
        assert bip.clockwise == cw_oracle
        # adjacent faces never share a side
        for face in tri.faces:
            for i in range(3):
                nbr = tri.face_of_directed(face[(i + 1) % 3], face[i])
                assert bip.side(nbr) != bip.side(face)


def test_glue_k3_gives_octahedron(k3):
    inner = [f for f in k3.faces if f != k3.outer_face][0]
    glued = tg.glue_octahedron(k3, inner, new_ids=("a1", "b1", "c1"))
    assert len(glued.vertices) == 6
    assert tg.is_eulerian(glued)
    # isomorphic to the reference octahedron: same degrees, same outer
    assert sorted(glued.degree(v) for v in glued.vertices) == [4] * 6


def test_glue_octahedron_face(octa):
    face = octa.face_with_vertices(("a1", "b1", "c1"))
    glued = tg.glue_octahedron(octa, face)
    assert len(glued.vertices) == 9
    assert tg.is_eulerian(glued)
    for v in octa.vertices:
        if v in face:
            assert glued.degree(v) == octa.degree(v) + 2
        else:
            assert glued.degree(v) == octa.degree(v)


def test_glue_outer_face_rejected(octa):
    with pytest.raises(errors.OuterFaceNotAllowed):
        tg.glue_octahedron(octa, octa.outer_face)


def test_repeated_gluings_stay_eulerian():
    rng = random.Random(5)
    for trial in range(10):
        k = rng.randint(1, 10)
        tri = tg.random_instance(k, rng=rng)
        assert len(tri.vertices) == 3 + 3 * k
        assert tg.is_eulerian(tri)


def test_extract_inner_face_of_octahedron_gives_triangle(octa):
    sub, inside = tg.extract_subtriangulation(octa, ("a1", "c1", "b1"))
    assert len(sub.vertices) == 3
    assert len(inside) == 1


def test_extract_patch_of_glued_instance_is_octahedron():
    octa = tg.octahedron()
    face = octa.face_with_vertices(("a1", "b1", "c1"))  # trace (a1, c1, b1)
    glued = tg.glue_octahedron(octa, face, new_ids=("a2", "c2", "b2"))
    # 3-cycle around the whole patch: the old face's corners
    sub3, inside3 = tg.extract_subtriangulation(glued, ("a1", "c1", "b1"))
    assert len(sub3.vertices) == 6
    assert len(inside3) == 7
    assert sorted(sub3.degree(v) for v in sub3.vertices) == [4] * 6
    # 6-cycle hugging the patch plus the three old edges re-added outside
    cycle = ("a1", "c2", "b1", "a2", "c1", "b2")
    added = [("a1", "b1"), ("b1", "c1"), ("c1", "a1")]
    sub6, inside6 = tg.extract_subtriangulation(glued, cycle, added)
    assert len(sub6.vertices) == 6
    assert len(inside6) == 4
    assert tg.is_eulerian(sub6)
    assert sorted(sub6.degree(v) for v in sub6.vertices) == [4] * 6


def test_extract_not_a_disk():
    octa = tg.octahedron()
    # a0 and a1 are antipodal, so this is not even a cycle of the graph
    with pytest.raises(errors.NotADisk):
        tg.extract_subtriangulation(octa, ("a0", "a1", "b0"))


def test_contract_octahedron_center_has_no_pair(octa):
    # every pair of opposite corners shares four neighbors here; the
    # contraction guarantee only covers zero-size faces
    coloring = tg.three_color(octa)
    face = octa.face_with_vertices(("a1", "b1", "c1"))
    with pytest.raises(errors.NoContractiblePair):
        tg.contract_zero_face(octa, face, coloring)


def test_contract_round_trip():
    # build a 9-vertex instance, split a degree-6 vertex by hand, and check
    # that contract_zero_face undoes the split exactly
    octa = tg.octahedron()
    face = octa.face_with_vertices(("a1", "b1", "c1"))
    glued = tg.glue_octahedron(octa, face, new_ids=("a2", "c2", "b2"))
    assert glued.rotation["a1"] == ("b0", "c0", "b1", "c2", "b2", "c1")
    w = "a1"
    rot = ["c2", "b2", "c1", "b0", "c0", "b1"]  # rotated to start at out_v
    xs, in_v, ys = rot[1:3], rot[3], rot[4:]
    vp, vq = "a1", "a9"
    rotation = {v: list(glued.rotation[v]) for v in glued.vertices if v != w}
    rotation[vp] = [in_v, "c2"] + xs
    rotation[vq] = ["c2", in_v] + ys
    # b0 and c2 gain the new face corners; everyone else keeps a1 or moves
    # to a9 depending on which side of the split they sat
    rotation["b0"] = ["c0", vq, "c2", vp, "c1", "a0"]
    rotation["c2"] = ["b2", vp, "b0", vq, "b1", "a2"]
    for v in ("b2", "c1"):
        rotation[v] = [vp if u == w else u for u in rotation[v]]
    for v in ("c0", "b1"):
        rotation[v] = [vq if u == w else u for u in rotation[v]]
    verts = [v for v in glued.vertices if v != w] + [vp, vq]
    expanded = tg.validate(verts, rotation, glued.outer)
    assert tg.is_eulerian(expanded)
    coloring = tg.three_color(expanded)
    new_face = expanded.face_with_vertices((vp, "b0", "c2"))
    assert new_face is not None
    sub, record = tg.contract_zero_face(expanded, new_face, coloring)
    assert record.kept == vp and record.opposite == vq
    assert sub.rotation == glued.rotation
    assert sub.outer == glued.outer
    mapping = tg.face_origin_map(expanded, sub, record)
    assert set(mapping.keys()) == set(sub.faces)
    for f, g in mapping.items():
        assert g in expanded.faces


def test_json_roundtrip(octa, tmp_path):
    data = tg.to_json_dict(octa)
    back = tg.from_json_dict(data)
    assert back.rotation == octa.rotation
    assert back.outer == octa.outer


def test_json_strict_keys(octa):
    data = tg.to_json_dict(octa)
    data["extra"] = 1
    with pytest.raises(errors.ParseError):
        tg.from_json_dict(data)
