"""The face-size linear system and its exact solver.

One variable per clockwise face, one equation per vertex except the outer
B and C anchors (their equations are implied by the others): sizes around
the outer A anchor sum to 1, sizes around every inner vertex sum to 0.
The matrix is 0/1 with deterministic row and column order, solved by
fraction-free Gaussian elimination so every intermediate value stays an
integer and the solution is exact.

The matching-based oracles at the bottom are test instrumentation: they
check on small instances that the matrix determinant equals the number of
perfect matchings of the vertex/face incidence graph and that all matchings
carry one permutation sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import MixedSigns, NotEulerian, SingularMatrix, TooLarge
from .triangulation import (
    FaceBipartition,
    PlanarTriangulation,
    ThreeColoring,
    is_eulerian,
)


@dataclass(frozen=True)
class SizeSystem:
    rows: tuple           # vertex ids, sorted, outer B/C anchors removed
    cols: tuple           # clockwise faces, sorted
    matrix: tuple         # tuple of row tuples over {0, 1}
    rhs: tuple            # 1 at the outer A anchor, 0 elsewhere

    @property
    def size(self) -> int:
        return len(self.rows)


def build_size_system(tri: PlanarTriangulation, coloring: ThreeColoring,
                      bipartition: FaceBipartition,
                      row_order=None, col_order=None) -> SizeSystem:
    """Assemble the incidence system; orders default to sorted and exist
    only so determinism tests can permute them."""
    a0, b0, c0 = tri.outer
    rows = tuple(row_order) if row_order else tuple(
        v for v in tri.vertices if v not in (b0, c0))
    cols = tuple(col_order) if col_order else tuple(
        sorted(bipartition.clockwise))
    incident = {f: set(f) for f in cols}
    matrix = tuple(
        tuple(1 if v in incident[f] else 0 for f in cols) for v in rows)
    rhs = tuple(1 if v == a0 else 0 for v in rows)
    return SizeSystem(rows, cols, matrix, rhs)


@dataclass(frozen=True)
class SizeSolution:
    sizes: dict  # clockwise face -> Fraction

    def of(self, face) -> Fraction:
        return self.sizes[face]

    def zero_faces(self):
        return sorted(f for f, x in self.sizes.items() if x == 0)


def _bareiss_solve(matrix, rhs):
    """Fraction-free elimination on the augmented integer matrix.

    Divisions are exact by the Bareiss identity, so everything stays an
    integer until back substitution.  Returns a list of Fractions.
    """
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if aug[r][k] != 0), None)
        if piv is None:
            raise SingularMatrix("size system matrix is singular")
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
        for r in range(k + 1, n):
            for c in range(k + 1, n + 1):
                aug[r][c] = (aug[k][k] * aug[r][c]
                             - aug[r][k] * aug[k][c]) // prev
            aug[r][k] = 0
        prev = aug[k][k]
    xs = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = Fraction(aug[r][n])
        for c in range(r + 1, n):
            acc -= aug[r][c] * xs[c]
        xs[r] = acc / aug[r][r]
    return xs


def _bareiss_determinant(matrix):
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(row) for row in matrix]
    prev = 1
    sign = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                m[r][c] = (m[k][k] * m[r][c] - m[r][k] * m[k][c]) // prev
            m[r][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def solve_sizes(tri: PlanarTriangulation, coloring: ThreeColoring,
                bipartition: FaceBipartition,
                system: SizeSystem | None = None) -> SizeSolution:
    """Solve the size system exactly and verify the solution identities."""
    if system is None:
        system = build_size_system(tri, coloring, bipartition)
    xs = _bareiss_solve(system.matrix, system.rhs)
    sizes = dict(zip(system.cols, xs))
    _check_solution(tri, coloring, bipartition, sizes)
    return SizeSolution(sizes)


def _check_solution(tri, coloring, bipartition, sizes):
    outer = set(tri.outer)
    assert sum(sizes.values()) == 1, "face sizes must sum to 1"
    for v in tri.vertices:
        incid = [f for f in tri.faces_around(v)
                 if f in bipartition.clockwise]
        total = sum(sizes[f] for f in incid)
        if v in outer:
            assert total == 1, "outer corner %r sums to %s" % (v, total)
        else:
            assert total == 0, "inner vertex %r sums to %s" % (v, total)
    for f in bipartition.clockwise:
        if len(outer & set(f)) == 2:
            assert sizes[f] > 0, "corner face %s has size %s" % (f, sizes[f])


# -- matching oracles -----------------------------------------------------------


def incidence_graph_edges(system: SizeSystem):
    """Bipartite adjacency row index -> list of column indexes."""
    return [[j for j, bit in enumerate(row) if bit]
            for row in system.matrix]


def perfect_matching_oracle(tri: PlanarTriangulation, coloring: ThreeColoring,
                            bipartition: FaceBipartition):
    """A perfect matching of the vertex/face incidence graph, or None.

    Augmenting-path search; on a valid Eulerian instance a perfect matching
    always exists, so None signals misuse or an invariant breach upstream.
    """
    if not is_eulerian(tri):
        return None
    system = build_size_system(tri, coloring, bipartition)
    adj = incidence_graph_edges(system)
    n = system.size
    match_col = [-1] * n

    def try_augment(r, seen):
        for c in adj[r]:
            if c in seen:
                continue
            seen.add(c)
            if match_col[c] == -1 or try_augment(match_col[c], seen):
                match_col[c] = r
                return True
        return False

    for r in range(n):
        if not try_augment(r, set()):
            return None
    return {system.rows[match_col[c]]: system.cols[c] for c in range(n)}


def _enumerate_matchings(adj, n):
    """All perfect matchings as column permutations (row -> col)."""
    out = []
    cols_used = [False] * n
    perm = [0] * n

    rows = sorted(range(n), key=lambda r: len(adj[r]))

    def rec(k):
        if k == n:
            out.append(tuple(perm))
            return
        r = rows[k]
        for c in adj[r]:
            if not cols_used[c]:
                cols_used[c] = True
                perm[r] = c
                rec(k + 1)
                cols_used[c] = False

    rec(0)
    return out


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def determinant_sign_oracle(system: SizeSystem, limit: int = 12):
    """Enumerate perfect matchings and cross-check against the determinant.

    Returns (count, sign).  Exponential; refuses systems larger than limit.
    """
    if system.size > limit:
        raise TooLarge("oracle limited to %d rows, got %d"
                       % (limit, system.size))
    adj = incidence_graph_edges(system)
    matchings = _enumerate_matchings(adj, system.size)
    if not matchings:
        return (0, 0)
    signs = {_perm_sign(p) for p in matchings}
    if len(signs) > 1:
        raise MixedSigns("perfect matchings with opposite permutation signs")
    sign = signs.pop()
    det = _bareiss_determinant(system.matrix)
    if abs(det) != len(matchings) or (det > 0) != (sign > 0):
        raise MixedSigns(
            "determinant %d disagrees with %d matchings of sign %d"
            % (det, len(matchings), sign))
    return (len(matchings), sign)


def alternating_cycles(perm1, perm2):
    """Cycle lengths of the symmetric difference of two matchings.

    Each common cycle alternates between the two matchings in the bipartite
    incidence graph, so its edge length is twice the permutation cycle.
    """
    n = len(perm1)
    inv2 = [0] * n
    for r, c in enumerate(perm2):
        inv2[c] = r
    lengths = []
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        r = start
        length = 0
        while not seen[r]:
            seen[r] = True
            r = inv2[perm1[r]]
            length += 2
        if length > 2:
            lengths.append(length)
    return lengths
