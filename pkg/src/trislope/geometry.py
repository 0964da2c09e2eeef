"""Exact plane geometry over rationals for the 3-slopes world.

Every segment the pipeline manipulates is parallel to one of three basis
vectors that sum to zero.  That makes three affine functionals a natural
coordinate system: for a point p write p = x*vec_a + y*vec_b, then

    lam(p) = x      (constant on lines parallel to vec_b)
    nu(p)  = y      (constant on lines parallel to vec_a)
    mu(p)  = x - y  (constant on lines parallel to vec_c)

A line of slope class A/B/C is a level set of nu/lam/mu respectively, and
any triangle bounded by one line of each class has signed homothety ratio

    size = lam(b_line) - nu(a_line) - mu(c_line)

relative to the unit triangle (positive means same orientation).  All
arithmetic is fractions.Fraction; nothing here ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Rat = Fraction

COLORS = ("A", "B", "C")


@dataclass(frozen=True)
class SlopeBasis:
    """Three pairwise non-parallel rational vectors with zero sum."""

    vec_a: tuple[Rat, Rat]
    vec_b: tuple[Rat, Rat]
    vec_c: tuple[Rat, Rat]

    def __post_init__(self):
        ax, ay = self.vec_a
        bx, by = self.vec_b
        cx, cy = self.vec_c
        if (ax + bx + cx, ay + by + cy) != (0, 0):
            raise ValueError("basis vectors must sum to zero")
        for (ux, uy), (vx, vy) in ((self.vec_a, self.vec_b),
                                   (self.vec_b, self.vec_c),
                                   (self.vec_c, self.vec_a)):
            if ux * vy - uy * vx == 0:
                raise ValueError("basis vectors must be pairwise non-parallel")

    def vec(self, color: str) -> tuple[Rat, Rat]:
        return {"A": self.vec_a, "B": self.vec_b, "C": self.vec_c}[color]


def standard_basis() -> SlopeBasis:
    h = Fraction(1, 2)
    return SlopeBasis((h, h), (Fraction(0), Fraction(-1)), (-h, h))


class Frame:
    """Coordinate helper bound to one SlopeBasis.

    Points are cartesian (x, y) Fraction pairs.  The frame converts between
    cartesian points and the (lam, nu) coefficients in the (vec_a, vec_b)
    basis, and builds points from pairs of line levels.
    """

    def __init__(self, basis: SlopeBasis):
        self.basis = basis
        ax, ay = basis.vec_a
        bx, by = basis.vec_b
        det = ax * by - ay * bx
        if det == 0:
            raise ValueError("degenerate basis")
        self._inv = (by / det, -bx / det, -ay / det, ax / det)

    def point(self, lam: Rat, nu: Rat) -> tuple[Rat, Rat]:
        ax, ay = self.basis.vec_a
        bx, by = self.basis.vec_b
        return (lam * ax + nu * bx, lam * ay + nu * by)

    def lam(self, p) -> Rat:
        m11, m12, _, _ = self._inv
        return m11 * p[0] + m12 * p[1]

    def nu(self, p) -> Rat:
        _, _, m21, m22 = self._inv
        return m21 * p[0] + m22 * p[1]

    def mu(self, p) -> Rat:
        return self.lam(p) - self.nu(p)

    def level(self, color: str, p) -> Rat:
        """Level of the color-class line through p (A: nu, B: lam, C: mu)."""
        if color == "A":
            return self.nu(p)
        if color == "B":
            return self.lam(p)
        return self.mu(p)

    def point_on_levels(self, color1: str, lvl1: Rat, color2: str, lvl2: Rat):
        """Intersection point of two slope-class lines given by levels."""
        if color1 == color2:
            raise ValueError("parallel lines do not meet in one point")
        lv = {color1: lvl1, color2: lvl2}
        if "A" in lv and "B" in lv:
            lam, nu = lv["B"], lv["A"]
        elif "B" in lv and "C" in lv:
            lam = lv["B"]
            nu = lv["B"] - lv["C"]
        else:
            nu = lv["A"]
            lam = lv["C"] + lv["A"]
        return self.point(lam, nu)


def param_of(frame: Frame, color: str, p) -> Rat:
    """Position of p along a color-class line (B lines use nu, others lam)."""
    if color == "B":
        return frame.nu(p)
    return frame.lam(p)


def point_at(frame: Frame, color: str, level: Rat, t: Rat):
    """Point on the color-class line at the given level, at parameter t."""
    if color == "A":
        return frame.point(t, level)
    if color == "B":
        return frame.point(level, t)
    # C line: mu = level, param lam = t, hence nu = t - level
    return frame.point(t, t - level)


@dataclass(frozen=True)
class Segment:
    """Closed segment on a slope-class line.

    level is the class functional of the supporting line, (lo, hi) the
    parameter range along it (see param_of).  Endpoints are derived.
    """

    color: str
    level: Rat
    lo: Rat
    hi: Rat

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty segment range")

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def endpoints(self, frame: Frame):
        return (point_at(frame, self.color, self.level, self.lo),
                point_at(frame, self.color, self.level, self.hi))


def make_segment(frame: Frame, color: str, p, q) -> Segment:
    """Segment between two points that must lie on one color-class line."""
    lvl_p = frame.level(color, p)
    lvl_q = frame.level(color, q)
    if lvl_p != lvl_q:
        raise ValueError("points are not on a common %s line" % color)
    tp = param_of(frame, color, p)
    tq = param_of(frame, color, q)
    if tp > tq:
        tp, tq = tq, tp
    return Segment(color, lvl_p, tp, tq)


def segment_intersection(frame: Frame, s: Segment, t: Segment):
    """Exact intersection of two slope-class segments.

    Returns ("none", None), ("point", p) or ("overlap", (p, q)) where the
    overlap case reports the shared stretch of two collinear segments.
    """
    if s.color == t.color:
        if s.level != t.level:
            return ("none", None)
        lo = max(s.lo, t.lo)
        hi = min(s.hi, t.hi)
        if lo > hi:
            return ("none", None)
        if lo == hi:
            return ("point", point_at(frame, s.color, s.level, lo))
        return ("overlap", (point_at(frame, s.color, s.level, lo),
                            point_at(frame, s.color, s.level, hi)))
    p = frame.point_on_levels(s.color, s.level, t.color, t.level)
    ts = param_of(frame, s.color, p)
    tt = param_of(frame, t.color, p)
    if s.lo <= ts <= s.hi and t.lo <= tt <= t.hi:
        return ("point", p)
    return ("none", None)


def point_position_on(frame: Frame, seg: Segment, p) -> str:
    """'interior', 'endpoint' or 'off' for a point on seg's supporting line."""
    t = param_of(frame, seg.color, p)
    if t < seg.lo or t > seg.hi:
        return "off"
    if t == seg.lo or t == seg.hi:
        return "endpoint"
    return "interior"


def triangle_size(lam_b: Rat, nu_a: Rat, mu_c: Rat) -> Rat:
    """Signed size of the triangle bounded by a B, an A and a C line."""
    return lam_b - nu_a - mu_c


@dataclass(frozen=True)
class Hexagon:
    """Hexagonal safety region around the unit triangle.

    In functional coordinates it is the box

        0 <= lam <= 1 + eps,   -eps <= mu <= 1,   -eps <= nu <= 1

    whose six sides are slope-class lines; the unit triangle's corners sit
    on the three short sides (lam = 0, mu = 1, nu = 1).
    """

    eps: Rat

    @property
    def lam_range(self):
        return (Fraction(0), 1 + self.eps)

    @property
    def mu_range(self):
        return (-self.eps, Fraction(1))

    @property
    def nu_range(self):
        return (-self.eps, Fraction(1))

    def contains_point(self, frame: Frame, p) -> bool:
        lam, nu = frame.lam(p), frame.nu(p)
        mu = lam - nu
        return (self.lam_range[0] <= lam <= self.lam_range[1]
                and self.mu_range[0] <= mu <= self.mu_range[1]
                and self.nu_range[0] <= nu <= self.nu_range[1])

    def on_border(self, frame: Frame, p) -> bool:
        if not self.contains_point(frame, p):
            return False
        lam, nu = frame.lam(p), frame.nu(p)
        mu = lam - nu
        return (lam in self.lam_range or mu in self.mu_range
                or nu in self.nu_range)

    def chord(self, color: str, level: Rat):
        """Parameter range of the color-class line inside the hexagon.

        Returns (lo, hi) in the class parameter, or None if the line misses
        the region.  Each functional is affine in the parameter, so the
        clip is three interval intersections.
        """
        lam_lo, lam_hi = self.lam_range
        mu_lo, mu_hi = self.mu_range
        nu_lo, nu_hi = self.nu_range
        if color == "A":
            # param lam; nu = level; mu = lam - level
            if not (nu_lo <= level <= nu_hi):
                return None
            lo = max(lam_lo, mu_lo + level)
            hi = min(lam_hi, mu_hi + level)
        elif color == "B":
            # param nu; lam = level; mu = level - nu
            if not (lam_lo <= level <= lam_hi):
                return None
            lo = max(nu_lo, level - mu_hi)
            hi = min(nu_hi, level - mu_lo)
        else:
            # param lam; mu = level; nu = lam - level
            if not (mu_lo <= level <= mu_hi):
                return None
            lo = max(lam_lo, nu_lo + level)
            hi = min(lam_hi, nu_hi + level)
        if lo > hi:
            return None
        return (lo, hi)

    def vertices(self, frame: Frame):
        """The six corners in clockwise order for the standard basis."""
        e = self.eps
        corners = [
            ("B", Fraction(0), "A", -e),
            ("A", -e, "C", Fraction(1)),
            ("C", Fraction(1), "B", 1 + e),
            ("B", 1 + e, "A", Fraction(1)),
            ("A", Fraction(1), "C", -e),
            ("C", -e, "B", Fraction(0)),
        ]
        return [frame.point_on_levels(c1, l1, c2, l2)
                for (c1, l1, c2, l2) in corners]
