"""Moment-plane profiles of star-shaped toric domains in R^4.

A profile is the boundary arc in the open positive quadrant, stored as an
ordered piecewise-linear path from the w1-intercept (a, 0) to the
w2-intercept (0, b).  Segments may carry an analytic tag (a parametrized
curve) so that area and line integrals can be evaluated on the true curve
instead of the chord; all geometric predicates run on the polyline.

Coordinates are moment-map coordinates w_i = pi |z_i|^2, so plane area of
the region under the profile equals the 4D symplectic volume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import (
    AxisViolation,
    NotStarShaped,
    ParamOutOfRange,
    RadiusTooLarge,
    SelfIntersection,
    SmoothingBreaksStarShape,
)

Point = tuple[float, float]

# Relative tolerance for geometric predicates, scaled by profile diameter.
TOL_REL = 1e-9


def cross(u: Point, v: Point) -> float:
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Point, v: Point) -> float:
    return u[0] * v[0] + u[1] * v[1]


@dataclass(frozen=True)
class CurveSegment:
    """Analytic description of one profile segment.

    ``point(t)`` traces the true curve for t in [0, 1] between the
    segment's two polyline vertices; ``deriv(t)`` is d(point)/dt.
    """

    point: Callable[[float], Point]
    deriv: Callable[[float], Point]
    kind: str = "analytic"


@dataclass(frozen=True)
class MomentProfile:
    """Closure of the positive-quadrant boundary arc, (a,0) -> (0,b)."""

    vertices: tuple[Point, ...]
    tags: tuple[Optional[CurveSegment], ...] = ()
    family: str = "custom"
    params: tuple[tuple[str, float], ...] = ()

    @property
    def a_intercept(self) -> float:
        return self.vertices[0][0]

    @property
    def b_intercept(self) -> float:
        return self.vertices[-1][1]

    @property
    def n_segments(self) -> int:
        return len(self.vertices) - 1

    @property
    def diameter(self) -> float:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return max(max(xs) - min(xs), max(ys) - min(ys), max(xs), max(ys))

    @property
    def tol(self) -> float:
        return TOL_REL * self.diameter

    def segment(self, i: int) -> tuple[Point, Point]:
        return self.vertices[i], self.vertices[i + 1]

    def segment_direction(self, i: int) -> Point:
        (x0, y0), (x1, y1) = self.segment(i)
        return (x1 - x0, y1 - y0)

    def segment_normal(self, i: int) -> Point:
        """Unit outward normal of segment i.

        The path runs counterclockwise around the region (polar angle
        increasing), so the outward normal of direction (d1, d2) is
        (d2, -d1) normalized.
        """
        d1, d2 = self.segment_direction(i)
        n = math.hypot(d1, d2)
        return (d2 / n, -d1 / n)

    def tag(self, i: int) -> Optional[CurveSegment]:
        if not self.tags:
            return None
        return self.tags[i]

    def scaled(self, s: float) -> "MomentProfile":
        """All vertex coordinates (and tag curves) multiplied by s > 0."""
        if s <= 0:
            raise ParamOutOfRange("scale factor must be positive")
        verts = tuple((s * x, s * y) for x, y in self.vertices)
        tags = tuple(_scale_tag(t, s) for t in self.tags) if self.tags else ()
        return MomentProfile(verts, tags, family="custom")


def _scale_tag(tag: Optional[CurveSegment], s: float) -> Optional[CurveSegment]:
    if tag is None:
        return None
    pt, dv = tag.point, tag.deriv
    return CurveSegment(
        point=lambda t, pt=pt, s=s: (s * pt(t)[0], s * pt(t)[1]),
        deriv=lambda t, dv=dv, s=s: (s * dv(t)[0], s * dv(t)[1]),
        kind=tag.kind,
    )


def _validate(vertices: tuple[Point, ...]) -> tuple[Point, ...]:
    """Check the profile invariants, snapping axis endpoints exactly.

    Returns the (possibly snapped) vertex tuple or raises.
    """
    if len(vertices) < 2:
        raise AxisViolation("a profile needs at least two vertices")
    diam = max(max(abs(x), abs(y)) for x, y in vertices)
    tol = TOL_REL * diam

    first, last = vertices[0], vertices[-1]
    if abs(first[1]) > tol or first[0] <= tol:
        raise AxisViolation(f"first vertex {first} must lie on the positive w1-axis")
    if abs(last[0]) > tol or last[1] <= tol:
        raise AxisViolation(f"last vertex {last} must lie on the positive w2-axis")
    verts = list(vertices)
    verts[0] = (first[0], 0.0)
    verts[-1] = (0.0, last[1])

    for i, (x, y) in enumerate(verts[1:-1], start=1):
        if x <= tol or y <= tol:
            raise AxisViolation(f"interior vertex {i} at {(x, y)} touches an axis")

    for i in range(len(verts) - 1):
        p, q = verts[i], verts[i + 1]
        if math.hypot(q[0] - p[0], q[1] - p[1]) <= tol:
            raise SelfIntersection(f"zero-length segment at index {i}")
        # cross(p, q) equals (nu . p)|q - p| on the segment; positivity is
        # simultaneously the strictly-increasing-polar-angle condition and
        # the transversality of rays from the origin.
        if cross(p, q) <= tol * diam:
            raise NotStarShaped(i)

    return tuple(verts)


def from_vertices(points) -> MomentProfile:
    """Build and validate a polygonal profile from (w1, w2) pairs."""
    verts = _validate(tuple((float(x), float(y)) for x, y in points))
    return MomentProfile(verts)


def ellipsoid(a: float, b: float, n: int = 1) -> MomentProfile:
    """Profile of E(a, b): the segment from (a, 0) to (0, b), subdivided."""
    if a <= 0 or b <= 0:
        raise ParamOutOfRange("ellipsoid requires a, b > 0")
    if n < 1:
        raise ParamOutOfRange("ellipsoid requires n >= 1")
    verts = tuple(
        (a * (1 - i / n), b * (i / n)) for i in range(n + 1)
    )
    return MomentProfile(
        _validate(verts), family="ellipsoid", params=(("a", a), ("b", b), ("n", n))
    )


def polydisk(a: float, b: float) -> MomentProfile:
    """Profile of P(a, b): the rectangle path (a,0) -> (a,b) -> (0,b)."""
    if a <= 0 or b <= 0:
        raise ParamOutOfRange("polydisk requires a, b > 0")
    verts = ((a, 0.0), (a, b), (0.0, b))
    return MomentProfile(_validate(verts), family="polydisk", params=(("a", a), ("b", b)))


def ball(c: float, n: int = 1) -> MomentProfile:
    """Profile of the ball B^4(c) = E(c, c)."""
    return ellipsoid(c, c, n)


def _fc_breakpoints(b: float, c: float) -> tuple[float, float]:
    return c * (b - c) / b, c * c


def fc_domain(b: float, c: float, n: int = 8) -> MomentProfile:
    """Extremal convex family: boundary w2 = f_c(w1) with a = 1, built from
    a linear piece in sqrt-coordinates, the straight piece w2 = c - w1, and
    a second sqrt-linear piece.

    Samples n points per piece; the curved pieces carry analytic tags
    parametrized linearly in mu1 = sqrt(w1).
    """
    if b < 1:
        raise ParamOutOfRange("fc_domain requires b >= 1")
    lo = b / (1 + b)
    if not (lo - 1e-12 <= c < 1):
        raise ParamOutOfRange(f"fc_domain requires c in [{lo}, 1)")
    if n < 2:
        raise ParamOutOfRange("fc_domain requires n >= 2")
    w_break1, w_break2 = _fc_breakpoints(b, c)

    # Piece near the w2-axis, in mu-coordinates: mu2 = sqrt(b) - s*mu1.
    s1 = math.sqrt((b - c) / c)

    def curve1(m0: float, m1: float) -> CurveSegment:
        def point(t: float) -> Point:
            m = m0 + (m1 - m0) * t
            g = math.sqrt(b) - s1 * m
            return (m * m, g * g)

        def deriv(t: float) -> Point:
            m = m0 + (m1 - m0) * t
            dm = m1 - m0
            g = math.sqrt(b) - s1 * m
            return (2 * m * dm, 2 * g * (-s1) * dm)

        return CurveSegment(point, deriv, kind="fc1")

    # Piece near the w1-axis: mu2 = sqrt(c/(1-c)) * (1 - mu1).
    s3 = math.sqrt(c / (1 - c))

    def curve3(m0: float, m1: float) -> CurveSegment:
        def point(t: float) -> Point:
            m = m0 + (m1 - m0) * t
            g = s3 * (1 - m)
            return (m * m, g * g)

        def deriv(t: float) -> Point:
            m = m0 + (m1 - m0) * t
            dm = m1 - m0
            g = s3 * (1 - m)
            return (2 * m * dm, 2 * g * (-s3) * dm)

        return CurveSegment(point, deriv, kind="fc3")

    verts: list[Point] = []
    tags: list[Optional[CurveSegment]] = []

    # Path runs from (1, 0) toward (0, b): traverse piece 3 with mu1
    # decreasing from 1 to c, then the straight piece, then piece 1 with
    # mu1 decreasing from sqrt(w_break1) to 0.
    mus3 = [1 - (1 - c) * i / n for i in range(n + 1)]
    for i in range(n):
        m0, m1 = mus3[i], mus3[i + 1]
        seg = curve3(m0, m1)
        verts.append(seg.point(0.0))
        tags.append(seg)
    mid_degenerate = w_break2 - w_break1 <= 1e-12 * max(1.0, b)
    if not mid_degenerate:
        verts.append((w_break2, c - w_break2))
        tags.append(None)  # straight piece w2 = c - w1
    mu_hi = math.sqrt(w_break1)
    mus1 = [mu_hi * (1 - i / n) for i in range(n + 1)]
    for i in range(n):
        m0, m1 = mus1[i], mus1[i + 1]
        seg = curve1(m0, m1)
        verts.append(seg.point(0.0))
        tags.append(seg)
    verts.append((0.0, b))

    valid = _validate(tuple(verts))
    return MomentProfile(
        valid, tuple(tags), family="fc", params=(("b", b), ("c", c), ("n", n))
    )


# ---------------------------------------------------------------------------
# Classification


@dataclass(frozen=True)
class Classification:
    star_shaped: bool
    monotone: bool
    strictly_monotone: bool
    convex_4d: bool
    # Index of the violating segment (in path order) for each False flag.
    witnesses: dict = field(default_factory=dict)


@dataclass(frozen=True)
class NormalCone:
    """Angular interval of admissible outward normals at a vertex.

    ``start`` -> ``end`` counterclockwise, width in [0, pi).  At a convex
    corner this runs from the incoming to the outgoing segment normal; at a
    reflex corner the smoothed boundary sweeps the normals backwards, so
    the interval runs from the outgoing to the incoming normal.  ``convex``
    records which case holds; a degenerate (collinear) vertex has width 0.
    """

    vertex: Point
    start: Point
    end: Point
    width: float
    convex: bool


def normal_cone(p: MomentProfile, vertex_index: int) -> NormalCone:
    """Normal cone at interior vertex ``vertex_index`` (1..n-1)."""
    if not (1 <= vertex_index <= len(p.vertices) - 2):
        raise IndexError("normal_cone is defined at interior vertices")
    nu_in = p.segment_normal(vertex_index - 1)
    nu_out = p.segment_normal(vertex_index)
    turn = math.atan2(cross(nu_in, nu_out), dot(nu_in, nu_out))
    v = p.vertices[vertex_index]
    if turn >= 0:
        return NormalCone(v, nu_in, nu_out, turn, convex=True)
    return NormalCone(v, nu_out, nu_in, -turn, convex=False)


def endpoint_cone(p: MomentProfile, which: str) -> NormalCone:
    """Normal cone at an axis intercept, bounded by the axis normal.

    The closed boundary of the region continues along the axes; the
    outward normal of the w1-axis piece is (0, -1) and of the w2-axis
    piece is (-1, 0).
    """
    if which == "a":
        nu_in = (0.0, -1.0)
        nu_out = p.segment_normal(0)
        v = p.vertices[0]
    elif which == "b":
        nu_in = p.segment_normal(p.n_segments - 1)
        nu_out = (-1.0, 0.0)
        v = p.vertices[-1]
    else:
        raise ValueError("which must be 'a' or 'b'")
    turn = math.atan2(cross(nu_in, nu_out), dot(nu_in, nu_out))
    if turn >= 0:
        return NormalCone(v, nu_in, nu_out, turn, convex=True)
    return NormalCone(v, nu_out, nu_in, -turn, convex=False)


def classify(p: MomentProfile) -> Classification:
    tol = p.tol
    witnesses: dict = {}

    monotone = True
    strictly = True
    for i in range(p.n_segments):
        n1, n2 = p.segment_normal(i)
        if n1 < -TOL_REL or n2 < -TOL_REL:
            if monotone:
                witnesses["monotone"] = i
            monotone = False
        if n1 <= TOL_REL or n2 <= TOL_REL:
            if strictly:
                witnesses["strictly_monotone"] = i
            strictly = False
    strictly = strictly and monotone

    convex = _convex_4d(p, witnesses)
    return Classification(
        star_shaped=True,
        monotone=monotone,
        strictly_monotone=strictly,
        convex_4d=convex,
        witnesses=witnesses,
    )


def _convex_4d(p: MomentProfile, witnesses: dict) -> bool:
    """Concave decreasing chain test in sqrt-coordinates.

    Traversed with mu1 increasing (reverse of path order) the chain must be
    the graph of a function (mu1 strictly increasing) and every consecutive
    triple must turn clockwise or stay straight.
    """
    mu = [(math.sqrt(x), math.sqrt(y)) for x, y in reversed(p.vertices)]
    tol = TOL_REL * max(m[0] + m[1] for m in mu)
    n = len(mu)
    for i in range(n - 1):
        if mu[i + 1][0] - mu[i][0] <= tol:
            witnesses["convex_4d"] = p.n_segments - 1 - i
            return False
    for i in range(n - 2):
        d1 = (mu[i + 1][0] - mu[i][0], mu[i + 1][1] - mu[i][1])
        d2 = (mu[i + 2][0] - mu[i + 1][0], mu[i + 2][1] - mu[i + 1][1])
        if cross(d1, d2) > tol:
            witnesses["convex_4d"] = p.n_segments - 2 - i
            return False
    return True


def sqrt_transform(p: MomentProfile) -> list[Point]:
    """Pointwise square root of the vertex list."""
    return [(math.sqrt(x), math.sqrt(y)) for x, y in p.vertices]


# ---------------------------------------------------------------------------
# Corner rounding


def total_turning(p: MomentProfile) -> float:
    """Total turning of the outward normal along the profile: sum of
    signed exterior angles at interior vertices plus, for arc-tagged
    segments, nothing extra (chord turning already accounts for it)."""
    total = 0.0
    for i in range(1, p.n_segments):
        d1 = p.segment_direction(i - 1)
        d2 = p.segment_direction(i)
        total += math.atan2(cross(d1, d2), dot(d1, d2))
    return total


def smooth_corners(p: MomentProfile, r: float, arc_points: int = 16) -> MomentProfile:
    """Replace every convex interior corner by a circular arc tangent to
    both incident segments.  Reflex corners are left sharp.

    The arc is sampled into ``arc_points`` sub-segments, each carrying an
    analytic arc tag for exact quadrature.
    """
    if r < 0:
        raise RadiusTooLarge("radius must be nonnegative")
    if r == 0:
        return p
    if any(t is not None for t in p.tags):
        raise ValueError("smooth_corners expects a purely polygonal profile")

    seg_len = [
        math.hypot(*(p.segment_direction(i))) for i in range(p.n_segments)
    ]
    verts: list[Point] = [p.vertices[0]]
    tags: list[Optional[CurveSegment]] = []

    for i in range(1, p.n_segments):
        v = p.vertices[i]
        d1 = p.segment_direction(i - 1)
        d2 = p.segment_direction(i)
        l1, l2 = seg_len[i - 1], seg_len[i]
        u1 = (d1[0] / l1, d1[1] / l1)
        u2 = (d2[0] / l2, d2[1] / l2)
        turn = math.atan2(cross(u1, u2), dot(u1, u2))
        if turn <= p.tol:
            # collinear or reflex: keep the vertex
            tags.append(p.tag(i - 1))
            verts.append(v)
            continue
        tangent = r * math.tan(turn / 2)
        if tangent > min(l1, l2) / 2 or r > min(l1, l2) / 2:
            raise RadiusTooLarge(
                f"radius {r} too large for corner {i} (incident lengths {l1:.3g}, {l2:.3g})"
            )
        # Arc center: offset from the tangent point on the incoming segment
        # along its inward normal (the left-hand side of the traversal).
        t1 = (v[0] - tangent * u1[0], v[1] - tangent * u1[1])
        left1 = (-u1[1], u1[0])
        center = (t1[0] + r * left1[0], t1[1] + r * left1[1])
        ang0 = math.atan2(t1[1] - center[1], t1[0] - center[0])
        # Normal rotates CCW by `turn` across a convex corner.
        tags.append(p.tag(i - 1))
        verts.append(t1)
        for j in range(arc_points):
            a0 = ang0 + turn * j / arc_points
            a1 = ang0 + turn * (j + 1) / arc_points

            def point(t: float, a0=a0, a1=a1, c=center) -> Point:
                a = a0 + (a1 - a0) * t
                return (c[0] + r * math.cos(a), c[1] + r * math.sin(a))

            def deriv(t: float, a0=a0, a1=a1) -> Point:
                a = a0 + (a1 - a0) * t
                da = a1 - a0
                return (-r * math.sin(a) * da, r * math.cos(a) * da)

            verts.append((center[0] + r * math.cos(a1), center[1] + r * math.sin(a1)))
            tags.append(CurveSegment(point, deriv, kind="arc"))
    tags.append(p.tag(p.n_segments - 1))
    verts.append(p.vertices[-1])

    try:
        valid = _validate(tuple(verts))
    except NotStarShaped as exc:
        raise SmoothingBreaksStarShape(str(exc)) from exc
    return MomentProfile(valid, tuple(tags), family="custom")
