"""Low-level planar geometry: segments, intersections, polylines, angles.

Everything works on plain (x, y) float tuples.  Tolerances are passed in
explicitly by callers; nothing here invents a scale.
"""
from __future__ import annotations

import math
from bisect import bisect_right

Point = tuple[float, float]

TWO_PI = 2.0 * math.pi


def sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def add(a: Point, b: Point) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def scale(a: Point, k: float) -> Point:
    return (a[0] * k, a[1] * k)


def dot(a: Point, b: Point) -> float:
    return a[0] * b[0] + a[1] * b[1]


def cross(a: Point, b: Point) -> float:
    return a[0] * b[1] - a[1] * b[0]


def norm(a: Point) -> float:
    return math.hypot(a[0], a[1])


def dist(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def unit(a: Point) -> Point:
    n = norm(a)
    if n == 0.0:
        raise ValueError("zero vector has no direction")
    return (a[0] / n, a[1] / n)


def rot90(a: Point) -> Point:
    """Counterclockwise quarter turn."""
    return (-a[1], a[0])


def angle_of(a: Point) -> float:
    return math.atan2(a[1], a[0])


def wrap_to_pi(theta: float) -> float:
    """Representative of theta in (-pi, pi]."""
    t = math.fmod(theta, TWO_PI)
    if t <= -math.pi:
        t += TWO_PI
    elif t > math.pi:
        t -= TWO_PI
    return t


def wrap_to_half_pi(theta: float) -> float:
    """Representative of theta modulo pi lying in (-pi/2, pi/2].

    This is the step increment for tracking an undirected line direction.
    """
    t = math.fmod(theta, math.pi)
    if t <= -math.pi / 2.0:
        t += math.pi
    elif t > math.pi / 2.0:
        t -= math.pi
    return t


def turn_angle(u_in: Point, u_out: Point) -> float:
    """Signed exterior angle from direction u_in to u_out, in (-pi, pi]."""
    return math.atan2(cross(u_in, u_out), dot(u_in, u_out))


def point_segment_distance(p: Point, a: Point, b: Point) -> float:
    ab = sub(b, a)
    L2 = dot(ab, ab)
    if L2 == 0.0:
        return dist(p, a)
    t = dot(sub(p, a), ab) / L2
    t = max(0.0, min(1.0, t))
    return dist(p, add(a, scale(ab, t)))


def segment_intersection(a: Point, b: Point, c: Point, d: Point):
    """Proper transversal intersection of open segments ab and cd.

    Returns (point, t_ab, t_cd) with both parameters strictly inside (0, 1),
    or None if the segments do not cross transversally in their interiors.
    Touching endpoints and collinear overlaps return None; callers that need
    to flag near-degenerate contact must check clearances separately.
    """
    r = sub(b, a)
    s = sub(d, c)
    denom = cross(r, s)
    if denom == 0.0:
        return None
    qp = sub(c, a)
    t = cross(qp, s) / denom
    u = cross(qp, r) / denom
    if 0.0 < t < 1.0 and 0.0 < u < 1.0:
        return (add(a, scale(r, t)), t, u)
    return None


class Polyline:
    """A sampled open curve with arclength parameterization."""

    __slots__ = ("points", "cum", "length")

    def __init__(self, points):
        pts = [tuple(map(float, p)) for p in points]
        if len(pts) < 2:
            raise ValueError("polyline needs at least two points")
        self.points: list[Point] = pts
        cum = [0.0]
        for a, b in zip(pts, pts[1:]):
            cum.append(cum[-1] + dist(a, b))
        self.cum = cum
        self.length = cum[-1]

    def segments(self):
        return list(zip(self.points, self.points[1:]))

    def point_at(self, s: float) -> Point:
        """Point at arclength s from the start (clamped to [0, length])."""
        if s <= 0.0:
            return self.points[0]
        if s >= self.length:
            return self.points[-1]
        i = bisect_right(self.cum, s) - 1
        i = min(i, len(self.points) - 2)
        seg_len = self.cum[i + 1] - self.cum[i]
        t = (s - self.cum[i]) / seg_len
        a, b = self.points[i], self.points[i + 1]
        return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)

    def reversed(self) -> "Polyline":
        return Polyline(list(reversed(self.points)))


def kink_waypoints(center: Point, u: Point, radius: float, sign: int):
    """Waypoints of a small curl replacing the straight run of length 4*radius
    centered at `center` with incoming direction `u`.

    The returned open chain starts at center - 2r*u and ends at center + 2r*u,
    crosses itself exactly once, and adds `sign` to the turning number of a
    curve traversed in the direction of u.  sign must be +1 or -1.
    """
    if sign not in (+1, -1):
        raise ValueError("curl sign must be +1 or -1")
    r = float(radius)
    n = rot90(u) if sign > 0 else scale(rot90(u), -1.0)

    def at(x: float, y: float) -> Point:
        return add(center, add(scale(u, x * r), scale(n, y * r)))

    # Forward along the base, counterclockwise loop (in the u,n frame) that
    # crosses the base segment once at (-r, 0), rejoin the base at (2r, 0).
    return [at(-2.0, 0.0), at(1.0, 0.0), at(1.0, 1.2), at(-1.0, 1.2),
            at(-1.0, -0.5), at(2.0, 0.0)]
