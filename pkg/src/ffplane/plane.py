"""Geometry of the plane F^2 under the form d(x, y) = (x1-y1)^2 + (x2-y2)^2.

Points, segments, lines, circles, perpendicular bisectors, reflections and the
group SF2 of orientation-preserving rigid motions. Everything works over F_p
and over F_{p^2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .ffield import FieldCtx, FieldScalar, quadratic_character


@dataclass(frozen=True)
class PlanePoint:
    x: FieldScalar
    y: FieldScalar

    @classmethod
    def of(cls, ctx: FieldCtx, x, y) -> "PlanePoint":
        return cls(_fs(ctx, x), _fs(ctx, y))

    @property
    def ctx(self) -> FieldCtx:
        return self.x.ctx

    def __add__(self, o: "PlanePoint") -> "PlanePoint":
        return PlanePoint(self.x + o.x, self.y + o.y)

    def __sub__(self, o: "PlanePoint") -> "PlanePoint":
        return PlanePoint(self.x - o.x, self.y - o.y)

    def __neg__(self) -> "PlanePoint":
        return PlanePoint(-self.x, -self.y)

    def scale(self, c) -> "PlanePoint":
        return PlanePoint(self.x * c, self.y * c)

    def dot(self, o: "PlanePoint") -> FieldScalar:
        return self.x * o.x + self.y * o.y

    def as_ints(self) -> tuple[int, int]:
        return int(self.x), int(self.y)

    @property
    def is_base(self) -> bool:
        return self.x.is_base and self.y.is_base

    def __repr__(self) -> str:
        return f"({self.x!r},{self.y!r})"


def _fs(ctx: FieldCtx, v) -> FieldScalar:
    return v if isinstance(v, FieldScalar) else FieldScalar(ctx, v)


@dataclass(frozen=True)
class Segment:
    """An ordered pair of points."""

    a: PlanePoint
    b: PlanePoint

    def length(self) -> FieldScalar:
        return distance(self.a, self.b)

    @property
    def is_trivial_isotropic(self) -> bool:
        return self.a != self.b and not self.length()


def distance(x: PlanePoint, y: PlanePoint) -> FieldScalar:
    dx, dy = x.x - y.x, x.y - y.y
    return dx * dx + dy * dy


def is_isotropic(v: PlanePoint) -> bool:
    """True when d(v, 0) = 0. The zero vector counts as isotropic."""
    return not (v.x * v.x + v.y * v.y)


@dataclass(frozen=True)
class Line:
    """The line alpha*x + beta*y = gamma, first nonzero coefficient scaled to 1."""

    alpha: FieldScalar
    beta: FieldScalar
    gamma: FieldScalar
    kind = "line"

    @classmethod
    def make(cls, alpha, beta, gamma, ctx: FieldCtx | None = None) -> "Line":
        if ctx is None:
            ctx = next(c.ctx for c in (alpha, beta, gamma) if isinstance(c, FieldScalar))
        a, b, g = _fs(ctx, alpha), _fs(ctx, beta), _fs(ctx, gamma)
        if not a and not b:
            raise ValueError("degenerate line: alpha = beta = 0")
        lead = a if a else b
        inv = lead.inverse()
        return cls(a * inv, b * inv, g * inv)

    @classmethod
    def through(cls, p: PlanePoint, q: PlanePoint) -> "Line":
        if p == q:
            raise ValueError("need two distinct points")
        d = q - p
        # normal (dy, -dx)
        return cls.make(d.y, -d.x, d.y * p.x - d.x * p.y)

    @property
    def normal(self) -> PlanePoint:
        return PlanePoint(self.alpha, self.beta)

    @property
    def direction(self) -> PlanePoint:
        return PlanePoint(self.beta, -self.alpha)

    @property
    def is_isotropic(self) -> bool:
        return not (self.alpha * self.alpha + self.beta * self.beta)

    @property
    def is_base(self) -> bool:
        return self.alpha.is_base and self.beta.is_base and self.gamma.is_base

    def contains(self, q: PlanePoint) -> bool:
        return self.alpha * q.x + self.beta * q.y == self.gamma

    def key(self) -> tuple:
        return ("line", int(self.alpha), int(self.beta), int(self.gamma))

    def __repr__(self) -> str:
        return f"Line({self.alpha!r}x+{self.beta!r}y={self.gamma!r})"


@dataclass(frozen=True)
class Circle:
    """The set {q : d(q, center) = r2}."""

    center: PlanePoint
    r2: FieldScalar
    kind = "circle"

    def contains(self, q: PlanePoint) -> bool:
        return distance(q, self.center) == self.r2

    def key(self) -> tuple:
        cx, cy = self.center.as_ints()
        return ("circle", cx, cy, int(self.r2))

    def __repr__(self) -> str:
        return f"Circle(center={self.center!r}, r2={self.r2!r})"


Curve = Union[Line, Circle]


def bisector(a: PlanePoint, b: PlanePoint) -> Line:
    """Perpendicular bisector {x : d(a, x) = d(b, x)}."""
    if a == b:
        raise ValueError("degenerate bisector")
    d = a - b
    return Line.make(d.x * 2, d.y * 2, a.dot(a) - b.dot(b))


def reflect(line: Line, x: PlanePoint) -> PlanePoint:
    """Mirror image of ``x`` across a non-isotropic line."""
    n = line.normal
    q = n.dot(n)
    if not q:
        raise ValueError("reflection undefined for an isotropic line")
    c = (n.dot(x) - line.gamma) * 2 / q
    return x - n.scale(c)


def unit_circle(ctx: FieldCtx) -> list[PlanePoint]:
    p = ctx.p
    squares: dict[int, list[int]] = {}
    for a in range(p):
        squares.setdefault(a * a % p, []).append(a)
    out = []
    for u in range(p):
        for v in squares.get((1 - u * u) % p, []):
            out.append(PlanePoint.of(ctx, u, v))
    assert len(out) == p - quadratic_character(-1, ctx)
    return out


@dataclass(frozen=True)
class RigidMotion:
    """x -> R x + (s, t) with R = [[u, -v], [v, u]] and u^2 + v^2 = 1."""

    u: FieldScalar
    v: FieldScalar
    s: FieldScalar
    t: FieldScalar

    def __post_init__(self):
        if self.u * self.u + self.v * self.v != 1:
            raise ValueError("u^2 + v^2 must equal 1")

    @classmethod
    def of(cls, ctx: FieldCtx, u, v, s=0, t=0) -> "RigidMotion":
        return cls(_fs(ctx, u), _fs(ctx, v), _fs(ctx, s), _fs(ctx, t))

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "RigidMotion":
        return cls.of(ctx, 1, 0, 0, 0)

    @property
    def ctx(self) -> FieldCtx:
        return self.u.ctx

    def matrix(self) -> list[list[FieldScalar]]:
        c = self.ctx
        return [[self.u, -self.v, self.s], [self.v, self.u, self.t], [c.zero, c.zero, c.one]]

    def __call__(self, x: PlanePoint) -> PlanePoint:
        return apply(self, x)

    def __matmul__(self, other: "RigidMotion") -> "RigidMotion":
        return compose(self, other)

    def inverse(self) -> "RigidMotion":
        u, v = self.u, -self.v
        # -R^{-1} (s, t)
        return RigidMotion(u, v, -(u * self.s - v * self.t), -(v * self.s + u * self.t))

    @property
    def is_translation(self) -> bool:
        return self.u == 1 and not self.v

    def fixed_point(self) -> PlanePoint | None:
        """Centre of a non-trivial rotation; None for translations."""
        if self.is_translation:
            return None
        # (I - R) c = (s, t), det(I - R) = 2(1 - u)
        w = 1 - self.u
        k = (w * 2).inverse()
        return PlanePoint(k * (w * self.s - self.v * self.t), k * (self.v * self.s + w * self.t))

    def as_ints(self) -> tuple[int, int, int, int]:
        return int(self.u), int(self.v), int(self.s), int(self.t)


def translation(ctx: FieldCtx, s, t) -> RigidMotion:
    return RigidMotion.of(ctx, 1, 0, s, t)


def rotation(ctx: FieldCtx, u, v) -> RigidMotion:
    return RigidMotion.of(ctx, u, v, 0, 0)


def rotation_about(center: PlanePoint, u, v) -> RigidMotion:
    """Rotation by (u, v) fixing ``center``."""
    ctx = center.ctx
    u, v = _fs(ctx, u), _fs(ctx, v)
    s = center.x - (u * center.x - v * center.y)
    t = center.y - (v * center.x + u * center.y)
    return RigidMotion(u, v, s, t)


def apply(g: RigidMotion, x: PlanePoint) -> PlanePoint:
    return PlanePoint(g.u * x.x - g.v * x.y + g.s, g.v * x.x + g.u * x.y + g.t)


def compose(g: RigidMotion, h: RigidMotion) -> RigidMotion:
    """The motion x -> g(h(x))."""
    u = g.u * h.u - g.v * h.v
    v = g.v * h.u + g.u * h.v
    s = g.u * h.s - g.v * h.t + g.s
    t = g.v * h.s + g.u * h.t + g.t
    return RigidMotion(u, v, s, t)


def rigid_motion_between(s1: Segment, s2: Segment) -> RigidMotion | None:
    """The unique g in SF2 with g(s1) = s2, or None if lengths differ or vanish."""
    d = s1.length()
    if not d or d != s2.length():
        return None
    w1, w2 = s1.b - s1.a, s2.b - s2.a
    u = w1.dot(w2) / d
    v = (w1.x * w2.y - w1.y * w2.x) / d
    ax, ay = s1.a.x, s1.a.y
    return RigidMotion(u, v, s2.a.x - (u * ax - v * ay), s2.a.y - (v * ax + u * ay))


def all_lines(ctx: FieldCtx) -> list[Line]:
    """The p^2 + p lines of F_p^2, by slope then intercept."""
    p = ctx.p
    out = [Line.make(1, 0, g, ctx) for g in range(p)]
    out += [Line.make(a, 1, g, ctx) for a in range(p) for g in range(p)]
    return out


def all_points(ctx: FieldCtx) -> list[PlanePoint]:
    return [PlanePoint.of(ctx, x, y) for x in range(ctx.p) for y in range(ctx.p)]
