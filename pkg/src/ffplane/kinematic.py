"""The kinematic map kappa: SF2 -> FP^3 and the segment-to-incidence construction.

For g = (u, v, s, t) with u != -1,

    kappa(g) = [2(u+1) : 2v : s(u+1) + tv : sv - t(u+1)],

and a half-turn (u = -1) maps to [0 : 2 : t : s]. The image is FP^3 minus the
quadric X0^2 + X1^2 = 0.

Relation to the Clifford model (lam = -1): if g = g0 + g12 e12 + g13 e13 + g23 e23
is an even unit with rho_star(g) equal to the motion, then

    kappa = [g0 : -g12 : g13 : -g23].

This was fixed by matching rotations (g13 = g23 = 0) and the translations
(g0 = 1, g12 = 0), and is checked on all of SF2(F_7) in the tests. Under it,
left translation by a motion is left multiplication by its unit.

Segments and incidences: given the pairs S_r at distance r != 0, a fixed
s_r in S_r and a non-isotropic line l_tau with reflection tau, each x in S_r
gives a plane (the image of the motions that take x to s_r, composed with
rotations about points of l_tau) and each y in S_r gives a point (kappa of the
motion taking tau(y) to s_r). Point y lies on plane x exactly when y is the
mirror image of x in some non-isotropic line.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _fast
from .clifford import CliffordAlgebraCtx, EvenUnit, cl_mul, rho_star
from .ffield import FieldCtx, FieldScalar
from .plane import Line, PlanePoint, RigidMotion, Segment, reflect, rigid_motion_between, unit_circle
from .projective import ProjLine, ProjMap, ProjPlane, ProjPoint

_SIGN = (1, -1, 1, -1)


def kappa(g: RigidMotion) -> ProjPoint:
    u, v, s, t = g.u, g.v, g.s, g.t
    if u == -1:
        return ProjPoint.make([u.ctx.zero, u.ctx(2), t, s])
    w = u + 1
    return ProjPoint.make([w * 2, v * 2, s * w + t * v, s * v - t * w])


def is_exceptional(X: ProjPoint) -> bool:
    return not (X[0] * X[0] + X[1] * X[1])


def kappa_inv(X: ProjPoint) -> RigidMotion:
    x0, x1, x2, x3 = X.coords
    n = x0 * x0 + x1 * x1
    if not n:
        raise ValueError("point lies in the exceptional set")
    k = n.inverse()
    return RigidMotion(
        (x0 * x0 - x1 * x1) * k,
        x0 * x1 * 2 * k,
        (x1 * x3 + x0 * x2) * 2 * k,
        (x1 * x2 - x0 * x3) * 2 * k,
    )


# Clifford side --------------------------------------------------------------


@lru_cache(maxsize=None)
def euclidean_algebra(ctx: FieldCtx) -> CliffordAlgebraCtx:
    return CliffordAlgebraCtx(ctx, -1)


def unit_of(g: RigidMotion) -> EvenUnit:
    """An even unit whose rho_star image is g."""
    X = kappa(g).coords
    return EvenUnit.of(euclidean_algebra(g.ctx), *(c * s for c, s in zip(X, _SIGN)))


def motion_of(unit: EvenUnit) -> RigidMotion:
    """Read a motion off rho_star; the SF(Q0) layout stores -v where SF2 stores v."""
    m = rho_star(unit)
    return RigidMotion(m[0][0], -m[0][1], m[0][2], m[1][2])


def _mult_matrix(unit: EvenUnit, left: bool) -> list[list[FieldScalar]]:
    alg = unit.alg
    g = unit.element
    cols = []
    for j, basis in enumerate((alg.even(1, 0, 0, 0), alg.even(0, 1, 0, 0), alg.even(0, 0, 1, 0), alg.even(0, 0, 0, 1))):
        prod = cl_mul(g, basis) if left else cl_mul(basis, g)
        cols.append(prod.even_coords())
    # conjugate by the sign change between unit and kappa coordinates
    return [[cols[j][i] * (_SIGN[i] * _SIGN[j]) for j in range(4)] for i in range(4)]


def left_map(g: RigidMotion) -> ProjMap:
    """Matrix with kappa(g x) = left_map(g) kappa(x)."""
    return ProjMap.make(_mult_matrix(unit_of(g), left=True))


def right_map(g: RigidMotion) -> ProjMap:
    """Matrix with kappa(x g) = right_map(g) kappa(x)."""
    return ProjMap.make(_mult_matrix(unit_of(g), left=False))


# lines and planes -------------------------------------------------------------


def transporter(x: PlanePoint, y: PlanePoint) -> list[RigidMotion]:
    """All g in SF2(F_p) with g(x) = y."""
    out = []
    for r in unit_circle(x.ctx):
        u, v = r.x, r.y
        out.append(RigidMotion(u, v, y.x - (u * x.x - v * x.y), y.y - (v * x.x + u * x.y)))
    return out


def transporter_line(x: PlanePoint, y: PlanePoint) -> ProjLine:
    """The projective line containing kappa of every motion taking x to y."""
    ctx = x.ctx
    ident = RigidMotion(ctx.one, ctx.zero, y.x - x.x, y.y - x.y)
    half = RigidMotion(-ctx.one, ctx.zero, y.x + x.x, y.y + x.y)
    return ProjLine.through(kappa(ident), kappa(half))


def r_tau_plane(line: Line) -> ProjPlane:
    """Plane holding kappa of every rotation about a point of ``line`` and
    of every translation normal to it."""
    if line.is_isotropic:
        raise ValueError("the axis must be non-isotropic")
    z = line.alpha.ctx.zero
    return ProjPlane.make([z, -line.gamma, line.beta, line.alpha])


# census -------------------------------------------------------------------------


def all_motions(ctx: FieldCtx) -> list[RigidMotion]:
    circle = unit_circle(ctx)
    els = ctx.elements()
    return [RigidMotion(r.x, r.y, s, t) for r in circle for s in els for t in els]


def projective_points(ctx: FieldCtx):
    p = ctx.p
    for lead in range(4):
        for rest in range(p ** (3 - lead)):
            tail, r = [], rest
            for _ in range(3 - lead):
                tail.append(r % p)
                r //= p
            yield ProjPoint.make([0] * lead + [1] + tail[::-1], ctx)


@dataclass
class Census:
    p: int
    motions: int
    image: int
    projective_points: int
    exceptional: int
    image_is_complement: bool
    injective: bool


def census(ctx: FieldCtx) -> Census:
    """Exhaustive comparison of kappa(SF2) with FP^3 minus the quadric."""
    motions = all_motions(ctx)
    image = {kappa(g) for g in motions}
    pts = list(projective_points(ctx))
    exceptional = {X for X in pts if is_exceptional(X)}
    complement = set(pts) - exceptional
    return Census(
        p=ctx.p,
        motions=len(motions),
        image=len(image),
        projective_points=len(pts),
        exceptional=len(exceptional),
        image_is_complement=image == complement,
        injective=len(image) == len(motions),
    )


# segments to incidences -------------------------------------------------------


def segments_of(pairs, ctx: FieldCtx) -> list[Segment]:
    return [Segment(PlanePoint.of(ctx, *a), PlanePoint.of(ctx, *b)) for a, b in pairs]


def _seg_key(s: Segment):
    return (s.a.x.a1, s.a.x.a0, s.a.y.a1, s.a.y.a0, s.b.x.a1, s.b.x.a0, s.b.y.a1, s.b.y.a0)


def reference_segment(S_r: list[Segment]) -> Segment:
    return min(S_r, key=_seg_key)


def carriers(S_r: list[Segment], ref: Segment | None = None) -> list[RigidMotion]:
    """For each x in S_r, the motion taking x to the reference segment."""
    ref = ref if ref is not None else reference_segment(S_r)
    return [rigid_motion_between(x, ref) for x in S_r]


def fixed_points(G: list[RigidMotion]) -> np.ndarray:
    """Distinct fixed points of the products g^{-1} h, g != h, as an (m, 2) int array.
    Translations among the products have none and contribute nothing."""
    if len(G) < 2:
        return np.zeros((0, 2), dtype=np.int64)
    p = G[0].ctx.p
    arr = np.array([g.as_ints() for g in G], dtype=np.int64)
    u1, v1, s1, t1 = (arr[:, i][:, None] for i in range(4))
    u2, v2, s2, t2 = (arr[:, i][None, :] for i in range(4))
    u = (u1 * u2 + v1 * v2) % p
    v = (u1 * v2 - v1 * u2) % p
    dx, dy = s2 - s1, t2 - t1
    tx = (u1 * dx + v1 * dy) % p
    ty = (-v1 * dx + u1 * dy) % p
    rot = ~((u == 1) & (v == 0))
    w = (1 - u) % p
    k = _fast.inverse_table(p)[(2 * w) % p]
    cx = k * ((w * tx - v * ty) % p) % p
    cy = k * ((v * tx + w * ty) % p) % p
    return np.unique(np.stack([cx[rot], cy[rot]], axis=1), axis=0).reshape(-1, 2)


def line_hits(line: Line, centres: np.ndarray) -> bool:
    """Whether the line, possibly over F_{p^2}, passes through one of the F_p points."""
    if not len(centres):
        return False
    p = line.alpha.ctx.p
    x, y = centres[:, 0], centres[:, 1]
    for part in ("a0", "a1"):
        a, b, g = (getattr(c, part) for c in (line.alpha, line.beta, line.gamma))
        ok = (a * x + b * y - g) % p == 0
        x, y = x[ok], y[ok]
    return bool(len(x))


def tau_candidates(ctx: FieldCtx, extension: bool):
    """Non-isotropic lines in search order: through the origin by slope, then
    translates. The extension pass skips lines already defined over F_p."""
    elements = ctx.ext_elements() if extension else ctx.elements()
    slopes = list(elements) + [None]
    for c in elements:
        for m in slopes:
            if extension and c.is_base and (m is None or m.is_base):
                continue
            line = Line.make(1, 0, c, ctx) if m is None else Line.make(m, -1, -c, ctx)
            if not line.is_isotropic:
                yield line


def is_admissible(line: Line, G: list[RigidMotion]) -> bool:
    return not line.is_isotropic and not line_hits(line, fixed_points(G))


def choose_tau(G: list[RigidMotion], ctx: FieldCtx | None = None) -> Line:
    """First non-isotropic line in search order through no fixed point of any
    g^{-1} h with g != h. Lines over F_{p^2} are tried only when every F_p line
    fails; a line with F_p direction and irrational offset has no F_p point,
    so the extension search always succeeds."""
    ctx = ctx if ctx is not None else G[0].ctx
    centres = fixed_points(G)
    for extension in (False, True):
        for line in tau_candidates(ctx, extension):
            if not line_hits(line, centres):
                return line
    raise RuntimeError("no admissible axis found")


@dataclass
class IncidenceModel:
    r: int
    tau: Line
    reference: Segment
    points: list[ProjPoint]
    planes: list[ProjPlane]
    point_segments: list[Segment]
    plane_segments: list[Segment]

    @property
    def uses_extension(self) -> bool:
        return not self.tau.is_base


def build_incidence_system(S_r: list[Segment], tau: Line) -> IncidenceModel:
    """Points kappa(h_y) and planes phi_{g_x}(R_tau plane) for y, x in S_r."""
    if not S_r:
        ctx = tau.alpha.ctx
        return IncidenceModel(0, tau, None, [], [], [], [])
    ref = reference_segment(S_r)
    r = int(ref.length())
    if r == 0:
        raise ValueError("segments must have nonzero length")
    G = carriers(S_r, ref)
    if line_hits(tau, fixed_points(G)):
        raise ValueError("fixed point on axis")
    base = r_tau_plane(tau)
    planes = []
    for g in G:
        inv = left_map(g.inverse())
        planes.append(ProjPlane.make(inv.transpose().raw(base.coeffs)))
    points = []
    for y in S_r:
        ty = Segment(reflect(tau, y.a), reflect(tau, y.b))
        points.append(kappa(rigid_motion_between(ty, ref)))
    if len(set(planes)) != len(planes):
        raise ValueError("fixed point on axis: planes of distinct segments coincide")
    if len(set(points)) != len(points):
        raise ValueError("points of distinct segments coincide")
    return IncidenceModel(r, tau, ref, points, planes, list(S_r), list(S_r))


def mirror_pairs(S_r_ints, p: int, axes=None) -> set:
    """Ordered pairs (x, y) of segments with y the mirror image of x in a
    non-isotropic line over F_p, by reflecting every segment in every axis.

    ``axes`` optionally restricts the lines, given as (alpha, beta, gamma)."""
    segs = set(S_r_ints)
    if axes is None:
        axes = [(1, 0, g) for g in range(p)] + [(a, 1, g) for a in range(p) for g in range(p)]
    out = set()
    for a, b, g in axes:
        q = (a * a + b * b) % p
        if q == 0:
            continue
        k = 2 * pow(q, p - 2, p)

        def refl(pt):
            c = (a * pt[0] + b * pt[1] - g) * k % p
            return ((pt[0] - c * a) % p, (pt[1] - c * b) % p)

        for x in segs:
            y = (refl(x[0]), refl(x[1]))
            if y in segs:
                out.add((x, y))
    return out


def mirror_axis(x, y, p: int):
    """The line whose reflection maps segment x to y, or None."""
    ctx = _ctx(p)
    X = [PlanePoint.of(ctx, *q) for q in x]
    Y = [PlanePoint.of(ctx, *q) for q in y]
    if X[0] != Y[0]:
        line = Line.make((X[0] - Y[0]).x * 2, (X[0] - Y[0]).y * 2, X[0].dot(X[0]) - Y[0].dot(Y[0]), ctx)
    elif X[1] != Y[1]:
        line = Line.make((X[1] - Y[1]).x * 2, (X[1] - Y[1]).y * 2, X[1].dot(X[1]) - Y[1].dot(Y[1]), ctx)
    else:
        line = Line.through(X[0], X[1])
    if line.is_isotropic:
        return None
    if reflect(line, X[0]) == Y[0] and reflect(line, X[1]) == Y[1]:
        return line
    return None


@lru_cache(maxsize=None)
def _ctx(p: int) -> FieldCtx:
    return FieldCtx(p)


@dataclass
class AxialCount:
    r: int
    oracle: int
    pipeline: int
    tau: Line | None
    uses_extension: bool
    segments: int
    planes: int = 0
    points: int = 0

    @property
    def agree(self) -> bool:
        return self.oracle == self.pipeline


def axial_incidence_count(S_r_ints, p: int) -> AxialCount:
    """Mirror-symmetric ordered pairs in S_r counted twice: by reflecting in
    every axis, and as point-plane incidences of the kinematic model."""
    from .incidence import IncidenceSystem, incidence_count

    ctx = _ctx(p)
    S = list(S_r_ints)
    oracle = len(mirror_pairs(S, p))
    if not S:
        return AxialCount(0, oracle, 0, None, False, 0)
    segs = segments_of(S, ctx)
    ref = reference_segment(segs)
    tau = choose_tau(carriers(segs, ref), ctx)
    model = build_incidence_system(segs, tau)
    count = incidence_count(IncidenceSystem(model.points, model.planes))
    return AxialCount(model.r, oracle, count, tau, model.uses_extension, len(S),
                      len(set(model.planes)), len(set(model.points)))


# verification suite -------------------------------------------------------------


def random_motion(ctx: FieldCtx, rng, circle=None) -> RigidMotion:
    circle = circle if circle is not None else unit_circle(ctx)
    r = circle[rng.randrange(len(circle))]
    return RigidMotion(r.x, r.y, ctx(rng.randrange(ctx.p)), ctx(rng.randrange(ctx.p)))


def _rank(points: list[ProjPoint]) -> int:
    from .projective import rank

    return rank([list(X.coords) for X in points])


def verify_kinematic(ctx: FieldCtx, samples: int = 1000, seed: int = 0, census_limit: int = 13) -> list:
    """Census, round trip, equivariance, transporter lines and the axis plane."""
    import random

    from .ffield import legendre
    from .report import Check

    rng = random.Random(seed)
    p = ctx.p
    circle = unit_circle(ctx)
    checks = []
    if p <= census_limit:
        c = census(ctx)
        checks += [
            Check("|image kappa| = p^2 (p - chi(-1))", "kinematic-census", c.image, p * p * (p - legendre(-1, p)), "=="),
            Check("|FP^3| = (p^4 - 1)/(p - 1)", "kinematic-census", c.projective_points, (p**4 - 1) // (p - 1), "=="),
            Check("image is the complement of X0^2 + X1^2 = 0", "kinematic-census", c.image_is_complement, True, "=="),
            Check("exceptional set size", "kinematic-census", c.exceptional, c.projective_points - c.image, "=="),
        ]
        motions = all_motions(ctx)
    else:
        motions = [random_motion(ctx, rng, circle) for _ in range(samples)]
    bad = sum(kappa_inv(kappa(g)) != g for g in motions)
    checks.append(Check("kappa_inv(kappa(g)) = g", "kinematic-inverse", bad, 0, "=="))

    left = right = 0
    for _ in range(samples):
        g, x = random_motion(ctx, rng, circle), random_motion(ctx, rng, circle)
        left += kappa(g @ x) != left_map(g)(kappa(x))
        right += kappa(x @ g) != right_map(g)(kappa(x))
    checks += [
        Check("kappa(g x) = left_map(g) kappa(x)", "kinematic-equivariance", left, 0, "=="),
        Check("kappa(x g) = right_map(g) kappa(x)", "kinematic-equivariance", right, 0, "=="),
    ]

    trans_bad = 0
    for _ in range(min(samples, 200)):
        x = PlanePoint.of(ctx, rng.randrange(p), rng.randrange(p))
        y = PlanePoint.of(ctx, rng.randrange(p), rng.randrange(p))
        T = transporter(x, y)
        pts = [kappa(g) for g in T]
        line = transporter_line(x, y)
        trans_bad += (len(set(pts)) != len(circle)) or _rank(pts) != 2 or not all(line.contains(X) for X in pts)
    checks.append(Check("kappa(T_xy) spans a projective line", "transporter-lines", trans_bad, 0, "=="))

    plane_bad = 0
    for _ in range(min(samples, 10)):
        while True:
            line = Line.make(rng.randrange(p), rng.randrange(p), rng.randrange(p), ctx) if rng.random() < 0.9 \
                else Line.make(1, 0, rng.randrange(p), ctx)
            if not line.is_isotropic and (line.alpha or line.beta):
                break
        plane = r_tau_plane(line)
        pts = all_points_on(line)
        for c in (pts if len(pts) <= 20 else rng.sample(pts, 20)):
            for r in circle:
                g = RigidMotion(r.x, r.y, c.x - (r.x * c.x - r.y * c.y), c.y - (r.y * c.x + r.x * c.y))
                plane_bad += not plane.contains(kappa(g))
    checks.append(Check("rotations about axis points lie on the axis plane", "axis-plane", plane_bad, 0, "=="))
    return checks


def all_points_on(line: Line) -> list[PlanePoint]:
    """The p points of an F_p line."""
    ctx = line.alpha.ctx
    a, b, g = int(line.alpha), int(line.beta), int(line.gamma)
    p = ctx.p
    if b:
        k = pow(b, p - 2, p)
        return [PlanePoint.of(ctx, x, (g - a * x) * k % p) for x in range(p)]
    k = pow(a, p - 2, p)
    return [PlanePoint.of(ctx, g * k % p, y) for y in range(p)]
