"""Point-plane incidences in FP^3, plain and restricted by a set of lines.

Points and planes may live over F_p or F_{p^2}; bulk tests go through integer
arrays. Every counter has a plain double loop next to it for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .ffield import FieldCtx
from .projective import ProjLine, ProjPlane, ProjPoint, canonical, dot, null_space, to_arrays, zero_products
from .report import ratio_bounds, root_bounds


@dataclass
class IncidenceSystem:
    points: list[ProjPoint]
    planes: list[ProjPlane]
    lines: list[ProjLine] = field(default_factory=list)

    def __post_init__(self):
        self.points = list(dict.fromkeys(self.points))
        self.planes = list(dict.fromkeys(self.planes))
        self.lines = list(dict.fromkeys(self.lines))

    @property
    def ctx(self) -> FieldCtx | None:
        for obj in self.points:
            return obj.coords[0].ctx
        for obj in self.planes:
            return obj.coeffs[0].ctx
        return None


def incidence_matrix(sys: IncidenceSystem) -> np.ndarray:
    ctx = sys.ctx
    if ctx is None or not sys.points or not sys.planes:
        return np.zeros((len(sys.points), len(sys.planes)), dtype=bool)
    P = to_arrays([X.coords for X in sys.points], ctx.p)
    Q = to_arrays([h.coeffs for h in sys.planes], ctx.p)
    return zero_products(P, Q, ctx)


def incidence_count(sys: IncidenceSystem) -> int:
    return int(incidence_matrix(sys).sum())


def incidence_count_oracle(sys: IncidenceSystem) -> int:
    return sum(1 for X in sys.points for h in sys.planes if h.contains(X))


def _line_planes(line: ProjLine) -> list:
    """Two independent planes whose meet is the line."""
    return null_space([list(r) for r in line.basis])


def excluded_matrix(sys: IncidenceSystem) -> np.ndarray:
    """[i, j] is True when some line of L passes through point i and lies in plane j."""
    out = np.zeros((len(sys.points), len(sys.planes)), dtype=bool)
    ctx = sys.ctx
    if ctx is None or not sys.lines or not sys.points or not sys.planes:
        return out
    P = to_arrays([X.coords for X in sys.points], ctx.p)
    Q = to_arrays([h.coeffs for h in sys.planes], ctx.p)
    for line in sys.lines:
        on = zero_products(P, to_arrays(_line_planes(line), ctx.p), ctx).all(axis=1)
        if not on.any():
            continue
        inside = zero_products(Q, to_arrays(list(line.basis), ctx.p), ctx).all(axis=1)
        out |= np.outer(on, inside)
    return out


def restricted_incidence_count(sys: IncidenceSystem) -> int:
    return int((incidence_matrix(sys) & ~excluded_matrix(sys)).sum())


def restricted_incidence_count_oracle(sys: IncidenceSystem) -> int:
    count = 0
    for X in sys.points:
        for h in sys.planes:
            if not h.contains(X):
                continue
            if all(not line.contains(X) or not line.inside(h) for line in sys.lines):
                count += 1
    return count


# collinearity ---------------------------------------------------------------


def _pivot(v) -> int:
    return next(i for i, x in enumerate(v) if x)


def rich_lines(vectors: list[tuple], min_size: int = 3) -> dict[ProjLine, int]:
    """Lines of FP^3 holding at least ``min_size`` of the given projective points,
    with their point counts. Points sharing a line with an anchor a are grouped
    by the class of b - b[c] a, where c is the pivot of a."""
    vectors = list(dict.fromkeys(tuple(v) for v in vectors))
    out: dict[ProjLine, int] = {}
    for i, a in enumerate(vectors):
        c = _pivot(a)
        groups: dict[tuple, int] = {}
        for b in vectors[i + 1:]:
            d = canonical([y - b[c] * x for x, y in zip(a, b)])
            groups[d] = groups.get(d, 0) + 1
        for d, n in groups.items():
            if n + 1 >= min_size:
                line = ProjLine.through(ProjPoint(a), ProjPoint(d))
                # the first anchor on a line sees all later members
                out.setdefault(line, n + 1)
    return out


def _max_on_lines(vectors: list[tuple], exclude: set | None = None, dual: bool = False) -> int:
    """Largest number of the vectors on one line not in ``exclude``. With
    ``dual`` the vectors are planes and the line is their common meet."""
    vectors = list(dict.fromkeys(tuple(v) for v in vectors))
    n = len(vectors)
    if n <= 1:
        return n
    exclude = exclude or set()
    best = 2
    found_pair = False
    lines = rich_lines(vectors, 3)
    if lines:
        for dline, cnt in sorted(lines.items(), key=lambda kv: -kv[1]):
            primal = _dual_line(dline) if dual else dline
            if primal not in exclude:
                best = max(best, cnt)
                break
        else:
            best = 0
    if best >= 3:
        return best
    # only pairs remain; look for one spanning a line outside ``exclude``
    for i, a in enumerate(vectors):
        for b in vectors[i + 1:]:
            dline = ProjLine.through(ProjPoint(a), ProjPoint(b))
            if dline in lines:
                continue
            primal = _dual_line(dline) if dual else dline
            if primal not in exclude:
                found_pair = True
                break
        if found_pair:
            break
    if found_pair:
        return 2
    # every pair lies on an excluded line or a rich line that is excluded
    return 1


def _dual_line(dline: ProjLine) -> ProjLine:
    a, b = dline.basis
    return ProjLine.meet(ProjPlane(tuple(a)), ProjPlane(tuple(b)))


def max_collinear(points: list[ProjPoint]) -> int:
    return _max_on_lines([X.coords for X in points])


def max_collinear_oracle(points: list[ProjPoint]) -> int:
    pts = list(dict.fromkeys(points))
    if len(pts) <= 2:
        return len(pts)
    best = 2
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            line = ProjLine.through(a, b)
            best = max(best, sum(1 for X in pts if line.contains(X)))
    return best


def max_rich_line_off(sys: IncidenceSystem) -> int:
    """mu: the most points on, or planes through, a single line outside L."""
    ex = set(sys.lines)
    return max(
        _max_on_lines([X.coords for X in sys.points], ex),
        _max_on_lines([h.coeffs for h in sys.planes], ex, dual=True),
    )


# ratio diagnostics --------------------------------------------------------------


@dataclass
class RatioReport:
    incidences: int
    points: int
    planes: int
    k: int
    ratio_bounds: tuple[Fraction, Fraction]
    points_over_p2: Fraction
    preconditions: dict
    restricted: int | None = None
    mu: int | None = None
    restricted_ratio_bounds: tuple[Fraction, Fraction] | None = None

    def to_dict(self) -> dict:
        from .report import jsonable

        return jsonable(self.__dict__)


def rudnev_ratio(sys: IncidenceSystem, p: int | None = None) -> RatioReport:
    """Empirical constants I / (|P|^{1/2}|Pi| + k|Pi|) and, when lines are given,
    I_L / (N^{3/2} + mu N), each as a rational bracket."""
    p = p if p is not None else (sys.ctx.p if sys.ctx else 1)
    I = incidence_count(sys)
    nP, nPi = len(sys.points), len(sys.planes)
    k = max_collinear(sys.points)
    lo, hi = root_bounds(nP, 2)
    bounds = ratio_bounds(I, lo * nPi + k * nPi, hi * nPi + k * nPi) if nPi else (Fraction(0), Fraction(0))
    rep = RatioReport(
        incidences=I,
        points=nP,
        planes=nPi,
        k=k,
        ratio_bounds=bounds,
        points_over_p2=Fraction(nP, p * p),
        preconditions={"points_at_most_planes": nP <= nPi, "points_below_p2": nP <= p * p},
    )
    if sys.lines:
        N = nP
        rep.restricted = restricted_incidence_count(sys)
        rep.mu = max_rich_line_off(sys)
        rlo, rhi = root_bounds(N, 2)
        rep.restricted_ratio_bounds = (
            ratio_bounds(rep.restricted, N * rlo + rep.mu * N, N * rhi + rep.mu * N) if N else (Fraction(0), Fraction(0))
        )
        rep.preconditions["equal_sizes"] = nP == nPi
    return rep
