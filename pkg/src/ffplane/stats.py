"""Counting statistics of a finite point set A in F_p^2.

Distances, pinned distances, the classes S_r of ordered pairs at distance r,
perpendicular-bisector multiplicities, bisector energy and isosceles-triangle
counts. Large inputs go through vectorised O(|A|^2) kernels; the small
brute-force routines exist to check them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from . import _fast
from .ffield import FieldCtx, field_ctx
from .plane import Circle, Line, PlanePoint
from .report import Check


@dataclass(frozen=True)
class PointSet:
    """A deduplicated set of points of F_p^2 stored as integer pairs."""

    ctx: FieldCtx
    coords: tuple[tuple[int, int], ...]
    provenance: str = ""

    @classmethod
    def from_ints(cls, p: int, pairs: Iterable, provenance: str = "") -> "PointSet":
        seen: dict[tuple[int, int], None] = {}
        for x, y in pairs:
            seen.setdefault((int(x) % p, int(y) % p), None)
        return cls(field_ctx(p), tuple(seen), provenance)

    @classmethod
    def from_points(cls, pts: Iterable[PlanePoint], provenance: str = "") -> "PointSet":
        pts = list(pts)
        if not pts:
            raise ValueError("cannot infer the field of an empty point list")
        return cls.from_ints(pts[0].ctx.p, (q.as_ints() for q in pts), provenance)

    @property
    def p(self) -> int:
        return self.ctx.p

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.coords)

    @property
    def points(self) -> list[PlanePoint]:
        return [PlanePoint.of(self.ctx, x, y) for x, y in self.coords]

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64).reshape(-1, 2)

    def without(self, drop) -> "PointSet":
        drop = set(drop)
        return PointSet(self.ctx, tuple(c for c in self.coords if c not in drop), self.provenance)


def _d(a, b, p):
    dx, dy = a[0] - b[0], a[1] - b[1]
    return (dx * dx + dy * dy) % p


# distances ---------------------------------------------------------------


@dataclass
class DistanceProfile:
    """Distinct-distance counts.

    ``per_pin`` counts the nonzero distances from each pin, ``delta_pin_nonzero``
    is its maximum. ``delta_pin`` is the same maximum with the zero distance
    included, which every pin in A contributes through itself.
    """

    delta: int
    delta0: int
    per_pin: dict[tuple[int, int], int]
    delta_pin: int
    delta_pin_nonzero: int
    pin: tuple[int, int]


def distance_profile(A: PointSet) -> DistanceProfile:
    if len(A) == 0:
        raise ValueError("empty point set")
    p, xy, n = A.p, A.array, len(A)
    seen = np.zeros(p, dtype=bool)
    per_pin = np.zeros(n, dtype=np.int64)
    for rows in _fast.row_chunks(n, n):
        d = _fast.pair_distances(xy, p, rows)
        counts = _row_histogram(d, p)
        seen |= counts.sum(axis=0) > 0
        per_pin[rows] = (counts[:, 1:] > 0).sum(axis=1)
    best = int(np.argmax(per_pin))
    delta0 = int(seen[1:].sum())
    return DistanceProfile(
        delta=delta0 + 1,
        delta0=delta0,
        per_pin={A.coords[i]: int(per_pin[i]) for i in range(n)},
        delta_pin=int(per_pin[best]) + 1,
        delta_pin_nonzero=int(per_pin[best]),
        pin=A.coords[best],
    )


def _row_histogram(d: np.ndarray, p: int) -> np.ndarray:
    c = d.shape[0]
    flat = (np.arange(c, dtype=np.int64)[:, None] * p + d).ravel()
    return np.bincount(flat, minlength=c * p).reshape(c, p)


def segment_classes(A: PointSet) -> dict[int, list[tuple[tuple[int, int], tuple[int, int]]]]:
    """Ordered pairs (a, b), a != b, grouped by d(a, b)."""
    p = A.p
    out: dict[int, list] = {}
    for a in A.coords:
        for b in A.coords:
            if a != b:
                out.setdefault(_d(a, b, p), []).append((a, b))
    return out


def segment_class_sizes(A: PointSet) -> dict[int, int]:
    p, xy, n = A.p, A.array, len(A)
    total = np.zeros(p, dtype=np.int64)
    for rows in _fast.row_chunks(n, n):
        total += _row_histogram(_fast.pair_distances(xy, p, rows), p).sum(axis=0)
    total[0] -= n
    return {r: int(c) for r, c in enumerate(total) if c}


# bisectors ----------------------------------------------------------------


@dataclass(frozen=True)
class BisectorRecord:
    i_A: int
    b_A: int
    b_star: int


@dataclass
class BisectorTable:
    """Per-line counts over every line that is a bisector of A or meets A.

    Stored as parallel sorted arrays keyed by canonical line codes.
    """

    p: int
    keys: np.ndarray
    i_A: np.ndarray
    b_A: np.ndarray
    b_star: np.ndarray
    isotropic: np.ndarray

    def __len__(self) -> int:
        return len(self.keys)

    def _index(self, line: Line) -> int | None:
        k = _fast.line_key(int(line.alpha), int(line.beta), int(line.gamma), self.p)
        j = int(np.searchsorted(self.keys, k))
        if j < len(self.keys) and self.keys[j] == k:
            return j
        return None

    def __getitem__(self, line: Line) -> BisectorRecord:
        j = self._index(line)
        if j is None:
            return BisectorRecord(0, 0, 0)
        return BisectorRecord(int(self.i_A[j]), int(self.b_A[j]), int(self.b_star[j]))

    def line(self, j: int) -> Line:
        a, b, g = _fast.decode_line_key(self.keys[j], self.p)
        return Line.make(a, b, g, field_ctx(self.p))

    def items(self):
        for j in range(len(self.keys)):
            yield self.line(j), BisectorRecord(int(self.i_A[j]), int(self.b_A[j]), int(self.b_star[j]))

    def support(self) -> np.ndarray:
        """Indices of lines with b* > 0."""
        return np.nonzero(self.b_star)[0]


def bisector_table(A: PointSet) -> BisectorTable:
    p, xy, n = A.p, A.array, len(A)
    all_keys, iso_flags = [], []
    for rows in _fast.row_chunks(n, n, budget=2_000_000):
        k, iso = _fast.bisector_keys(xy, p, rows)
        all_keys.append(k)
        iso_flags.append(iso)
    bkeys = np.concatenate(all_keys) if all_keys else np.zeros(0, dtype=np.int64)
    biso = np.concatenate(iso_flags) if iso_flags else np.zeros(0, dtype=bool)
    lkeys, lcounts = _fast.line_incidences(xy, p)
    keys = np.union1d(bkeys, lkeys)

    def scatter(src_keys, weights=None):
        out = np.zeros(len(keys), dtype=np.int64)
        if len(src_keys):
            u, c = np.unique(src_keys, return_counts=True)
            out[np.searchsorted(keys, u)] = c if weights is None else weights
        return out

    i_A = np.zeros(len(keys), dtype=np.int64)
    i_A[np.searchsorted(keys, lkeys)] = lcounts
    b_A = scatter(bkeys)
    b_star = scatter(bkeys[~biso])
    a = keys // (p * p)
    b = (keys // p) % p
    isotropic = (a * a + b * b) % p == 0
    return BisectorTable(p, keys, i_A, b_A, b_star, isotropic)


def bisector_energy(A: PointSet, table: BisectorTable | None = None) -> tuple[int, int]:
    """(B(A), B*(A)) as second moments of b_A and b*_A."""
    t = table if table is not None else bisector_table(A)
    return int((t.b_A * t.b_A).sum()), int((t.b_star * t.b_star).sum())


def count_isosceles_via_bisectors(A: PointSet, table: BisectorTable | None = None) -> int:
    """Sum over lines of (points on the line) x (non-isotropic pairs it bisects)."""
    t = table if table is not None else bisector_table(A)
    return int((t.i_A * t.b_star).sum())


# triangles ---------------------------------------------------------------


@dataclass
class TriangleCounts:
    """Isosceles-triangle counts.

    ``t_star`` counts ordered (a, b, c) with d(a,b) = d(a,c) and b - c
    non-isotropic (so b != c). ``t_ni`` counts those with d(a,b) = d(a,c) != 0.
    ``z[a]`` is the number of points at distance 0 from a, a itself included.
    """

    t_star: int
    t_ni: int
    per_apex: dict[tuple[int, int], int]
    per_apex_ni: dict[tuple[int, int], int] = field(default_factory=dict)
    z: dict[tuple[int, int], int] = field(default_factory=dict)
    pin_nonzero: dict[tuple[int, int], int] = field(default_factory=dict)
    moment_nonzero: int = 0


def count_isosceles_bruteforce(A: PointSet) -> TriangleCounts:
    """Direct enumeration of all ordered triples."""
    p, pts = A.p, A.coords
    per_apex, per_ni, z, pins = {}, {}, {}, {}
    moment = 0
    for a in pts:
        da = {b: _d(a, b, p) for b in pts}
        ts = tn = 0
        for b in pts:
            for c in pts:
                if da[b] != da[c]:
                    continue
                if _d(b, c, p) != 0:
                    ts += 1
                    if da[b] != 0:
                        tn += 1
                if da[b] != 0:
                    moment += 1
        per_apex[a], per_ni[a] = ts, tn
        z[a] = sum(1 for b in pts if da[b] == 0)
        pins[a] = len({v for v in da.values() if v})
    return TriangleCounts(
        t_star=sum(per_apex.values()),
        t_ni=sum(per_ni.values()),
        per_apex=per_apex,
        per_apex_ni=per_ni,
        z=z,
        pin_nonzero=pins,
        moment_nonzero=moment,
    )


def triangle_counts(A: PointSet) -> TriangleCounts:
    """O(|A|^2) counts by bucketing distances around each apex.

    For an apex a with n_r points at distance r, the triples with equal legs
    number sum_r n_r^2. Subtract b = c, then the pairs b != c with isotropic
    difference: those force b, c and a onto one isotropic line through a.
    """
    p, xy, n = A.p, A.array, len(A)
    i = _fast.sqrt_minus_one(p)
    x, y = xy[:, 0], xy[:, 1]
    t_star = np.zeros(n, dtype=np.int64)
    t_ni = np.zeros(n, dtype=np.int64)
    z = np.zeros(n, dtype=np.int64)
    pins = np.zeros(n, dtype=np.int64)
    moment = 0
    for rows in _fast.row_chunks(n, n):
        counts = _row_histogram(_fast.pair_distances(xy, p, rows), p)
        sq = (counts * counts).sum(axis=1)
        zr = counts[:, 0]
        sq_nz = sq - zr * zr
        corr = np.zeros(len(rows), dtype=np.int64)
        if i is not None:
            dx = x[None, :] - x[rows][:, None]
            dy = y[None, :] - y[rows][:, None]
            for sign in (i, p - i):
                m = ((dy - sign * dx) % p == 0).sum(axis=1)
                corr += m * (m - 1)
        t_star[rows] = sq - n - corr
        t_ni[rows] = sq_nz - (n - zr)
        z[rows] = zr
        pins[rows] = (counts[:, 1:] > 0).sum(axis=1)
        moment += int(sq_nz.sum())
    pts = A.coords
    return TriangleCounts(
        t_star=int(t_star.sum()),
        t_ni=int(t_ni.sum()),
        per_apex={pts[j]: int(t_star[j]) for j in range(n)},
        per_apex_ni={pts[j]: int(t_ni[j]) for j in range(n)},
        z={pts[j]: int(z[j]) for j in range(n)},
        pin_nonzero={pts[j]: int(pins[j]) for j in range(n)},
        moment_nonzero=moment,
    )


def t_star(A: PointSet) -> int:
    return triangle_counts(A).t_star if len(A) else 0


# rich curves --------------------------------------------------------------


def line_counts(A: PointSet) -> dict[tuple[int, int, int], int]:
    """|A on l| for every line l meeting A, keyed by canonical coefficients."""
    keys, counts = _fast.line_incidences(A.array, A.p)
    return {_fast.decode_line_key(k, A.p): int(c) for k, c in zip(keys, counts)}


CIRCLE_SCAN_BUDGET = 60_000_000


def circle_counts(A: PointSet) -> dict[tuple[int, int, int], int]:
    """|A on circle| for every circle with r2 != 0 holding at least one point.

    Exhaustive over all centres when p^2 |A| is moderate, otherwise through
    circumcentres of point triples (which only finds circles with >= 3 points).
    """
    p = A.p
    if p * p * max(1, len(A)) <= CIRCLE_SCAN_BUDGET:
        m = _fast.circle_count_matrix(A.array, p)
        m[:, 0] = 0
        c, r = np.nonzero(m)
        return {(int(cc // p), int(cc % p), int(rr)): int(m[cc, rr]) for cc, rr in zip(c, r)}
    return _circles_from_triples(A)


def _circles_from_triples(A: PointSet) -> dict[tuple[int, int, int], int]:
    p = A.p
    members: dict[tuple[int, int, int], set] = {}
    pts = A.coords
    for a, b, c in combinations(pts, 3):
        centre = _circumcentre(a, b, c, p)
        if centre is None:
            continue
        r2 = _d(a, centre, p)
        if r2:
            members.setdefault((centre[0], centre[1], r2), set()).update((a, b, c))
    return {k: len(v) for k, v in members.items()}


def _circumcentre(a, b, c, p):
    # 2x.(a-b) = |a|^2-|b|^2 and 2x.(a-c) = |a|^2-|c|^2
    a1, b1 = 2 * (a[0] - b[0]), 2 * (a[1] - b[1])
    a2, b2 = 2 * (a[0] - c[0]), 2 * (a[1] - c[1])
    g1 = a[0] ** 2 + a[1] ** 2 - b[0] ** 2 - b[1] ** 2
    g2 = a[0] ** 2 + a[1] ** 2 - c[0] ** 2 - c[1] ** 2
    det = (a1 * b2 - a2 * b1) % p
    if det == 0:
        return None
    inv = pow(det, p - 2, p)
    return ((g1 * b2 - g2 * b1) * inv % p, (a1 * g2 - a2 * g1) * inv % p)


def max_collinear(A: PointSet) -> int:
    lc = line_counts(A)
    return max(lc.values(), default=0)


def max_collinear_cocircular(A: PointSet) -> int:
    """Largest number of points of A on one line or one circle with r2 != 0."""
    if len(A) <= 2:
        return len(A)
    cc = circle_counts(A)
    return max(max_collinear(A), max(cc.values(), default=0))


def curve_from_key(key: tuple, p: int):
    ctx = field_ctx(p)
    kind, a, b, c = key
    if kind == "line":
        return Line.make(a, b, c, ctx)
    return Circle(PlanePoint.of(ctx, a, b), ctx(c))


# identity checks ----------------------------------------------------------


def check_identities(A: PointSet, tri: TriangleCounts | None = None,
                     table: BisectorTable | None = None) -> list[Check]:
    """Exact identities and inequalities relating the statistics of A."""
    n, p = len(A), A.p
    tri = tri if tri is not None else triangle_counts(A)
    table = table if table is not None else bisector_table(A)
    sizes = segment_class_sizes(A)
    s0 = sizes.get(0, 0)
    _, bstar = bisector_energy(A, table)
    nonzero_pairs = n * n - n - s0
    checks = [
        Check("sum of b* over lines", "bisector-pair-count", int(table.b_star.sum()),
              nonzero_pairs, "=="),
        Check("segment classes partition ordered pairs", "segment-classes",
              sum(sizes.values()), n * n - n, "=="),
        Check("isosceles count via bisectors", "isosceles-bisector-sum",
              count_isosceles_via_bisectors(A, table), tri.t_star, "=="),
        Check("pinned circle moment, exact", "pinned-circle-moment",
              tri.moment_nonzero, tri.t_ni + nonzero_pairs, "=="),
        Check("pinned circle moment, upper form", "pinned-circle-moment",
              tri.moment_nonzero, tri.t_ni + n * n, "<="),
        Check("T_NI <= T*", "isosceles-counts", tri.t_ni, tri.t_star, "<="),
        Check("|S_0| <= 2p|A|", "zero-distance-pairs", s0, 2 * p * n, "<="),
    ]
    if p % 4 == 3:
        checks.append(Check("T_NI = T* without isotropic vectors", "isosceles-counts",
                            tri.t_ni, tri.t_star, "=="))
    srmax = max((c for r, c in sizes.items() if r), default=0)
    checks.append(Check("max |S_r|^2 <= 16|A|^3", "repeated-distance-bound",
                        srmax * srmax, 16 * n**3, "<="))
    checks.append(Check("T*^2 <= 4|A|^2 B*", "bisector-energy-controls-triangles",
                        tri.t_star**2, 4 * n * n * bstar, "<="))
    M = max_collinear(A)
    dpin = max(tri.pin_nonzero.values(), default=0)
    if n > 2 * M - 1:
        checks.append(Check("|A|(|A|-2M+1)^2 <= (D_pin+1)(T*+|A|^2)",
                            "pinned-distances-vs-isosceles",
                            n * (n - 2 * M + 1) ** 2, (dpin + 1) * (tri.t_star + n * n), "<="))
    checks.extend(per_pin_checks(A, tri))
    return checks


def per_pin_checks(A: PointSet, tri: TriangleCounts) -> list[Check]:
    """Per-pin Cauchy-Schwarz in two forms, as counts of violating pins.

    With m = |A| - z_a points at nonzero distance from a and D distinct nonzero
    distances, sum_r n_r^2 >= m^2 / D gives m (m - D) <= D * T_NI,a. The
    variant m (m - 1) <= D * T_NI,a fails whenever the distances from a are
    all distinct, so it is only reported.
    """
    n = len(A)
    bad_exact = bad_literal = pins = 0
    for a in A.coords:
        D = tri.pin_nonzero[a]
        if D == 0:
            continue
        pins += 1
        m = n - tri.z[a]
        rhs = D * tri.per_apex_ni[a]
        bad_exact += m * (m - D) > rhs
        bad_literal += m * (m - 1) > rhs
    if not pins:
        return []
    return [
        Check("pins violating m(m-D) <= D*T_NI,a", "per-pin-cauchy-schwarz",
              bad_exact, 0, "=="),
        Check("pins violating m(m-1) <= D*T_NI,a", "per-pin-cauchy-schwarz",
              bad_literal, 0, "==", asserted=False,
              note="not valid in general; reported for comparison"),
    ]


def balanced(count: int, n: int, p: int) -> Fraction:
    return Fraction(count) - Fraction(n, p)
