"""Points, planes, lines and maps of projective 3-space over F_p or F_{p^2}.

Objects hold canonical coordinates (first nonzero entry equal to 1) so that
structural equality is projective equality. Bulk incidence tests convert to
integer arrays; extension elements become a pair of arrays (a0, a1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ffield import FieldCtx, FieldScalar


def _coerce(ctx: FieldCtx, vals) -> tuple:
    return tuple(v if isinstance(v, FieldScalar) else ctx(v) for v in vals)


def canonical(vals: Sequence[FieldScalar]) -> tuple:
    for v in vals:
        if v:
            inv = v.inverse()
            return tuple(x * inv for x in vals)
    raise ValueError("zero vector has no projective class")


def rref(rows: list[list[FieldScalar]]) -> list[tuple]:
    """Reduced row echelon form, zero rows dropped."""
    rows = [list(r) for r in rows]
    out: list[list] = []
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rows and col < ncols:
        piv = next((r for r in rows if r[col]), None)
        if piv is None:
            col += 1
            continue
        rows.remove(piv)
        inv = piv[col].inverse()
        piv = [x * inv for x in piv]
        rows = [[a - r[col] * b for a, b in zip(r, piv)] for r in rows]
        out = [[a - r[col] * b for a, b in zip(r, piv)] for r in out]
        out.append(piv)
        col += 1
    out.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
    return [tuple(r) for r in out if any(r)]


def dot(a: Sequence[FieldScalar], b: Sequence[FieldScalar]) -> FieldScalar:
    acc = a[0] * b[0]
    for x, y in zip(a[1:], b[1:]):
        acc = acc + x * y
    return acc


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple

    @classmethod
    def make(cls, vals, ctx: FieldCtx | None = None) -> "ProjPoint":
        if ctx is not None:
            vals = _coerce(ctx, vals)
        return cls(canonical(vals))

    @property
    def ctx(self) -> FieldCtx:
        return self.coords[0].ctx

    @property
    def is_base(self) -> bool:
        return all(c.is_base for c in self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def ints(self) -> tuple:
        return tuple(int(c) for c in self.coords)

    def __repr__(self) -> str:
        return "[" + ":".join(repr(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class ProjPlane:
    """The plane {X : sum coeffs[i] * X[i] = 0}."""

    coeffs: tuple

    @classmethod
    def make(cls, vals, ctx: FieldCtx | None = None) -> "ProjPlane":
        if ctx is not None:
            vals = _coerce(ctx, vals)
        return cls(canonical(vals))

    def contains(self, X: ProjPoint) -> bool:
        return not dot(self.coeffs, X.coords)

    def __repr__(self) -> str:
        return "Plane(" + ",".join(repr(c) for c in self.coeffs) + ")"


@dataclass(frozen=True)
class ProjLine:
    """A projective line as the reduced echelon basis of its 2-dimensional span."""

    basis: tuple

    @classmethod
    def through(cls, a: ProjPoint, b: ProjPoint) -> "ProjLine":
        r = rref([list(a.coords), list(b.coords)])
        if len(r) != 2:
            raise ValueError("points coincide")
        return cls(tuple(r))

    @classmethod
    def meet(cls, a: ProjPlane, b: ProjPlane) -> "ProjLine":
        """Intersection of two distinct planes."""
        ns = null_space([list(a.coeffs), list(b.coeffs)])
        if len(ns) != 2:
            raise ValueError("planes coincide")
        return cls(tuple(rref(ns)))

    def contains(self, X: ProjPoint) -> bool:
        return len(rref([list(r) for r in self.basis] + [list(X.coords)])) == 2

    def inside(self, plane: ProjPlane) -> bool:
        return all(not dot(plane.coeffs, r) for r in self.basis)

    def points(self, ctx: FieldCtx, ext: bool = False) -> list[ProjPoint]:
        """All points of the line over F_p (or F_{p^2} when ``ext``)."""
        r0, r1 = self.basis
        scalars = ctx.ext_elements() if ext else ctx.elements()
        out = [ProjPoint.make(r1)]
        for t in scalars:
            out.append(ProjPoint.make([a + t * b for a, b in zip(r0, r1)]))
        return out

    def __repr__(self) -> str:
        return f"Line{self.basis}"


def null_space(rows: list[list[FieldScalar]]) -> list[list[FieldScalar]]:
    r = rref(rows)
    ncols = len(rows[0])
    ctx = rows[0][0].ctx
    pivots = [next(i for i, x in enumerate(row) if x) for row in r]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ctx.zero] * ncols
        v[f] = ctx.one
        for row, pc in zip(r, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def rank(rows: list[list[FieldScalar]]) -> int:
    return len(rref(rows))


@dataclass(frozen=True)
class ProjMap:
    """An invertible 4x4 matrix acting on column vectors, up to scale."""

    m: tuple

    @classmethod
    def make(cls, rows) -> "ProjMap":
        return cls(tuple(tuple(r) for r in rows))

    def __call__(self, X: ProjPoint) -> ProjPoint:
        return ProjPoint.make([dot(row, X.coords) for row in self.m])

    def raw(self, vec) -> list:
        return [dot(row, vec) for row in self.m]

    def transpose(self) -> "ProjMap":
        return ProjMap(tuple(zip(*self.m)))

    def __matmul__(self, o: "ProjMap") -> "ProjMap":
        cols = list(zip(*o.m))
        return ProjMap(tuple(tuple(dot(r, c) for c in cols) for r in self.m))

    def is_scalar(self) -> bool:
        n = len(self.m)
        d = self.m[0][0]
        return bool(d) and all(self.m[i][j] == (d if i == j else 0) for i in range(n) for j in range(n))

    def plane_image(self, plane: ProjPlane, inverse: "ProjMap") -> ProjPlane:
        """Image of ``plane`` under this map, given a matrix of the inverse map."""
        return ProjPlane.make(inverse.transpose().raw(plane.coeffs))


# array helpers ------------------------------------------------------------


def to_arrays(vectors: Sequence[Sequence[FieldScalar]], p: int) -> tuple[np.ndarray, np.ndarray]:
    if not vectors:
        return np.zeros((0, 4), dtype=np.int64), np.zeros((0, 4), dtype=np.int64)
    a0 = np.array([[c.a0 for c in v] for v in vectors], dtype=np.int64)
    a1 = np.array([[c.a1 for c in v] for v in vectors], dtype=np.int64)
    return a0, a1


def zero_products(P: tuple, Q: tuple, ctx: FieldCtx) -> np.ndarray:
    """Boolean matrix [i, j] = (P_i . Q_j == 0) for array pairs from :func:`to_arrays`."""
    p, n = ctx.p, ctx.ext_nonresidue
    p0, p1 = P
    q0, q1 = Q
    re = (p0 @ q0.T) % p
    if p1.any() and q1.any():
        re = (re + n * ((p1 @ q1.T) % p)) % p
    im = ((p0 @ q1.T) % p + (p1 @ q0.T) % p) % p
    return (re == 0) & (im == 0)
