"""The Clifford algebra Cl(V, Q) of V = F^3 with Q(x, y, z) = x^2 - lam*y^2.

Generators satisfy e1^2 = 1, e2^2 = -lam, e3^2 = 0 and anticommute. The
even unit group modulo scalars is the group SF(Q0) of rigid motions that
preserve x^2 - lam*y^2; for lam = -1 this is SF2.

Basis order: e0, e1, e2, e3, e12, e13, e23, e123.

Matrices for SF(Q0) use the layout [[u, v, s], [lam*v, u, t], [0, 0, 1]].
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .ffield import FieldCtx, FieldScalar, legendre
from .report import Check

BLADES = (0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111)
NAMES = ("e0", "e1", "e2", "e3", "e12", "e13", "e23", "e123")
_INDEX = {m: i for i, m in enumerate(BLADES)}
EVEN = (0, 4, 5, 6)
VECTOR = (1, 2, 3)


def _grade(mask: int) -> int:
    return bin(mask).count("1")


def _squares(lam: int, p: int) -> dict[int, int]:
    # generator bit -> its square
    return {0: 1, 1: (-lam) % p, 2: 0}


def table_by_bitmask(lam: int, p: int) -> list[list[tuple[int, int]]]:
    """Basis products as (coefficient, blade index) via reordering signs."""
    sq = _squares(lam, p)
    table = []
    for ma in BLADES:
        row = []
        for mb in BLADES:
            swaps = 0
            for i in range(3):
                if mb >> i & 1:
                    swaps += _grade(ma >> (i + 1))
            coef = -1 if swaps % 2 else 1
            for i in range(3):
                if ma >> i & 1 and mb >> i & 1:
                    coef *= sq[i]
            row.append((coef % p, _INDEX[ma ^ mb]))
        table.append(row)
    return table


def table_by_words(lam: int, p: int) -> list[list[tuple[int, int]]]:
    """Basis products by reducing generator strings with the defining rules."""
    sq = _squares(lam, p)

    def word(mask):
        return [i for i in range(3) if mask >> i & 1]

    table = []
    for ma in BLADES:
        row = []
        for mb in BLADES:
            w, coef = word(ma) + word(mb), 1
            changed = True
            while changed:
                changed = False
                for k in range(len(w) - 1):
                    if w[k] == w[k + 1]:
                        coef *= sq[w[k]]
                        del w[k:k + 2]
                        changed = True
                        break
                    if w[k] > w[k + 1]:
                        w[k], w[k + 1] = w[k + 1], w[k]
                        coef = -coef
                        changed = True
                        break
            mask = sum(1 << i for i in w)
            row.append((coef % p, _INDEX[mask]))
        table.append(row)
    return table


@dataclass(frozen=True)
class CliffordAlgebraCtx:
    ctx: FieldCtx
    lam: int = -1
    table: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        p = self.ctx.p
        object.__setattr__(self, "lam", self.lam % p)
        if self.lam == 0:
            raise ValueError("lambda must be nonzero")
        t = table_by_bitmask(self.lam, p)
        object.__setattr__(self, "table", tuple(tuple(r) for r in t))

    @property
    def lam_scalar(self) -> FieldScalar:
        return self.ctx(self.lam)

    def element(self, coeffs: Sequence) -> "CliffordElement":
        if len(coeffs) != 8:
            raise ValueError("need 8 coefficients")
        return CliffordElement(self, tuple(c if isinstance(c, FieldScalar) else self.ctx(c) for c in coeffs))

    def basis(self, i: int) -> "CliffordElement":
        return self.element([1 if j == i else 0 for j in range(8)])

    def e(self, name: str) -> "CliffordElement":
        return self.basis(NAMES.index(name))

    def scalar(self, c) -> "CliffordElement":
        return self.element([c] + [0] * 7)

    def vector(self, x, y, z) -> "CliffordElement":
        return self.element([0, x, y, z, 0, 0, 0, 0])

    def even(self, g0, g12, g13, g23) -> "CliffordElement":
        return self.element([g0, 0, 0, 0, g12, g13, g23, 0])

    def Q(self, x, y, z=0) -> FieldScalar:
        x = x if isinstance(x, FieldScalar) else self.ctx(x)
        y = y if isinstance(y, FieldScalar) else self.ctx(y)
        return x * x - self.lam_scalar * y * y


@dataclass(frozen=True)
class CliffordElement:
    alg: CliffordAlgebraCtx
    c: tuple

    def __add__(self, o):
        return CliffordElement(self.alg, tuple(a + b for a, b in zip(self.c, o.c)))

    def __sub__(self, o):
        return CliffordElement(self.alg, tuple(a - b for a, b in zip(self.c, o.c)))

    def __neg__(self):
        return CliffordElement(self.alg, tuple(-a for a in self.c))

    def scale(self, k) -> "CliffordElement":
        return CliffordElement(self.alg, tuple(a * k for a in self.c))

    def __mul__(self, o):
        if isinstance(o, CliffordElement):
            return cl_mul(self, o)
        return self.scale(o)

    def __rmul__(self, k):
        return self.scale(k)

    @property
    def is_even(self) -> bool:
        return not any(self.c[i] for i in range(8) if _grade(BLADES[i]) % 2)

    @property
    def is_vector(self) -> bool:
        return not any(self.c[i] for i in range(8) if i not in VECTOR)

    @property
    def is_scalar(self) -> bool:
        return not any(self.c[1:])

    def even_coords(self) -> tuple:
        return tuple(self.c[i] for i in EVEN)

    def vector_coords(self) -> tuple:
        return tuple(self.c[i] for i in VECTOR)

    def __repr__(self) -> str:
        terms = [f"{v!r}*{NAMES[i]}" for i, v in enumerate(self.c) if v]
        return " + ".join(terms) if terms else "0"


def cl_mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    alg = a.alg
    zero = alg.ctx.zero
    out = [zero] * 8
    for i, x in enumerate(a.c):
        if not x:
            continue
        row = alg.table[i]
        for j, y in enumerate(b.c):
            if not y:
                continue
            coef, k = row[j]
            if coef:
                out[k] = out[k] + x * y * coef
    return CliffordElement(alg, tuple(out))


def main_involution(a: CliffordElement) -> CliffordElement:
    """The automorphism with e_i -> -e_i."""
    return CliffordElement(a.alg, tuple(-v if _grade(BLADES[i]) % 2 else v for i, v in enumerate(a.c)))


def conjugate(a: CliffordElement) -> CliffordElement:
    """The anti-automorphism with e_i -> -e_i; a grade-k blade picks up (-1)^(k(k+1)/2)."""
    def sign(i):
        k = _grade(BLADES[i])
        return -1 if (k * (k + 1) // 2) % 2 else 1

    return CliffordElement(a.alg, tuple(v if sign(i) == 1 else -v for i, v in enumerate(a.c)))


def norm(a: CliffordElement) -> FieldScalar:
    """a * conjugate(a), when that product is a scalar."""
    n = cl_mul(a, conjugate(a))
    if not n.is_scalar:
        raise ValueError("a * a^* is not a scalar for this element")
    return n.c[0]


def inverse(a: CliffordElement) -> CliffordElement:
    n = norm(a)
    if not n:
        raise ValueError("element is not a unit")
    return conjugate(a).scale(n.inverse())


@dataclass(frozen=True)
class EvenUnit:
    """g0 + g12 e12 + g13 e13 + g23 e23 with g0^2 - lam*g12^2 != 0."""

    alg: CliffordAlgebraCtx
    g0: FieldScalar
    g12: FieldScalar
    g13: FieldScalar
    g23: FieldScalar

    @classmethod
    def of(cls, alg: CliffordAlgebraCtx, g0, g12=0, g13=0, g23=0) -> "EvenUnit":
        f = alg.ctx
        vals = [v if isinstance(v, FieldScalar) else f(v) for v in (g0, g12, g13, g23)]
        return cls(alg, *vals)

    def __post_init__(self):
        if not self.n:
            raise ValueError("not a unit: g0^2 - lam*g12^2 = 0")

    @property
    def n(self) -> FieldScalar:
        return self.g0 * self.g0 - self.alg.lam_scalar * self.g12 * self.g12

    @property
    def element(self) -> CliffordElement:
        return self.alg.even(self.g0, self.g12, self.g13, self.g23)

    @classmethod
    def from_element(cls, x: CliffordElement) -> "EvenUnit":
        if not x.is_even:
            raise ValueError("not an even element")
        return cls(x.alg, *x.even_coords())

    def inverse(self) -> "EvenUnit":
        return EvenUnit.from_element(inverse(self.element))

    def __mul__(self, o: "EvenUnit") -> "EvenUnit":
        return EvenUnit.from_element(cl_mul(self.element, o.element))

    def coords(self) -> tuple:
        return self.g0, self.g12, self.g13, self.g23


def sandwich(g: EvenUnit, v: CliffordElement) -> CliffordElement:
    if not v.is_vector:
        raise ValueError("sandwich acts on vectors")
    return cl_mul(cl_mul(g.element, v), inverse(g.element))


def sandwich_formulas(g: EvenUnit) -> list[tuple]:
    """Closed-form images of e1, e2, e3 under v -> g v g^{-1}, as coefficient
    triples on (e1, e2, e3). Read as rows, this is also the closed form of
    :func:`dual_rep`."""
    lam = g.alg.lam_scalar
    g0, g12, g13, g23 = g.coords()
    k = g.n.inverse()
    diag = (g0 * g0 + lam * g12 * g12) * k
    f = g.alg.ctx
    return [
        (diag, -2 * g0 * g12 * k, -2 * (g0 * g13 + lam * g12 * g23) * k),
        (-2 * lam * g0 * g12 * k, diag, 2 * lam * (g0 * g23 + g12 * g13) * k),
        (f.zero, f.zero, f.one),
    ]


def sandwich_matrix(g: EvenUnit) -> list[list[FieldScalar]]:
    """Row i holds the coefficients of g e_i g^{-1}, computed by multiplication."""
    alg = g.alg
    return [list(sandwich(g, alg.basis(i)).vector_coords()) for i in VECTOR]


def dual_rep(g: EvenUnit) -> list[list[FieldScalar]]:
    """The 3x3 matrix whose rows are the images of e1, e2, e3 under the
    sandwich action of g. As a function of g it reverses products;
    :func:`rho_star` is the homomorphism."""
    return sandwich_matrix(g)


def rho_star(g: EvenUnit) -> list[list[FieldScalar]]:
    return dual_rep(g.inverse())


def matmul(a, b):
    n, m, k = len(a), len(b[0]), len(b)
    return [[sum((a[i][t] * b[t][j] for t in range(1, k)), a[i][0] * b[0][j]) for j in range(m)] for i in range(n)]


def is_sf_matrix(m, lam: FieldScalar) -> bool:
    u, v, s = m[0]
    lv, u2, t = m[1]
    return (
        not m[2][0] and not m[2][1] and m[2][2] == 1
        and u == u2 and lv == lam * v and u * u - lam * v * v == 1
    )


def sf_matrix(alg: CliffordAlgebraCtx, u, v, s, t):
    f = alg.ctx
    u, v, s, t = (x if isinstance(x, FieldScalar) else f(x) for x in (u, v, s, t))
    return [[u, v, s], [alg.lam_scalar * v, u, t], [f.zero, f.zero, f.one]]


def conic_points(alg: CliffordAlgebraCtx) -> list[tuple[int, int]]:
    """All (u, v) with u^2 - lam*v^2 = 1 over F_p."""
    p, lam = alg.ctx.p, alg.lam
    return [(u, v) for u in range(p) for v in range(p) if (u * u - lam * v * v - 1) % p == 0]


def rational_parameterisation(alg: CliffordAlgebraCtx) -> dict[int, tuple[int, int]]:
    """t -> ((t^2+lam)/(t^2-lam), -2t/(t^2-lam)) wherever t^2 != lam."""
    p, lam = alg.ctx.p, alg.lam
    out = {}
    for t in range(p):
        d = (t * t - lam) % p
        if d == 0:
            continue
        inv = pow(d, p - 2, p)
        out[t] = ((t * t + lam) * inv % p, (-2 * t) * inv % p)
    return out


def unit_classes(alg: CliffordAlgebraCtx) -> list[EvenUnit]:
    """One representative per point [g0:g12:g13:g23] of G/Z."""
    p = alg.ctx.p
    out = []
    for g in _projective_points(p):
        if (g[0] * g[0] - alg.lam * g[1] * g[1]) % p:
            out.append(EvenUnit.of(alg, *g))
    return out


def _projective_points(p: int):
    for lead in range(4):
        for rest in range(p ** (3 - lead)):
            tail = []
            r = rest
            for _ in range(3 - lead):
                tail.append(r % p)
                r //= p
            yield tuple([0] * lead + [1] + tail[::-1])


def random_unit(alg: CliffordAlgebraCtx, rng: random.Random) -> EvenUnit:
    p = alg.ctx.p
    while True:
        g = [rng.randrange(p) for _ in range(4)]
        if (g[0] * g[0] - alg.lam * g[1] * g[1]) % p:
            return EvenUnit.of(alg, *g)


def random_element(alg: CliffordAlgebraCtx, rng: random.Random) -> CliffordElement:
    return alg.element([rng.randrange(alg.ctx.p) for _ in range(8)])


def verify_isomorphism(alg: CliffordAlgebraCtx, sample_size: int = 200, seed: int = 0,
                       exhaustive_limit: int = 13) -> list[Check]:
    """Check that g -> rho_star(g) identifies G/Z with SF(Q0)."""
    rng = random.Random(seed)
    p, lam = alg.ctx.p, alg.lam_scalar
    checks: list[Check] = []

    # homomorphism on sampled pairs; dual_rep itself reverses order
    hom_bad = anti_bad = shape_bad = 0
    for _ in range(sample_size):
        a, b = random_unit(alg, rng), random_unit(alg, rng)
        ab = a * b
        hom_bad += rho_star(ab) != matmul(rho_star(a), rho_star(b))
        anti_bad += dual_rep(ab) != matmul(dual_rep(b), dual_rep(a))
        shape_bad += not is_sf_matrix(rho_star(a), lam)
    checks.append(Check("rho_star(ab) = rho_star(a) rho_star(b)", "unit-group-representation", hom_bad, 0, "=="))
    checks.append(Check("dual_rep(ab) = dual_rep(b) dual_rep(a)", "unit-group-representation", anti_bad, 0, "=="))
    checks.append(Check("image has SF(Q0) matrix shape", "unit-group-representation", shape_bad, 0, "=="))

    # rotations: rational parameterisation plus (1, 0)
    conic = set(conic_points(alg))
    param = rational_parameterisation(alg)
    covered = set(param.values()) | {(1, 0)}
    checks.append(Check("parameterisation is injective", "conic-parameterisation",
                        len(set(param.values())), len(param), "=="))
    checks.append(Check("parameterisation plus (1,0) covers the conic", "conic-parameterisation",
                        len(covered & conic), len(conic), "=="))
    rot_images = set()
    for g0 in range(p):
        for g12 in range(p):
            if (g0 * g0 - alg.lam * g12 * g12) % p:
                m = rho_star(EvenUnit.of(alg, g0, g12))
                rot_images.add((int(m[0][0]), int(m[0][1])))
    checks.append(Check("rotation subgroup maps onto SO(Q0)", "rotation-subgroup",
                        len(rot_images & conic), len(conic), "=="))
    trans = set()
    for g13 in range(p):
        for g23 in range(p):
            m = rho_star(EvenUnit.of(alg, 1, 0, g13, g23))
            trans.add((int(m[0][2]), int(m[1][2])))
    checks.append(Check("translation subgroup is bijective with translations", "translation-subgroup",
                        len(trans), p * p, "=="))

    sf_order = p * p * len(conic)
    expected = p * p * (p - legendre(lam.a0, p))
    checks.append(Check("|SF(Q0)| = p^2 (p - chi(lam))", "group-order", sf_order, expected, "=="))
    if p <= exhaustive_limit:
        classes = unit_classes(alg)
        images = set()
        for g in classes:
            m = rho_star(g)
            images.add(tuple(int(m[i][j]) for i in range(2) for j in range(3)))
        checks.append(Check("|G/Z| = |SF(Q0)|", "group-order", len(classes), sf_order, "=="))
        checks.append(Check("rho_star injective on G/Z", "group-order", len(images), len(classes), "=="))
        total = (p**4 - 1) // (p - 1)
        excluded = total - len(classes)
        quadric = sum(1 for g in _projective_points(p) if (g[0] * g[0] - alg.lam * g[1] * g[1]) % p == 0)
        checks.append(Check("excluded set is X0^2 - lam X1^2 = 0", "excluded-quadric", excluded, quadric, "=="))
    return checks


def contragredient_display(g: EvenUnit) -> list[list[FieldScalar]]:
    """The displayed closed form of rho_star(g^{-1}), entry by entry."""
    lam = g.alg.lam_scalar
    g0, g12, g13, g23 = g.coords()
    k = g.n.inverse()
    f = g.alg.ctx
    return [
        [(g0 * g0 + lam * g12 * g12) * k, -2 * g0 * g12 * k, -2 * (g0 * g13 + lam * g12 * g23) * k],
        [-2 * lam * g0 * g12 * k, (g0 * g0 + lam * g12 * g12) * k, 2 * lam * (g0 * g23 + g12 * g13) * k],
        [f.zero, f.zero, g.n * k],
    ]


def algebra_checks(alg: CliffordAlgebraCtx, sample_size: int = 1000, seed: int = 0) -> list[Check]:
    """Multiplication table, associativity, anti-automorphism of the conjugate,
    multiplicativity of the norm, and the closed forms of the sandwich action."""
    rng = random.Random(seed)
    p, lam = alg.ctx.p, alg.lam
    by_mask, by_words = table_by_bitmask(lam, p), table_by_words(lam, p)
    agree = sum(by_mask[i][j] == by_words[i][j] for i in range(8) for j in range(8))
    checks = [Check("basis products agree between two derivations", "multiplication-table", agree, 64, "==")]
    assoc = conj = nrm = 0
    for _ in range(sample_size):
        a, b, c = (random_element(alg, rng) for _ in range(3))
        assoc += cl_mul(cl_mul(a, b), c) != cl_mul(a, cl_mul(b, c))
        conj += conjugate(cl_mul(a, b)) != cl_mul(conjugate(b), conjugate(a))
        # the norm is scalar on even elements and on vectors
        if rng.random() < 0.5:
            x, y = random_unit(alg, rng).element, random_unit(alg, rng).element
        else:
            x = alg.vector(*(rng.randrange(p) for _ in range(3)))
            y = alg.vector(*(rng.randrange(p) for _ in range(3)))
        nrm += norm(cl_mul(x, y)) != norm(x) * norm(y)
    checks += [
        Check("(ab)c = a(bc)", "algebra-axioms", assoc, 0, "=="),
        Check("(ab)* = b* a*", "conjugation", conj, 0, "=="),
        Check("N(ab) = N(a) N(b) on even elements and vectors", "norm", nrm, 0, "=="),
    ]
    formula = contra = unit_norm = stays = 0
    for _ in range(sample_size):
        g = random_unit(alg, rng)
        sm = sandwich_matrix(g)
        formula += [list(r) for r in sandwich_formulas(g)] != sm
        contra += contragredient_display(g) != rho_star(g.inverse())
        unit_norm += norm(g.element) != g.n
        v = alg.vector(*(rng.randrange(p) for _ in range(3)))
        stays += not sandwich(g, v).is_vector
    checks += [
        Check("sandwich images match the closed forms", "sandwich-action", formula, 0, "=="),
        Check("rho_star(g^-1) matches its closed form", "contragredient", contra, 0, "=="),
        Check("N(g) = g0^2 - lam g12^2 on even units", "norm", unit_norm, 0, "=="),
        Check("sandwich keeps vectors in V", "sandwich-action", stays, 0, "=="),
    ]
    return checks
