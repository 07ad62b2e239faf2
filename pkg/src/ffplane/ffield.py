"""Exact arithmetic in F_p and its quadratic extension F_{p^2}.

An extension element is stored as ``a0 + a1*w`` with ``w**2 == ctx.ext_nonresidue``.
Base-field values have ``a1 == 0`` and behave like residues mod p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def legendre(a: int, p: int) -> int:
    """Quadratic character of the residue ``a`` via Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _smallest_nonresidue(p: int) -> int:
    n = 2
    while legendre(n, p) != -1:
        n += 1
    return n


def _canonical(r: int, p: int) -> int:
    return r if r <= p // 2 else p - r


def tonelli_shanks(a: int, p: int) -> int:
    """Canonical square root of a quadratic residue ``a`` mod ``p``."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = _smallest_nonresidue(p)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return _canonical(r, p)


def sqrt_exhaustive(a: int, p: int) -> int | None:
    """Slow search over all residues; the oracle for :func:`tonelli_shanks`."""
    a %= p
    for r in range(p // 2 + 1):
        if r * r % p == a:
            return r
    return None


@dataclass(frozen=True)
class FieldCtx:
    """The prime field F_p together with the non-residue that builds F_{p^2}."""

    p: int
    ext_nonresidue: int = field(default=0)

    def __post_init__(self):
        p = self.p
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        if not is_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        if self.ext_nonresidue == 0:
            object.__setattr__(self, "ext_nonresidue", _smallest_nonresidue(p))
        elif legendre(self.ext_nonresidue, p) != -1:
            raise ValueError(f"{self.ext_nonresidue} is a square mod {p}")

    def __call__(self, a0: int, a1: int = 0) -> "FieldScalar":
        return FieldScalar(self, a0, a1)

    @property
    def zero(self) -> "FieldScalar":
        return FieldScalar(self, 0)

    @property
    def one(self) -> "FieldScalar":
        return FieldScalar(self, 1)

    @property
    def omega(self) -> "FieldScalar":
        return FieldScalar(self, 0, 1)

    def elements(self):
        """All elements of the base field in increasing order."""
        return [FieldScalar(self, a) for a in range(self.p)]

    def ext_elements(self):
        """All elements of F_{p^2}, base field first."""
        return [FieldScalar(self, a0, a1) for a1 in range(self.p) for a0 in range(self.p)]


@lru_cache(maxsize=None)
def field_ctx(p: int) -> FieldCtx:
    return FieldCtx(p)


class FieldScalar:
    """An element of F_p or F_{p^2}. Immutable and hashable."""

    __slots__ = ("ctx", "a0", "a1")

    def __init__(self, ctx: FieldCtx, a0: int, a1: int = 0):
        p = ctx.p
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "a0", a0 % p)
        object.__setattr__(self, "a1", a1 % p)

    def __setattr__(self, name, value):
        raise AttributeError("FieldScalar is immutable")

    def _coerce(self, other) -> "FieldScalar":
        if isinstance(other, FieldScalar):
            if other.ctx.p != self.ctx.p:
                raise ValueError("mixed field contexts")
            return other
        if isinstance(other, int):
            return FieldScalar(self.ctx, other)
        return NotImplemented

    @property
    def is_base(self) -> bool:
        return self.a1 == 0

    def __bool__(self) -> bool:
        return bool(self.a0 or self.a1)

    def __int__(self) -> int:
        if self.a1:
            raise ValueError("not a base-field element")
        return self.a0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            p = self.ctx.p
            return self.a1 == 0 and self.a0 == other % p
        if isinstance(other, FieldScalar):
            return (self.ctx.p, self.a0, self.a1) == (other.ctx.p, other.a0, other.a1)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx.p, self.a0, self.a1))

    def __lt__(self, other: "FieldScalar") -> bool:
        return (self.a1, self.a0) < (other.a1, other.a0)

    def __repr__(self) -> str:
        if self.a1 == 0:
            return f"{self.a0}"
        return f"({self.a0}+{self.a1}w)"

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldScalar(self.ctx, self.a0 + o.a0, self.a1 + o.a1)

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar(self.ctx, -self.a0, -self.a1)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldScalar(self.ctx, self.a0 - o.a0, self.a1 - o.a1)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.a1 == 0 and o.a1 == 0:
            return FieldScalar(self.ctx, self.a0 * o.a0)
        n = self.ctx.ext_nonresidue
        return FieldScalar(
            self.ctx,
            self.a0 * o.a0 + n * self.a1 * o.a1,
            self.a0 * o.a1 + self.a1 * o.a0,
        )

    __rmul__ = __mul__

    def norm(self) -> int:
        """Field norm down to F_p: a0^2 - n*a1^2."""
        p = self.ctx.p
        return (self.a0 * self.a0 - self.ctx.ext_nonresidue * self.a1 * self.a1) % p

    def inverse(self) -> "FieldScalar":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        p = self.ctx.p
        ninv = pow(self.norm(), p - 2, p)
        return FieldScalar(self.ctx, self.a0 * ninv, -self.a1 * ninv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = FieldScalar(self.ctx, 1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def square(self) -> "FieldScalar":
        return self * self


def quadratic_character(a: FieldScalar | int, ctx: FieldCtx | None = None) -> int:
    """Return 0, 1 or -1 for a base-field element."""
    if isinstance(a, FieldScalar):
        if not a.is_base:
            raise ValueError("quadratic character is defined on the base field")
        return legendre(a.a0, a.ctx.p)
    if ctx is None:
        raise ValueError("integer input needs a field context")
    return legendre(a, ctx.p)


def sqrt_mod(a: FieldScalar) -> tuple[FieldScalar | None, FieldScalar]:
    """Square roots of a base-field element.

    Returns ``(base_root, ext_root)``. ``base_root`` is None when ``a`` is a
    non-residue. ``ext_root`` always squares to ``a``; for residues it equals
    the base root, otherwise it has the form ``c*w`` with canonical ``c``.
    """
    if not a.is_base:
        raise ValueError("sqrt_mod expects a base-field element")
    ctx, p = a.ctx, a.ctx.p
    chi = legendre(a.a0, p)
    if chi >= 0:
        r = FieldScalar(ctx, tonelli_shanks(a.a0, p))
        return r, r
    # a / n is a residue because both a and n are non-residues
    c = tonelli_shanks(a.a0 * pow(ctx.ext_nonresidue, p - 2, p), p)
    return None, FieldScalar(ctx, 0, c)
