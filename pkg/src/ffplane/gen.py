"""Seeded point-set generators and the CSV point format.

Randomness comes from SplitMix64 (Steele, Lea and Flood's 64-bit mixer):

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

all mod 2^64, with the state initialised to the seed. Bounded draws reject
values at or above the largest multiple of the bound below 2^64. Sampling k of
n cells is the first k steps of a Fisher-Yates shuffle, swapping position i
with i + below(n - i). Any implementation following these rules reproduces
the same sets.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .ffield import field_ctx
from .stats import PointSet

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            r = self.next()
            if r < limit:
                return r % n

    def sample(self, population: list, k: int) -> list:
        """k distinct items by a partial Fisher-Yates shuffle."""
        if k > len(population):
            raise ValueError("capacity exceeded: sample larger than population")
        pool = list(population)
        n = len(pool)
        for i in range(k):
            j = i + self.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


KINDS = (
    "grid",
    "uniform_random",
    "on_line",
    "on_circle",
    "isotropic_line",
    "parallel_rich_lines",
    "concentric_circles",
    "union",
)


@dataclass
class GeneratorSpec:
    """What to generate.

    Extra parameters by kind:
      grid: rows, cols, origin=(0, 0)
      on_line: line=(alpha, beta, gamma), default y = 0
      on_circle: center=(0, 0), r2=1
      isotropic_line: origin=(0, 0); points origin + a (1, i) with i^2 = -1
      parallel_rich_lines: lines, per_line, direction=(1, 0)
      concentric_circles: circles, per_circle, center=(0, 0)
      union: parts, a list of GeneratorSpec or dicts
    """

    kind: str
    p: int
    size: int | None = None
    seed: int = 0
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        field_ctx(self.p)


def _line_points(p: int, a: int, b: int, c: int) -> list[tuple[int, int]]:
    return [(x, y) for x in range(p) for y in range(p) if (a * x + b * y - c) % p == 0]


def _circle_points(p: int, cx: int, cy: int, r2: int) -> list[tuple[int, int]]:
    return [(x, y) for x in range(p) for y in range(p) if ((x - cx) ** 2 + (y - cy) ** 2 - r2) % p == 0]


def _take(rng: SplitMix64, cells: list, size: int | None) -> list:
    if size is None:
        return cells
    if size > len(cells):
        raise ValueError(f"capacity exceeded: {size} requested, {len(cells)} available")
    return rng.sample(cells, size)


def generate(spec: GeneratorSpec | dict) -> PointSet:
    if isinstance(spec, dict):
        spec = GeneratorSpec(**spec)
    p, q, rng = spec.p, spec.params, SplitMix64(spec.seed)
    kind = spec.kind
    if spec.size is not None and spec.size > p * p:
        raise ValueError(f"capacity exceeded: {spec.size} > p^2 = {p * p}")

    if kind == "grid":
        rows = q.get("rows")
        cols = q.get("cols")
        if rows is None or cols is None:
            import math

            side = math.isqrt(spec.size or 0)
            if side * side != (spec.size or 0):
                raise ValueError("grid needs rows and cols, or a square size")
            rows = cols = side
        if rows > p or cols > p:
            raise ValueError("capacity exceeded: grid side larger than p")
        ox, oy = q.get("origin", (0, 0))
        pts = [((ox + i) % p, (oy + j) % p) for i in range(rows) for j in range(cols)]
    elif kind == "uniform_random":
        if spec.size is None:
            raise ValueError("uniform_random needs a size")
        cells = [(x, y) for x in range(p) for y in range(p)]
        pts = rng.sample(cells, spec.size)
    elif kind == "on_line":
        a, b, c = q.get("line", (0, 1, 0))
        pts = _take(rng, _line_points(p, a, b, c), spec.size)
    elif kind == "on_circle":
        cx, cy = q.get("center", (0, 0))
        pts = _take(rng, _circle_points(p, cx, cy, q.get("r2", 1)), spec.size)
    elif kind == "isotropic_line":
        from ._fast import sqrt_minus_one

        i = sqrt_minus_one(p)
        if i is None:
            raise ValueError("no isotropic lines: -1 is not a square mod p")
        ox, oy = q.get("origin", (0, 0))
        cells = [((ox + a) % p, (oy + i * a) % p) for a in range(p)]
        pts = _take(rng, cells, spec.size)
    elif kind == "parallel_rich_lines":
        m, k = q["lines"], q["per_line"]
        dx, dy = q.get("direction", (1, 0))
        if m > p or k > p:
            raise ValueError("capacity exceeded: at most p lines of p points")
        # lines x0 + t (dx, dy) with base points along a transversal
        nx, ny = (-dy) % p, dx % p
        if (nx * dy - ny * dx) % p == 0:
            nx, ny = 1, 0
        offsets = rng.sample(list(range(p)), m)
        pts = []
        for o in offsets:
            ts = rng.sample(list(range(p)), k)
            pts.extend((((o * nx + t * dx) % p), ((o * ny + t * dy) % p)) for t in ts)
    elif kind == "concentric_circles":
        m, k = q["circles"], q["per_circle"]
        cx, cy = q.get("center", (0, 0))
        radii = [r for r in range(1, p) if len(_circle_points(p, cx, cy, r)) >= k]
        if m > len(radii):
            raise ValueError("capacity exceeded: not enough circles with that many points")
        pts = []
        for r in rng.sample(radii, m):
            pts.extend(rng.sample(_circle_points(p, cx, cy, r), k))
    else:  # union
        pts = []
        for part in q["parts"]:
            sub = part if isinstance(part, GeneratorSpec) else GeneratorSpec(**{"p": p, **part})
            if sub.p != p:
                raise ValueError("union parts must share p")
            pts.extend(generate(sub).coords)
    provenance = f"{kind}(p={p}, size={spec.size}, seed={spec.seed}, params={q})"
    return PointSet.from_ints(p, pts, provenance)


# CSV -------------------------------------------------------------------------------------


def to_csv(A: PointSet) -> str:
    buf = io.StringIO()
    buf.write(f"p={A.p}\n")
    for x, y in A.coords:
        buf.write(f"{x},{y}\n")
    return buf.getvalue()


def from_csv(text: str) -> PointSet:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("p="):
        raise ValueError("first line must be p=<modulus>")
    try:
        p = int(lines[0][2:])
        pairs = []
        for ln in lines[1:]:
            x, y = ln.split(",")
            pairs.append((int(x), int(y)))
    except ValueError as e:
        raise ValueError(f"malformed point file: {e}") from None
    for x, y in pairs:
        if not (0 <= x < p and 0 <= y < p):
            raise ValueError(f"coordinate out of range: {x},{y}")
    field_ctx(p)
    return PointSet.from_ints(p, pairs)


def write_csv(A: PointSet, path: str | Path) -> None:
    Path(path).write_text(to_csv(A))


def read_csv(path: str | Path) -> PointSet:
    return from_csv(Path(path).read_text())
