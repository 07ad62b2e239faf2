"""Random sets have about |A|^3/p isosceles triangles; structured sets do not.

Run: python3 demos/isosceles_pseudorandom.py
"""

from fractions import Fraction

from ffplane.gen import GeneratorSpec, generate
from ffplane.stats import bisector_energy, distance_profile, triangle_counts

p = 101
print(f"p = {p}: T* p / |A|^3 for uniform random sets")
for n in (200, 1015, 3000):
    ratios = []
    for seed in range(3):
        A = generate(GeneratorSpec("uniform_random", p, n, seed=seed))
        ratios.append(Fraction(triangle_counts(A).t_star * p, n**3))
    print(f"  |A| = {n:4d}: " + ", ".join(f"{float(r):.4f}" for r in ratios))

print("\nstructured sets of 101 points at p = 101")
for spec in [GeneratorSpec("uniform_random", p, 101, seed=0),
             GeneratorSpec("on_line", p),
             GeneratorSpec("on_circle", p, params={"r2": 1}),
             GeneratorSpec("parallel_rich_lines", p, seed=0, params={"lines": 4, "per_line": 25})]:
    A = generate(spec)
    n = len(A)
    t = triangle_counts(A).t_star
    print(f"  {spec.kind:20s} |A| = {n:3d}  T* p/|A|^3 = {float(Fraction(t * p, n**3)):.3f}  "
          f"B* = {bisector_energy(A)[1]:8d}  pinned distances = {distance_profile(A).delta_pin_nonzero}")

iso = generate(GeneratorSpec("isotropic_line", 13))
print(f"\nall {len(iso)} points of an isotropic line at p = 13: distinct nonzero distances = "
      f"{distance_profile(iso).delta0}")
