"""Counting mirror-symmetric segment pairs as point-plane incidences.

For each distance r, pairs of segments of length r that are reflections of one
another in some line are counted twice: by trying every axis, and as
incidences between kappa-images of motions and planes in FP^3.

Run: python3 demos/mirror_pairs_as_incidences.py
"""

from ffplane.gen import GeneratorSpec, generate
from ffplane.kinematic import axial_incidence_count
from ffplane.stats import segment_classes

for p, n, seed in [(7, 20, 1), (11, 15, 2), (13, 12, 3)]:
    A = generate(GeneratorSpec("uniform_random", p, n, seed=seed))
    print(f"p = {p}, |A| = {n}")
    for r, S in sorted(segment_classes(A).items()):
        if not r:
            continue
        res = axial_incidence_count(S, p)
        field = f"F_{p * p}" if res.uses_extension else f"F_{p}"
        print(f"  r = {r:2d}: |S_r| = {res.segments:3d}, axis pairs {res.oracle:4d}, "
              f"incidences {res.pipeline:4d}, axis over {field}")
