"""Splitting the isosceles count along heavy and light bisectors.

Run: python3 demos/decomposition_walkthrough.py
"""

from ffplane.gen import GeneratorSpec, generate
from ffplane.report import failures
from ffplane.structure import claim_t2_pipeline, prune_iterate

A = generate(GeneratorSpec("union", 31, params={"parts": [
    {"kind": "concentric_circles", "seed": 1, "params": {"circles": 2, "per_circle": 28, "center": (5, 5)}},
    {"kind": "uniform_random", "size": 40, "seed": 2},
]}))
print(f"|A| = {len(A)} at p = {A.p}: two rich circles about (5, 5) plus scattered points")

rep = claim_t2_pipeline(A, restricted=False)
q = rep.quantities
print(f"  T* = {q['T_star']}, |A|^3/p = {float(len(A) ** 3 / A.p):.1f}")
print(f"  rich curves {q['rich_curves']}, heavy centres {q['C1']}, heavy directions {q['V1']}")
print(f"  bisectors: {q['L1']} heavy, {q['L2']} light")
print(f"  T1_bal = {float(q['T1_bal']):.1f}, T2_bal = {float(q['T2_bal']):.1f}")
print(f"  B2* = {q['B2_star']} <= sum I'_r + zero-length term = {q['sum_I_prime'] + q['zero_length_term']}")
print(f"  {len(rep.checks)} checks, {len(failures(rep.checks))} failing")

res = prune_iterate(A)
print(f"\npruning removes {len(res.removed)} curves: {res.removed}; {len(res.pruned)} points remain")
