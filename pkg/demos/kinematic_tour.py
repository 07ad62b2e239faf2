"""Rigid motions of F_p^2 as points of projective 3-space.

Run: python3 demos/kinematic_tour.py
"""

from ffplane.ffield import field_ctx
from ffplane.kinematic import census, choose_tau, kappa, kappa_inv, transporter, transporter_line
from ffplane.plane import PlanePoint, rotation, rotation_about, translation

F = field_ctx(7)

print("kappa sends each motion to a point of FP^3:")
for name, g in [("translation by (1, 2)", translation(F, 1, 2)), ("quarter turn", rotation(F, 0, 1))]:
    X = kappa(g)
    print(f"  {name:24s} -> {X.ints()}   back: {kappa_inv(X).as_ints()}")

c = census(F)
print(f"\n|SF2(F_7)| = {c.motions}; image {c.image} of {c.projective_points} points; "
      f"the {c.exceptional} missing points form X0^2 + X1^2 = 0")

x, y = PlanePoint.of(F, 0, 0), PlanePoint.of(F, 1, 0)
T = transporter(x, y)
line = transporter_line(x, y)
print(f"\nthe {len(T)} motions taking {x.as_ints()} to {y.as_ints()} all land on one projective line:",
      all(line.contains(kappa(g)) for g in T))

F5 = field_ctx(5)
G = [rotation_about(PlanePoint.of(F5, a, b), 0, 1) for a in range(5) for b in range(5)]
G.append(translation(F5, 0, 0))
tau = choose_tau(G, F5)
print(f"\nwhen every line of F_5^2 meets a rotation centre, the axis comes from F_25: {tau}")
