"""Acceptance criteria 1-11. Each test carries a ``criterion`` mark; the
terminal summary prints one PASS/FAIL line per criterion."""

import math
import random
import time
from fractions import Fraction

import pytest

from ffplane.clifford import CliffordAlgebraCtx, algebra_checks, unit_classes, verify_isomorphism
from ffplane.ffield import field_ctx
from ffplane.gen import GeneratorSpec, generate
from ffplane.incidence import (IncidenceSystem, incidence_count, incidence_count_oracle, restricted_incidence_count,
                               restricted_incidence_count_oracle, rudnev_ratio)
from ffplane.kinematic import (all_motions, axial_incidence_count, census, kappa, kappa_inv, left_map, random_motion,
                               right_map, transporter)
from ffplane.plane import PlanePoint
from ffplane.projective import ProjLine, ProjPlane, ProjPoint, null_space, rank
from ffplane.report import failures
from ffplane.stats import (PointSet, bisector_table, check_identities, count_isosceles_bruteforce,
                           count_isosceles_via_bisectors, distance_profile, segment_class_sizes, segment_classes,
                           triangle_counts)
from ffplane.structure import (b2_star, curve_counts, decompose, prune_curve_check, prune_iterate, rich_curves)

crit = pytest.mark.criterion


@crit(1, "kinematic census at p = 7 and p = 13")
def test_census():
    start = time.perf_counter()
    c7, c13 = census(field_ctx(7)), census(field_ctx(13))
    assert (c7.image, c7.projective_points, c7.exceptional) == (392, 400, 8)
    assert (c13.image, c13.exceptional) == (2028, 352)
    assert c7.image_is_complement and c13.image_is_complement
    assert time.perf_counter() - start < 10


@crit(2, "kappa round trip on SF2(F_7) and 10^4 elements at p = 101")
def test_round_trip():
    start = time.perf_counter()
    motions = all_motions(field_ctx(7))
    assert len(motions) == 392
    assert all(kappa_inv(kappa(g)) == g for g in motions)
    F = field_ctx(101)
    rng = random.Random(2)
    for _ in range(10_000):
        g = random_motion(F, rng)
        assert kappa_inv(kappa(g)) == g
    assert time.perf_counter() - start < 10


@crit(3, "left and right equivariance, 10^3 pairs at p = 7, 13, 31")
@pytest.mark.parametrize("p", [7, 13, 31])
def test_equivariance(p):
    F = field_ctx(p)
    rng = random.Random(p)
    for _ in range(1000):
        g, x = random_motion(F, rng), random_motion(F, rng)
        assert kappa(g @ x) == left_map(g)(kappa(x))
        assert kappa(x @ g) == right_map(g)(kappa(x))


@crit(4, "transporter images have projective rank 2 at p = 13")
def test_transporters():
    F = field_ctx(13)
    rng = random.Random(4)
    for _ in range(200):
        x = PlanePoint.of(F, rng.randrange(13), rng.randrange(13))
        y = PlanePoint.of(F, rng.randrange(13), rng.randrange(13))
        images = [kappa(g) for g in transporter(x, y)]
        assert len(set(images)) == 12
        assert rank([list(X.coords) for X in images]) == 2


def _identity_suite(A):
    tri = count_isosceles_bruteforce(A)
    assert tri.t_star == triangle_counts(A).t_star
    table = bisector_table(A)
    assert int((table.i_A * table.b_star).sum()) == tri.t_star
    checks = {c.name: c for c in check_identities(A, tri, table)}
    for name in ("sum of b* over lines", "pinned circle moment, exact", "pinned circle moment, upper form",
                 "isosceles count via bisectors"):
        assert checks[name].passed, checks[name]


@crit(5, "identity suite on 800 random sets and the worked 3- and 4-point examples")
def test_identity_suite():
    start = time.perf_counter()
    rng = random.Random(5)
    for p in (5, 7, 11, 13):
        for _ in range(200):
            n = rng.randint(1, min(40, p * p))
            _identity_suite(generate(GeneratorSpec("uniform_random", p, n, seed=rng.getrandbits(32))))
    assert time.perf_counter() - start < 60
    tri = PointSet.from_ints(7, [(0, 0), (1, 0), (0, 1)])
    assert count_isosceles_bruteforce(tri).t_star == 2
    assert count_isosceles_via_bisectors(tri) == 2
    square = PointSet.from_ints(7, [(0, 0), (1, 0), (0, 1), (1, 1)])
    brute = count_isosceles_bruteforce(square).t_star
    assert count_isosceles_via_bisectors(square) == brute
    # the stated value for the square; the brute-force enumeration gives 8
    assert brute == 12, f"square: brute-force T* = {brute}, stated value 12"


@crit(6, "mirror-pair count equals the kinematic incidence count on 50 sets")
def test_mirror_pairs_equal_incidences():
    extension_sets = 0
    for i in range(50):
        p = (7, 11, 13)[i % 3]
        # dense sets at p = 7 leave no admissible axis over F_7
        n = 19 + (i // 3) % 12 if p == 7 else 8 + (i * 7) % 23
        A = generate(GeneratorSpec("uniform_random", p, n, seed=1000 + i))
        used_extension = False
        for r, S in segment_classes(A).items():
            if r:
                res = axial_incidence_count(S, p)
                assert res.agree, (p, n, r, res.oracle, res.pipeline)
                used_extension |= res.uses_extension
        extension_sets += used_extension
    assert extension_sets >= 5


def _inequality_sets():
    sets = []
    rng = random.Random(7)
    for p in (5, 7, 11, 13, 31):
        for _ in range(8):
            sets.append(generate(GeneratorSpec("uniform_random", p, rng.randint(2, min(60, p * p)),
                                               seed=rng.getrandbits(32))))
    adversarial = [
        GeneratorSpec("grid", 11, params={"rows": 6, "cols": 6}),
        GeneratorSpec("grid", 31, params={"rows": 7, "cols": 8}),
        GeneratorSpec("on_line", 13),
        GeneratorSpec("on_circle", 13, params={"r2": 3}),
        GeneratorSpec("on_circle", 31, params={"r2": 1}),
        GeneratorSpec("isotropic_line", 13),
        GeneratorSpec("isotropic_line", 29, 12, seed=3),
        GeneratorSpec("parallel_rich_lines", 31, seed=1, params={"lines": 4, "per_line": 12}),
        GeneratorSpec("parallel_rich_lines", 13, seed=2, params={"lines": 3, "per_line": 13, "direction": (1, 5)}),
        GeneratorSpec("concentric_circles", 31, seed=4, params={"circles": 3, "per_circle": 25}),
        GeneratorSpec("concentric_circles", 13, seed=5, params={"circles": 4, "per_circle": 10}),
        GeneratorSpec("union", 13, params={"parts": [
            {"kind": "isotropic_line"},
            {"kind": "on_circle", "params": {"center": (2, 3), "r2": 5}},
            {"kind": "uniform_random", "size": 10, "seed": 9}]}),
        GeneratorSpec("union", 31, params={"parts": [
            {"kind": "on_line", "params": {"line": (1, 1, 0)}},
            {"kind": "on_circle", "params": {"r2": 2}, "size": 20, "seed": 1}]}),
    ]
    sets += [generate(s) for s in adversarial]
    return sets


@crit(7, "inequality suite on random and adversarial sets")
def test_inequality_suite():
    for A in _inequality_sets():
        n, p = len(A), A.p
        bad = failures(check_identities(A))
        assert not bad, (A.provenance, bad)
        sizes = segment_class_sizes(A)
        assert sizes.get(0, 0) <= 2 * p * n
        assert all(c * c <= 16 * n**3 for r, c in sizes.items() if r)
        counts = curve_counts(A)
        if counts:
            heaviest = max(counts, key=lambda k: (counts[k], k))
            assert prune_curve_check(A, heaviest).passed
        res = prune_iterate(A)
        assert not failures(res.checks), (A.provenance, failures(res.checks))
        k = math.isqrt(8 * n - 1) + 1
        for fam in (rich_curves(A), rich_curves(A, k=k, counts=counts)):
            assert fam.precondition
            assert not failures(fam.checks()), (A.provenance, failures(fam.checks()))
        dec = decompose(A)
        assert not failures(dec.checks), (A.provenance, failures(dec.checks))
        rep = b2_star(A, dec)
        assert not failures(rep.checks), (A.provenance, failures(rep.checks))
        assert rep.line_moment <= p * n


@crit(8, "Clifford algebra suite and group orders at p = 7")
def test_clifford_suite():
    start = time.perf_counter()
    F = field_ctx(7)
    alg = CliffordAlgebraCtx(F, -1)
    checks = algebra_checks(alg, sample_size=1000) + verify_isomorphism(alg, sample_size=1000)
    assert not failures(checks), failures(checks)
    for lam, order in ((-1, 392), (3, 392), (2, 294), (4, 294)):
        a = CliffordAlgebraCtx(F, lam)
        assert len(unit_classes(a)) == order
        assert not failures(verify_isomorphism(a, sample_size=100))
    assert time.perf_counter() - start < 30


@crit(9, "T* p / |A|^3 near 1 for random sets at p = 101")
def test_pseudorandom_ratio():
    start = time.perf_counter()
    for n, lo, hi in ((1015, Fraction(85, 100), Fraction(115, 100)), (3000, Fraction(92, 100), Fraction(108, 100))):
        passed = 0
        for seed in range(1, 6):
            A = generate(GeneratorSpec("uniform_random", 101, n, seed=seed))
            ratio = Fraction(triangle_counts(A).t_star * 101, n**3)
            passed += lo <= ratio <= hi
        assert passed >= 3, (n, passed)
    assert time.perf_counter() - start < 300


@crit(10, "pinned distances of random sets at p = 101; isotropic line at p = 13")
def test_pinned_distances():
    # 0.5 p is a regression threshold chosen here, not a derived constant
    for seed in range(1, 6):
        A = generate(GeneratorSpec("uniform_random", 101, 640, seed=seed))
        assert 2 * distance_profile(A).delta_pin_nonzero >= 101
    iso = generate(GeneratorSpec("isotropic_line", 13))
    assert distance_profile(iso).delta0 == 0


def _random_system(p, rng):
    F = field_ctx(p)

    def vec():
        while True:
            v = [F(rng.randrange(p)) for _ in range(4)]
            if any(v):
                return v

    points = [ProjPoint.make(vec()) for _ in range(rng.randint(1, 15))]
    planes = [ProjPlane.make(vec()) for _ in range(rng.randint(1, 15))]
    lines = []
    for _ in range(rng.randint(0, 4)):
        a, b = rng.choice(points), ProjPoint.make(vec())
        if a != b:
            line = ProjLine.through(a, b)
            lines.append(line)
            planes += [ProjPlane.make(h) for h in null_space([list(r) for r in line.basis])]
    return IncidenceSystem(points, planes, lines)


@crit(11, "incidence counts match definitional oracles on 100 systems")
def test_incidence_diagnostics():
    rng = random.Random(11)
    for i in range(100):
        sys = _random_system((5, 7, 11, 13)[i % 4], rng)
        assert incidence_count(sys) == incidence_count_oracle(sys)
        assert restricted_incidence_count(sys) == restricted_incidence_count_oracle(sys)
        rep = rudnev_ratio(sys).to_dict()
        assert rep["incidences"] == incidence_count(sys)
        if sys.lines:
            assert rep["restricted"] is not None and rep["mu"] is not None
