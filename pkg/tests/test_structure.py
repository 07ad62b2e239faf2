import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ffplane.ffield import field_ctx
from ffplane.gen import GeneratorSpec, generate
from ffplane.plane import Circle, Line, PlanePoint, Segment, reflect, unit_circle
from ffplane.report import failures
from ffplane.stats import PointSet, bisector_table, count_isosceles_bruteforce, t_star
from ffplane.structure import (annulus_check, annulus_of, b2_star, bisector_energy_accounting, claim_t2_pipeline,
                               common_mirror_images, curve_counts, decompose, line_moment, prune_curve,
                               prune_curve_check, prune_iterate, rich_curves, strict_mirror_pairs)


def rand_set(p, n, seed):
    return generate(GeneratorSpec("uniform_random", p, n, seed=seed))


def test_curve_counts_oracle():
    A = rand_set(7, 12, 4)
    p = 7
    for (kind, a, b, c), cnt in curve_counts(A).items():
        if kind == "line":
            assert cnt == sum((a * x + b * y - c) % p == 0 for x, y in A.coords)
        else:
            assert c != 0
            assert cnt == sum(((x - a) ** 2 + (y - b) ** 2 - c) % p == 0 for x, y in A.coords)


def test_rich_family_single_line():
    p = 31
    line = [(x, 3) for x in range(20)]
    rng = random.Random(1)
    others = rng.sample([(x, y) for x in range(p) for y in range(p) if y != 3], 12)
    A = PointSet.from_ints(p, line + others)
    fam = rich_curves(A, k=16)
    assert list(fam.curves) == [("line", 0, 1, 3)]
    assert not failures(fam.checks())


def test_rich_family_circle_listed_iff_rich():
    p = 31
    F = field_ctx(p)
    circle = [q.as_ints() for q in unit_circle(F)]
    grid = [(x, y) for x in range(10, 16) for y in range(10, 16)]
    A = PointSet.from_ints(p, circle + grid)
    fam = rich_curves(A)
    n = len(A)
    listed = ("circle", 0, 0, 1) in fam.curves
    assert listed == (len(circle) ** 2 >= 8 * n)
    assert not failures(fam.checks())


def test_rich_family_empty_when_k_exceeds_size():
    A = rand_set(11, 9, 2)
    assert rich_curves(A, k=10).curves == {}


def test_prune_examples():
    p = 11
    A = PointSet.from_ints(p, [(x, 2 * x % p) for x in range(p)])
    B = prune_curve(A, ("line", 2, p - 1, 0))
    assert len(B) == 0 and t_star(B) == 0
    assert prune_curve_check(A, ("line", 2, p - 1, 0)).passed
    C = rand_set(p, 10, 3)
    empty_line = next(key for key in [("line", 1, 0, g) for g in range(p)]
                      if all(x != key[3] for x, _ in C.coords))
    assert t_star(prune_curve(C, empty_line)) == t_star(C)


def test_prune_square_plus_circle():
    p = 11
    F = field_ctx(p)
    square = [(0, 0), (1, 0), (0, 1), (1, 1)]
    circle = [q.as_ints() for q in unit_circle(F)]
    A = PointSet.from_ints(p, square + [c for c in circle if c not in square])
    key = ("circle", 0, 0, 1)
    B = prune_curve(A, key)
    assert count_isosceles_bruteforce(A).t_star == t_star(A)
    assert count_isosceles_bruteforce(B).t_star == t_star(B)
    chk = prune_curve_check(A, key)
    assert chk.passed and chk.lhs == t_star(A)


def test_prune_iterate_on_random_set_is_identity():
    A = rand_set(31, 40, 5)
    res = prune_iterate(A)
    assert res.removed == [] and len(res.pruned) == len(A)
    assert not failures(res.checks)


def test_prune_iterate_four_full_lines():
    p = 31
    pts = [(x, y) for y in (0, 5, 9, 20) for x in range(p)]
    A = PointSet.from_ints(p, pts)
    res = prune_iterate(A)
    assert sorted(res.removed) == sorted(("line", 0, 1, y) for y in (0, 5, 9, 20))
    assert len(res.pruned) == 0
    assert not failures(res.checks)


def test_decompose_random_set_has_no_heavy_part():
    A = rand_set(31, 30, 8)
    dec = decompose(A)
    assert dec.family.curves == {}
    assert len(dec.L1) == 0 and dec.T1_bal == 0
    assert not failures(dec.checks)


def test_decompose_concentric_circles_put_centre_lines_in_L1():
    A = generate(GeneratorSpec("concentric_circles", 31, seed=1, params={"circles": 3, "per_circle": 30,
                                                                        "center": (3, 4)}))
    dec = decompose(A)
    assert len(dec.family.curves) >= 3
    assert (3, 4) in dec.C1 and len(dec.L1) > 0
    for line in dec.lines(1):
        on_centre = line.contains(PlanePoint.of(field_ctx(31), 3, 4))
        assert on_centre or any((int(line.alpha) * vy - int(line.beta) * vx) % 31 == 0 for vx, vy in dec.V1)
    assert not failures(dec.checks)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([5, 7, 11, 13]), st.integers(0, 2**32), st.integers(2, 40))
def test_decompose_checks_hold(p, seed, n):
    A = rand_set(p, min(n, p * p), seed)
    dec = decompose(A)
    assert not failures(dec.checks)
    rep = b2_star(A, dec)
    assert not failures(rep.checks)


def test_b2_star_zero_without_light_lines():
    A = generate(GeneratorSpec("on_line", 11, params={"line": (0, 1, 0)}))
    dec = decompose(A)
    assert len(dec.L2) == 0
    assert b2_star(A, dec).b2_star == 0


def test_line_moment_oracle():
    p = 7
    A = rand_set(p, 15, 2)
    lines = [(1, 0, g) for g in range(p)] + [(a, 1, g) for a in range(p) for g in range(p)]
    expected = sum((Fraction(sum((a * x + b * y - g) % p == 0 for x, y in A.coords)) - Fraction(15, p)) ** 2
                   for a, b, g in lines)
    mom, total = line_moment(A)
    assert mom == expected == p * 15 - Fraction(15 * 15, p)
    assert total == (p + 1) * 15


def test_annulus_parallel_axes():
    F = field_ctx(11)
    y = Segment(PlanePoint.of(F, 1, 2), PlanePoint.of(F, 3, 7))
    ax1, ax2 = Line.make(1, 0, 4, F), Line.make(1, 0, 9, F)
    x = Segment(reflect(ax1, y.a), reflect(ax1, y.b))
    z = Segment(reflect(ax2, x.a), reflect(ax2, x.b))
    g1, g2 = annulus_of(y, z)
    assert isinstance(g1, Line) and isinstance(g2, Line)
    assert g1.contains(y.a) and g2.contains(y.b) and g1.contains(x.a)
    assert annulus_check(y, z)


def test_annulus_rotation():
    F = field_ctx(13)
    c = PlanePoint.of(F, 4, 4)
    y = Segment(PlanePoint.of(F, 1, 2), PlanePoint.of(F, 6, 0))
    ax1, ax2 = Line.make(1, -1, 0, F), Line.make(1, 2, 12, F)
    assert ax1.contains(c) and ax2.contains(c)
    x = Segment(reflect(ax1, y.a), reflect(ax1, y.b))
    z = Segment(reflect(ax2, x.a), reflect(ax2, x.b))
    g1, g2 = annulus_of(y, z)
    assert g1 == Circle(c, F(9 + 4)) and g1.contains(y.a) and g2.contains(y.b)
    assert annulus_check(y, z)


def test_annulus_preconditions():
    F = field_ctx(7)
    y = Segment(PlanePoint.of(F, 0, 0), PlanePoint.of(F, 1, 0))
    with pytest.raises(ValueError):
        annulus_of(y, y)
    with pytest.raises(ValueError):
        annulus_of(y, Segment(PlanePoint.of(F, 0, 0), PlanePoint.of(F, 1, 1)))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([7, 11, 13]), st.integers(0, 2**32))
def test_annulus_matches_brute_force(p, seed):
    F = field_ctx(p)
    rng = random.Random(seed)
    pts = [(x, y) for x in range(p) for y in range(p)]
    a, b = rng.sample(pts, 2)
    r = ((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2) % p
    if r == 0:
        return
    same = [(c, d) for c in pts for d in pts if ((c[0] - d[0]) ** 2 + (c[1] - d[1]) ** 2) % p == r]
    c, d = rng.choice(same)
    y = Segment(PlanePoint.of(F, *a), PlanePoint.of(F, *b))
    z = Segment(PlanePoint.of(F, *c), PlanePoint.of(F, *d))
    if y == z:
        return
    assert annulus_check(y, z)


def strict_pairs_oracle(S, p):
    """Pairs (x, y), x != y, related by reflection in a non-isotropic bisector of
    an endpoint pair, with no endpoint fixed."""
    from ffplane.kinematic import mirror_pairs

    out = 0
    for x, y in mirror_pairs(S, p):
        if x[0] != y[0] and x[1] != y[1]:
            out += 1
    return out


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([5, 7, 11, 13]), st.integers(0, 2**32), st.integers(3, 14))
def test_strict_mirror_pairs_oracle(p, seed, n):
    from ffplane.stats import segment_classes
    from ffplane.structure import _seg_array

    A = rand_set(p, n, seed)
    for r, S in segment_classes(A).items():
        if r:
            arr = _seg_array(S)
            assert strict_mirror_pairs(arr, arr, p) == strict_pairs_oracle(S, p)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([5, 7, 11, 13]), st.integers(0, 2**32), st.integers(2, 30))
def test_energy_accounting(p, seed, n):
    A = rand_set(p, min(n, p * p), seed)
    acc = bisector_energy_accounting(A, with_axial=n <= 12)
    assert not failures(acc.checks)


def test_light_line_chain_without_isotropic_vectors():
    A = rand_set(11, 30, 1)
    rep = claim_t2_pipeline(A, restricted=False)
    q = rep.quantities
    # only the diagonal pairs (a, a) have length zero
    assert q["zero_length_term"] == q["diagonal_term"] > 0
    assert not failures(rep.checks)


def test_light_line_chain_at_13():
    A = rand_set(13, 60, 2)
    rep = claim_t2_pipeline(A, restricted=False)
    assert not failures(rep.checks)
    q = rep.quantities
    assert q["B2_star"] <= int((bisector_table(A).b_star ** 2).sum())
    lo, hi = q["T2_bound_shape"]
    assert 0 < lo <= hi


def test_light_line_chain_restricted_reports():
    # a full circle is rich, and rotations about its centre give annuli made of it
    A = generate(GeneratorSpec("on_circle", 13, params={"center": (0, 0), "r2": 1}))
    rep = claim_t2_pipeline(A, restricted=True)
    assert not failures(rep.checks)
    assert rep.restricted
    with_lines = [d for d in rep.restricted.values() if d["restricted"] is not None]
    assert with_lines
    for d in with_lines:
        assert d["incidences"] >= d["restricted"]
