import random

from hypothesis import given, settings, strategies as st

from ffplane.ffield import field_ctx
from ffplane.projective import ProjLine, ProjMap, ProjPlane, ProjPoint, null_space, rank, to_arrays, zero_products


def vec(F, rng, ext=False):
    while True:
        v = [F(rng.randrange(F.p), rng.randrange(F.p) if ext else 0) for _ in range(4)]
        if any(v):
            return v


def test_points_are_scale_invariant():
    F = field_ctx(7)
    assert ProjPoint.make([F(2), F(4), F(0), F(6)]) == ProjPoint.make([F(1), F(2), F(0), F(3)])


def test_line_holds_p_plus_one_points():
    F = field_ctx(5)
    line = ProjLine.through(ProjPoint.make([F(1), F(0), F(0), F(0)]), ProjPoint.make([F(0), F(1), F(1), F(0)]))
    pts = line.points(F)
    assert len(set(pts)) == 6 and all(line.contains(X) for X in pts)
    assert len(set(line.points(F, ext=True))) == 26


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([5, 7, 13]), st.integers(0, 2**32), st.booleans())
def test_meet_and_join_agree(p, seed, ext):
    F = field_ctx(p)
    rng = random.Random(seed)
    h1, h2 = ProjPlane.make(vec(F, rng, ext)), ProjPlane.make(vec(F, rng, ext))
    if h1 == h2:
        return
    line = ProjLine.meet(h1, h2)
    assert line.inside(h1) and line.inside(h2)
    a, b = (ProjPoint.make(r) for r in line.basis)
    assert ProjLine.through(a, b) == line


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([5, 7, 13]), st.integers(0, 2**32))
def test_vectorised_products_match_scalar(p, seed):
    F = field_ctx(p)
    rng = random.Random(seed)
    pts = [ProjPoint.make(vec(F, rng, True)) for _ in range(6)]
    planes = [ProjPlane.make(vec(F, rng, True)) for _ in range(6)]
    m = zero_products(to_arrays([X.coords for X in pts], p), to_arrays([h.coeffs for h in planes], p), F)
    for i, X in enumerate(pts):
        for j, h in enumerate(planes):
            assert m[i, j] == h.contains(X)


def test_null_space_and_rank():
    F = field_ctx(7)
    rows = [[F(1), F(2), F(3), F(4)], [F(0), F(1), F(0), F(5)]]
    ns = null_space(rows)
    assert len(ns) == 2 and rank(rows) == 2
    for v in ns:
        assert all(sum((a * b for a, b in zip(r, v)), F.zero) == 0 for r in rows)


def test_map_plane_image():
    F = field_ctx(7)
    perm = ProjMap.make([[F(int(i == (j + 1) % 4)) for j in range(4)] for i in range(4)])
    inv = perm.transpose()
    h = ProjPlane.make([F(1), F(0), F(0), F(0)])
    img = perm.plane_image(h, inv)
    X = ProjPoint.make([F(0), F(1), F(2), F(3)])
    assert h.contains(X) and img.contains(perm(X))
    assert (perm @ inv).is_scalar()
