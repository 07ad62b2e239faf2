import pytest
from hypothesis import given, strategies as st

from ffplane.ffield import field_ctx
from ffplane.plane import (Line, PlanePoint, RigidMotion, Segment, all_lines, all_points, apply, bisector,
                           compose, distance, is_isotropic, reflect, rigid_motion_between, rotation,
                           rotation_about, translation, unit_circle)


def P(ctx, x, y):
    return PlanePoint.of(ctx, x, y)


def test_distance_examples():
    F7, F13 = field_ctx(7), field_ctx(13)
    assert int(distance(P(F7, 1, 2), P(F7, 4, 6))) == 4
    assert int(distance(P(F13, 3, 5), P(F13, 3, 5))) == 0
    assert int(distance(P(F13, 0, 0), P(F13, 1, 5))) == 0


def test_isotropy_examples():
    assert is_isotropic(P(field_ctx(13), 1, 5))
    assert not is_isotropic(P(field_ctx(7), 1, 5))
    assert is_isotropic(P(field_ctx(7), 0, 0))


def test_bisector_examples():
    F7, F13 = field_ctx(7), field_ctx(13)
    assert bisector(P(F7, 0, 0), P(F7, 2, 0)) == Line.make(1, 0, 1, F7)
    assert bisector(P(F7, 1, 0), P(F7, 0, 1)) == Line.make(1, -1, 0, F7)
    assert bisector(P(F13, 0, 0), P(F13, 1, 5)).is_isotropic
    with pytest.raises(ValueError):
        bisector(P(F7, 1, 1), P(F7, 1, 1))


def test_reflection_examples():
    F7 = field_ctx(7)
    assert reflect(Line.make(1, 0, 1, F7), P(F7, 0, 0)) == P(F7, 2, 0)
    assert reflect(Line.make(1, -1, 0, F7), P(F7, 1, 0)) == P(F7, 0, 1)
    line = Line.make(2, 3, 5, F7)
    for q in all_points(F7):
        if line.contains(q):
            assert reflect(line, q) == q


def test_reflection_in_isotropic_line_is_undefined():
    F13 = field_ctx(13)
    with pytest.raises(ValueError):
        reflect(Line.make(1, 5, 0, F13), P(F13, 1, 1))


def test_unit_circle():
    F7, F13 = field_ctx(7), field_ctx(13)
    c7 = unit_circle(F7)
    assert len(c7) == 8 and P(F7, 2, 2) in c7
    assert len(unit_circle(F13)) == 12
    for F in (F7, F13, field_ctx(31)):
        c = unit_circle(F)
        assert P(F, 1, 0) in c and P(F, -1, 0) in c


def test_rigid_motion_between_examples():
    F7 = field_ctx(7)
    o, e1, e2 = P(F7, 0, 0), P(F7, 1, 0), P(F7, 0, 1)
    g = rigid_motion_between(Segment(o, e1), Segment(o, e2))
    assert g.as_ints() == (0, 1, 0, 0)
    s = Segment(P(F7, 2, 3), P(F7, 5, 1))
    assert rigid_motion_between(s, s) == RigidMotion.identity(F7)
    assert rigid_motion_between(Segment(o, e1), Segment(o, P(F7, 1, 1))) is None


def test_apply_examples():
    F7 = field_ctx(7)
    assert apply(translation(F7, 3, 4), P(F7, 0, 0)) == P(F7, 3, 4)
    assert apply(rotation(F7, 0, 1), P(F7, 1, 0)) == P(F7, 0, 1)


def test_non_unit_rotation_rejected():
    with pytest.raises(ValueError):
        RigidMotion.of(field_ctx(7), 1, 1)


def test_all_lines_count():
    F = field_ctx(5)
    lines = all_lines(F)
    assert len(lines) == 30 and len(set(lines)) == 30
    pts = all_points(F)
    assert all(sum(line.contains(q) for q in pts) == 5 for line in lines)


@st.composite
def motions(draw, p):
    F = field_ctx(p)
    circle = unit_circle(F)
    c = draw(st.sampled_from(circle))
    s, t = draw(st.integers(0, p - 1)), draw(st.integers(0, p - 1))
    return RigidMotion(c.x, c.y, F(s), F(t))


@st.composite
def points(draw, p):
    return P(field_ctx(p), draw(st.integers(0, p - 1)), draw(st.integers(0, p - 1)))


@given(motions(13), motions(13), motions(13), points(13))
def test_group_laws(g, h, k, x):
    F = g.ctx
    assert compose(g, g.inverse()) == RigidMotion.identity(F)
    assert compose(compose(g, h), k) == compose(g, compose(h, k))
    assert (g @ h)(x) == g(h(x))


@given(motions(11), points(11), points(11))
def test_motions_preserve_distance(g, x, y):
    assert distance(g(x), g(y)) == distance(x, y)


@given(motions(13))
def test_fixed_point(g):
    c = g.fixed_point()
    if g.is_translation:
        assert c is None
    else:
        assert g(c) == c


@given(points(17), points(17))
def test_rigid_motion_between_maps_segment(x, y):
    F = x.ctx
    g = rotation_about(P(F, 3, 4), *unit_circle(F)[3].as_ints()) @ translation(F, 2, 9)
    s1, s2 = Segment(x, y), Segment(g(x), g(y))
    h = rigid_motion_between(s1, s2)
    if x == y or not distance(x, y):
        assert h is None
    else:
        assert h == g


@given(points(11), points(11), points(11))
def test_bisector_is_equidistant_locus(a, b, x):
    if a == b:
        return
    assert bisector(a, b).contains(x) == (distance(a, x) == distance(b, x))


@given(points(13), points(13))
def test_reflection_in_bisector_swaps_endpoints(a, b):
    if a == b:
        return
    line = bisector(a, b)
    if line.is_isotropic:
        return
    assert reflect(line, a) == b and reflect(line, b) == a
