import pytest
from hypothesis import given, settings, strategies as st

from ffplane.gen import GeneratorSpec, SplitMix64, from_csv, generate, read_csv, to_csv, write_csv
from ffplane.stats import bisector_energy, distance_profile, t_star


def test_splitmix_reference_stream():
    # published outputs of SplitMix64 seeded with 0
    rng = SplitMix64(0)
    assert [rng.next() for _ in range(3)] == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


@given(st.integers(0, 2**64 - 1), st.integers(1, 10**6))
def test_bounded_draws_in_range(seed, n):
    rng = SplitMix64(seed)
    assert all(0 <= rng.below(n) < n for _ in range(5))


@given(st.integers(0, 2**32), st.integers(0, 30))
def test_sample_is_distinct_subset(seed, k):
    pool = list(range(30))
    out = SplitMix64(seed).sample(pool, k)
    assert len(out) == len(set(out)) == k and set(out) <= set(pool)


def test_frozen_uniform_sample():
    A = generate(GeneratorSpec("uniform_random", 7, 5, seed=42))
    B = generate({"kind": "uniform_random", "p": 7, "size": 5, "seed": 42})
    assert A.coords == B.coords
    assert A.coords != generate(GeneratorSpec("uniform_random", 7, 5, seed=43)).coords


def test_grid():
    A = generate(GeneratorSpec("grid", 7, params={"rows": 3, "cols": 3}))
    assert len(A) == 9 and (2, 2) in A.coords
    assert len(generate(GeneratorSpec("grid", 7, 16))) == 16


def test_isotropic_line():
    A = generate(GeneratorSpec("isotropic_line", 13, 5, seed=1))
    assert len(A) == 5
    assert all(y % 13 in (5 * x % 13, 8 * x % 13) for x, y in A.coords)
    prof = distance_profile(A)
    assert prof.delta0 == 0
    assert t_star(A) == 0
    with pytest.raises(ValueError):
        generate(GeneratorSpec("isotropic_line", 7, 3))


def test_on_line_and_circle():
    A = generate(GeneratorSpec("on_line", 11, params={"line": (1, 2, 3)}))
    assert len(A) == 11 and all((x + 2 * y - 3) % 11 == 0 for x, y in A.coords)
    C = generate(GeneratorSpec("on_circle", 7, params={"center": (1, 1), "r2": 2}))
    assert len(C) == 8 and all(((x - 1) ** 2 + (y - 1) ** 2) % 7 == 2 for x, y in C.coords)


def test_parallel_rich_lines_have_large_energy():
    A = generate(GeneratorSpec("parallel_rich_lines", 31, seed=0, params={"lines": 4, "per_line": 8}))
    assert len(A) == 32
    b_rich = bisector_energy(A)[1]
    randoms = [bisector_energy(generate(GeneratorSpec("uniform_random", 31, 32, seed=s)))[1] for s in range(20)]
    assert b_rich > max(randoms)


def test_concentric_circles_and_union():
    A = generate(GeneratorSpec("concentric_circles", 13, seed=2, params={"circles": 3, "per_circle": 6}))
    radii = {(x * x + y * y) % 13 for x, y in A.coords}
    assert len(A) == 18 and len(radii) == 3
    U = generate(GeneratorSpec("union", 13, params={"parts": [
        {"kind": "grid", "params": {"rows": 2, "cols": 2}},
        {"kind": "grid", "params": {"rows": 2, "cols": 2, "origin": (1, 1)}}]}))
    assert len(U) == 7  # (1, 1) is shared


@pytest.mark.parametrize("spec", [
    GeneratorSpec("uniform_random", 5, 26),
    GeneratorSpec("grid", 5, params={"rows": 6, "cols": 2}),
    GeneratorSpec("on_line", 7, 8),
    GeneratorSpec("parallel_rich_lines", 7, params={"lines": 8, "per_line": 2}),
    GeneratorSpec("concentric_circles", 7, params={"circles": 7, "per_circle": 8}),
])
def test_capacity_errors(spec):
    with pytest.raises(ValueError, match="capacity"):
        generate(spec)


def test_bad_specs():
    with pytest.raises(ValueError):
        GeneratorSpec("spiral", 7)
    with pytest.raises(ValueError):
        GeneratorSpec("grid", 8)


@settings(max_examples=30)
@given(st.sampled_from([5, 7, 13]), st.integers(0, 2**32), st.integers(1, 25))
def test_csv_round_trip(p, seed, n):
    A = generate(GeneratorSpec("uniform_random", p, n, seed=seed))
    assert from_csv(to_csv(A)).coords == A.coords


def test_csv_file_round_trip(tmp_path):
    A = generate(GeneratorSpec("grid", 7, 4))
    path = tmp_path / "a.csv"
    write_csv(A, path)
    assert read_csv(path).coords == A.coords


@pytest.mark.parametrize("text", ["", "7\n1,2\n", "p=7\n1;2\n", "p=7\n9,1\n", "p=9\n1,1\n"])
def test_csv_rejects_malformed(text):
    with pytest.raises(ValueError):
        from_csv(text)
