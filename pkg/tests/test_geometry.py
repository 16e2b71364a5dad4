from itertools import permutations, product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symruns.geometry import (
    contains_origin_many,
    orient,
    origin_sign_vectors,
    simplex_contains_origin,
    simplex_contains_origin_k,
)

coord = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
point = st.tuples(coord, coord)
small_int = st.integers(-4, 4)
int_point = st.tuples(small_int, small_int)


@pytest.mark.parametrize(
    "a, b, c, expected",
    [
        ((0, 0), (1, 0), (0, 1), 1),
        ((0, 0), (0, 1), (1, 0), -1),
        ((0, 0), (1, 1), (2, 2), 0),
    ],
)
def test_orient(a, b, c, expected):
    assert orient(a, b, c) == expected


@pytest.mark.parametrize(
    "a, b, c, expected",
    [
        ((1, 0), (-1, 1), (-1, -1), True),
        ((1, 1), (2, 1), (1, 2), False),
        ((1, 0), (-1, 0), (0, 1), True),  # origin on an edge
        ((1, 0), (2, 0), (3, 0), False),  # flat, one side of the origin
        ((1, 0), (-2, 0), (3, 0), True),  # flat, straddling the origin
        ((0, 0), (0, 0), (0, 0), True),
        ((0, 0), (1, 1), (2, 3), True),  # origin is a vertex
    ],
)
def test_simplex_contains_origin_cases(a, b, c, expected):
    assert simplex_contains_origin(a, b, c) is expected


@given(point, point, point)
def test_containment_vertex_permutation_invariant(a, b, c):
    results = {simplex_contains_origin(*p) for p in permutations((a, b, c))}
    assert len(results) == 1


@given(point, point, point)
def test_containment_negation_invariant(a, b, c):
    neg = [(-p[0], -p[1]) for p in (a, b, c)]
    assert simplex_contains_origin(a, b, c) == simplex_contains_origin(*neg)


@given(int_point, int_point, int_point)
def test_containment_matches_barycentric_oracle_on_integers(a, b, c):
    # integer coordinates make the floating cross products exact
    assert simplex_contains_origin(a, b, c) == simplex_contains_origin_k([a, b, c])


def test_vectorised_matches_scalar(rng):
    pts = rng.integers(-3, 4, size=(3, 2000, 2)).astype(float)
    got = contains_origin_many(*pts)
    want = [simplex_contains_origin(pts[0, i], pts[1, i], pts[2, i]) for i in range(pts.shape[1])]
    assert got.tolist() == want


def test_sign_vectors_generic_triple():
    out = origin_sign_vectors((1, 0), (0, 1), (-1, -2))
    assert len(out) == 2
    assert tuple(-s for s in out[0]) == out[1]


def test_sign_vectors_degenerate_triple_enumerated():
    # two points on one line through the origin
    out = origin_sign_vectors((1, 0), (2, 0), (0, 1))
    assert len(out) > 2


@pytest.mark.parametrize(
    "vertices, expected",
    [
        ([[1.0], [-1.0]], True),
        ([[1.0], [2.0]], False),
        ([[0.0], [3.0]], True),
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]], True),
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], False),
        ([[1, 0, 0], [-1, 0, 0], [2, 0, 0], [0, 5, 0]], True),  # singular, origin on an edge
        ([[1, 1, 0], [2, 1, 0], [1, 2, 0], [3, 3, 0]], False),  # singular, origin off the plane hull
    ],
)
def test_simplex_contains_origin_k(vertices, expected):
    assert simplex_contains_origin_k(vertices) is expected


def test_simplex_contains_origin_k_rejects_bad_shape():
    with pytest.raises(ValueError):
        simplex_contains_origin_k([[1, 0], [0, 1]])


@settings(max_examples=200)
@given(st.lists(st.tuples(coord, coord, coord), min_size=4, max_size=4))
def test_k3_negation_invariant(verts):
    v = np.array(verts)
    assert simplex_contains_origin_k(v) == simplex_contains_origin_k(-v)


def test_k3_exactly_two_sign_vectors_for_generic_points(rng):
    for _ in range(50):
        v = rng.standard_normal((4, 3))
        hits = [s for s in product((1, -1), repeat=4) if simplex_contains_origin_k(v * np.array(s)[:, None])]
        assert len(hits) == 2
        assert tuple(-x for x in hits[0]) == hits[1]
