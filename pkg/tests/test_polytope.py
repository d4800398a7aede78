import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.spatial import ConvexHull

from conftest import corner_triangle, random_polytope, unit_cube, unit_square
from polyround.errors import (
    DegeneratePolytope,
    InfeasibleSystem,
    NearZeroRow,
    NotAFacet,
    NotEnoughVertices,
    TooManyConstraints,
    UnsupportedDimension,
    ValidationError,
)
from polyround.lp import maximize
from polyround.polytope import (
    HPolytope,
    diameter,
    enumerate_vertices,
    facet_geometry,
    facet_rows,
    facets,
    from_simplex,
    in_plane_basis,
    is_bounded,
    normalize,
    origin_interior,
    remove_redundant,
)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


# --- normalize --------------------------------------------------------------


def test_normalize_scaled_square():
    P = normalize([[2, 0], [0, 2], [-2, 0], [0, -2]], [2, 2, 2, 2])
    np.testing.assert_array_equal(P.normals, [[1, 0], [0, 1], [-1, 0], [0, -1]])
    np.testing.assert_array_equal(P.offsets, [1, 1, 1, 1])


def test_normalize_unit_rows_unchanged():
    A = np.array([[0.6, 0.8], [-1.0, 0.0], [0.0, -1.0]])
    b = np.array([3.0, -0.5, 7.25])
    P = normalize(A, b)
    np.testing.assert_allclose(P.normals, A, atol=1e-15, rtol=0)
    np.testing.assert_allclose(P.offsets, b, atol=1e-15, rtol=0)


def test_normalize_three_four_five():
    P = normalize([[3, 4]], [10])
    np.testing.assert_allclose(P.normals, [[0.6, 0.8]], atol=1e-16)
    assert P.offsets[0] == pytest.approx(2.0, abs=1e-15)


def test_near_zero_row():
    with pytest.raises(NearZeroRow) as exc:
        normalize([[1, 0], [1e-13, 0]], [1, 1])
    assert exc.value.index == 1


@pytest.mark.parametrize(
    "A, b",
    [
        ([[1, 0]], [1, 2]),
        ([[np.nan, 0]], [1]),
        ([[1, 0]], [np.inf]),
        (np.zeros((0, 2)), []),
    ],
)
def test_invalid_input(A, b):
    with pytest.raises(ValidationError):
        HPolytope(A, b)


@given(
    st.integers(1, 4).flatmap(
        lambda d: st.tuples(
            st.lists(st.lists(finite, min_size=d, max_size=d), min_size=1, max_size=6),
            st.lists(finite, min_size=6, max_size=6),
        )
    )
)
def test_normalize_idempotent(data):
    rows, offs = data
    A = np.array(rows)
    if np.any(np.linalg.norm(A, axis=1) <= 1e-3):
        return
    P = normalize(A, offs[: len(rows)])
    Q = normalize(P.normals, P.offsets)
    np.testing.assert_allclose(Q.normals, P.normals, atol=1e-15, rtol=0)
    np.testing.assert_allclose(Q.offsets, P.offsets, atol=1e-15 * (1 + np.abs(P.offsets).max()), rtol=0)
    assert np.all(np.abs(np.linalg.norm(P.normals, axis=1) - 1) <= 1e-12)


@given(st.integers(0, 2**32 - 1))
def test_normalize_preserves_feasible_set(seed):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(5, 3)) * rng.uniform(0.1, 10, size=(5, 1))
    b = rng.normal(size=5)
    P = normalize(A, b)
    x = rng.normal(size=(200, 3))
    margin = (b - x @ A.T) / np.linalg.norm(A, axis=1)
    clear = np.all(np.abs(margin) > 1e-9, axis=1)
    raw = np.all(x @ A.T <= b, axis=1)
    assert np.array_equal(raw[clear], np.all(x[clear] @ P.normals.T <= P.offsets, axis=1))


def test_immutable():
    P = unit_square()
    with pytest.raises(ValueError):
        P.normals[0, 0] = 5.0


# --- boundedness and interiority ---------------------------------------------


def test_bounded_examples():
    assert is_bounded(unit_square())
    assert not is_bounded(HPolytope([[1.0, 0.0]], [1.0]))
    from polyround.generators import regular_simplex_normals

    S = HPolytope(regular_simplex_normals(3), np.ones(4))
    assert is_bounded(S)
    assert len(enumerate_vertices(S)) == 4


def test_bounded_empty_raises():
    with pytest.raises(InfeasibleSystem):
        is_bounded(HPolytope([[1.0], [-1.0]], [-1.0, 0.0]))


def test_origin_interior_examples():
    assert origin_interior(unit_square())
    assert not origin_interior(unit_square().translate([1.0, 0.0]))  # b = (2, 1, 0, 1)
    assert not origin_interior(HPolytope(np.vstack([np.eye(2), -np.eye(2)]), [1, 1, -0.5, 1]))


@given(st.integers(0, 2**32 - 1), st.integers(2, 4))
def test_interior_point_iff_positive_offsets(seed, d):
    rng = np.random.default_rng(seed)
    P = random_polytope(rng, d, d + 2)
    V = enumerate_vertices(P).vertices
    w = rng.dirichlet(np.ones(len(V)))
    inner = w @ V
    if np.min(P.offsets - P.normals @ inner) <= 1e-6:
        return
    Q = P.translate(-inner)
    assert origin_interior(Q)
    assert np.all(Q.offsets > 0)
    # ball of radius min(b)/2 about the origin is inside
    r = 0.5 * Q.offsets.min()
    u = rng.normal(size=(200, d))
    u *= (r * rng.uniform(0, 1, size=(200, 1))) / np.linalg.norm(u, axis=1, keepdims=True)
    assert np.all(u @ Q.normals.T < Q.offsets)
    # a boundary point: maximize a random direction
    sol = maximize(rng.normal(size=d), P.normals, P.offsets)
    B = P.translate(-sol.point)
    assert not origin_interior(B)
    assert B.offsets.min() <= 1e-9


# --- vertices and diameter ---------------------------------------------------


def _as_set(V, digits=9):
    return {tuple(np.round(v, digits) + 0.0) for v in V}


def test_vertices_square_cube_triangle():
    assert _as_set(enumerate_vertices(unit_square()).vertices) == set(itertools.product([-1.0, 1.0], repeat=2))
    assert _as_set(enumerate_vertices(unit_cube(3)).vertices) == set(itertools.product([-1.0, 1.0], repeat=3))
    assert _as_set(enumerate_vertices(corner_triangle()).vertices) == {(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)}


def test_vertex_set_invariants():
    P = unit_cube(3)
    V = enumerate_vertices(P)
    for v, act in zip(V.vertices, V.active_sets):
        assert np.all(P.normals @ v <= P.offsets + 1e-9)
        assert len(act) >= 3
    dist = np.linalg.norm(V.vertices[:, None] - V.vertices[None], axis=-1)
    assert dist[np.triu_indices(len(V), 1)].min() > 1e-7


def test_enumeration_errors():
    with pytest.raises(TooManyConstraints):
        enumerate_vertices(unit_square(), cap=3)
    flat_line = HPolytope([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]], [1.0, 1.0, 0.0, 0.0])
    with pytest.raises(DegeneratePolytope):
        # a segment in R^2 has only two vertices
        enumerate_vertices(flat_line)


@given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.data())
def test_vertices_agree_with_lp_oracle(seed, d, data):
    rng = np.random.default_rng(seed)
    m = data.draw(st.integers(1, 12 - 2 * d))
    P = random_polytope(rng, d, m)
    V = enumerate_vertices(P)
    assert np.all(V.vertices @ P.normals.T <= P.offsets + 1e-9)
    for _ in range(10):
        sol = maximize(rng.normal(size=d), P.normals, P.offsets)
        gaps = np.linalg.norm(V.vertices - sol.point, axis=1)
        assert gaps.min() <= 1e-7


@given(st.integers(0, 2**32 - 1), st.integers(2, 4))
def test_hull_of_vertices_is_the_polytope(seed, d):
    rng = np.random.default_rng(seed)
    P = random_polytope(rng, d, 8 - d)
    Q = remove_redundant(P)
    hull = ConvexHull(enumerate_vertices(P).vertices)
    # every hull facet plane is one of the irredundant constraints
    rows = np.hstack([Q.normals, Q.offsets[:, None]])
    for eq in hull.equations:
        plane = np.r_[eq[:-1], -eq[-1]]
        assert np.min(np.abs(rows - plane).max(axis=1)) <= 1e-7
    assert len({tuple(np.round(e, 6)) for e in hull.equations}) == Q.num_constraints


def test_diameter_examples():
    for d in (1, 2, 3, 5):
        assert diameter(enumerate_vertices(unit_cube(d))) == pytest.approx(2 * np.sqrt(d), abs=1e-12)
    assert diameter(enumerate_vertices(unit_square())) == pytest.approx(2 * np.sqrt(2), abs=1e-12)
    assert diameter(enumerate_vertices(corner_triangle())) == pytest.approx(np.sqrt(2), abs=1e-12)
    with pytest.raises(NotEnoughVertices):
        diameter(np.zeros((1, 2)))


@given(st.integers(0, 2**32 - 1), st.integers(2, 4))
def test_diameter_bounds_sampled_pairs(seed, d):
    rng = np.random.default_rng(seed)
    P = random_polytope(rng, d, d + 3)
    diam = diameter(enumerate_vertices(P))
    x = rng.uniform(-3, 3, size=(4000, d))
    inside = x[np.all(x @ P.normals.T <= P.offsets, axis=1)]
    if len(inside) >= 2:
        pair = np.linalg.norm(inside[:, None] - inside[None], axis=-1).max()
        assert pair <= diam + 1e-12


# --- redundancy ----------------------------------------------------------------


def test_remove_redundant_examples():
    sq = unit_square()
    P = HPolytope(np.vstack([sq.normals, [[1.0, 0.0]]]), np.r_[sq.offsets, 5.0])
    assert remove_redundant(P) == sq
    from polyround.generators import regular_simplex_normals

    S = HPolytope(regular_simplex_normals(3), np.ones(4))
    assert remove_redundant(S) == S
    D = HPolytope(np.vstack([sq.normals[:2], sq.normals[1:]]), np.ones(5))  # row 1 twice
    assert facet_rows(D) == [0, 1, 3, 4]


def test_remove_redundant_weakly_redundant_row():
    # x + y <= 2 only touches the square at a vertex
    sq = unit_square()
    P = HPolytope(np.vstack([sq.normals, [[1.0, 1.0]]]), np.r_[sq.offsets, 2.0])
    assert remove_redundant(P) == sq


def test_remove_redundant_empty():
    with pytest.raises(InfeasibleSystem):
        remove_redundant(HPolytope([[1.0], [-1.0]], [-1.0, 0.0]))


# --- simplex conversion ----------------------------------------------------


def test_from_simplex_triangle():
    P = from_simplex([[0, 0], [1, 0], [0, 1]])
    assert _as_set(enumerate_vertices(P).vertices) == {(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)}
    # facet k is opposite vertex k with an outward normal
    np.testing.assert_allclose(P.normals[0], [np.sqrt(0.5), np.sqrt(0.5)], atol=1e-15)
    assert P.offsets[0] == pytest.approx(np.sqrt(0.5), abs=1e-15)


@given(st.integers(0, 2**32 - 1), st.integers(1, 5))
def test_from_simplex_contains_its_vertices(seed, d):
    rng = np.random.default_rng(seed)
    V = rng.normal(size=(d + 1, d))
    if abs(np.linalg.det(V[1:] - V[0])) < 1e-3:
        return
    P = from_simplex(V)
    slack = P.offsets[None, :] - V @ P.normals.T
    assert np.all(slack >= -1e-9)
    # vertex k is strictly inside facet k's half-space and tight on the others
    for k in range(d + 1):
        assert slack[k, k] > 1e-9
        assert np.all(np.abs(np.delete(slack[k], k)) <= 1e-9)


def test_from_simplex_shape_error():
    with pytest.raises(ValidationError):
        from_simplex([[0, 0], [1, 0]])


# --- facet geometry ------------------------------------------------------------


def test_facet_square():
    P = unit_square()
    F = facet_geometry(P, enumerate_vertices(P), 0)
    assert F.measure == pytest.approx(2.0, abs=1e-12)
    np.testing.assert_allclose(F.centroid, [1.0, 0.0], atol=1e-12)


def test_facet_cube():
    P = unit_cube(3)
    V = enumerate_vertices(P)
    for i in range(6):
        F = facet_geometry(P, V, i)
        assert F.measure == pytest.approx(4.0, abs=1e-12)
        np.testing.assert_allclose(F.centroid, P.normals[i], atol=1e-12)
    assert sum(F.measure for F in facets(P, V)) == pytest.approx(24.0, abs=1e-9)


def test_facet_hypotenuse():
    P = corner_triangle()
    F = facet_geometry(P, enumerate_vertices(P), 2)
    assert F.measure == pytest.approx(np.sqrt(2), abs=1e-12)
    np.testing.assert_allclose(F.centroid, [0.5, 0.5], atol=1e-12)


def test_facet_errors():
    P = unit_square()
    sq = np.vstack([P.normals, [[1.0, 1.0]]])
    Q = HPolytope(sq, np.r_[P.offsets, 2.0])  # weakly redundant row touches one vertex
    with pytest.raises(NotAFacet):
        facet_geometry(Q, enumerate_vertices(Q), 4)
    C4 = unit_cube(4)
    with pytest.raises(UnsupportedDimension):
        facet_geometry(C4, enumerate_vertices(C4), 0)


@given(st.integers(0, 2**32 - 1))
def test_facet_areas_match_hull_oracle(seed):
    rng = np.random.default_rng(seed)
    P = remove_redundant(random_polytope(rng, 3, 5))
    V = enumerate_vertices(P)
    total = sum(F.measure for F in facets(P, V))
    assert total == pytest.approx(ConvexHull(V.vertices).area, rel=1e-9)
    # closed surface: sum of area-weighted normals vanishes
    vec = sum(F.measure * P.normals[F.facet_index] for F in facets(P, V))
    np.testing.assert_allclose(vec, 0.0, atol=1e-9)


def test_in_plane_basis_orthonormal():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a = rng.normal(size=3)
        a /= np.linalg.norm(a)
        B = in_plane_basis(a)
        np.testing.assert_allclose(B @ B.T, np.eye(2), atol=1e-14)
        np.testing.assert_allclose(B @ a, 0.0, atol=1e-14)


def test_transforms():
    P = unit_square()
    T = P.translate([2.0, -1.0])
    assert T.contains([2.9, -1.9]) and not T.contains([0.0, 0.0])
    R = P.rotate(np.array([[0.0, -1.0], [1.0, 0.0]]))
    assert R.contains([1.0, 1.0])
    with pytest.raises(ValidationError):
        P.scale(0.0)
