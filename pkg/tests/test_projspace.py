import pytest
from hypothesis import given, settings, strategies as st

from pglinset.gf import build_tower
from pglinset.projspace import (apply, apply_sub, collineation, compose, det, enumerate_points, frob_point,
                                generators, hyperplane, identity, inverse, invert, is_rational, join,
                                matmul, meet, normalize, num_points, power, rank, same_projective_map,
                                sigma_hat, solve, span, subspace)


@pytest.fixture(scope="module")
def F():
    return build_tower(3, 1, 3)


def vec(F, draw, n):
    v = [draw(st.integers(0, F.order - 1)) for _ in range(n)]
    if not any(v):
        v[0] = 1
    return tuple(v)


def test_span_examples(F):
    P = (1, 5, 7)
    assert span(F, [P]).dim == 0
    assert span(F, [P, P]).dim == 0
    assert span(F, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]).dim == 2


def test_meet_examples(F):
    A = span(F, [(1, 0, 0), (0, 1, 0)])
    B = span(F, [(1, 0, 0)])
    assert meet(F, B, A) == B
    assert meet(F, span(F, [(1, 0, 0)]), span(F, [(0, 1, 0)])).is_empty
    H1 = hyperplane(F, (1, 0, 0, 0))
    H2 = hyperplane(F, (0, 1, 0, 0))
    assert meet(F, H1, H2).dim == 1


def test_point_counts():
    G = build_tower(3, 1, 3)
    line = subspace(G, [(1, 0), (0, 1)], order=3)
    assert len(list(line.points(G))) == 4
    plane = subspace(G, identity(3), order=3)
    assert len(list(plane.points(G))) == 13
    H = build_tower(2, 2, 3)
    plane4 = subspace(H, identity(3), order=4)
    pts = list(plane4.points(H))
    assert len(pts) == 21 == len(set(pts))
    assert len(list(enumerate_points(3, 4))) == num_points(3, 4) == 21


def test_sigma_hat_example(F):
    alpha = 3  # the class of v, a root of the defining cubic
    assert all(F.pow(alpha, d) != 1 for d in (1, 2, 13))
    s = sigma_hat(F, 1)
    P = (1, alpha, F.pow(alpha, 2))
    assert apply(F, s, P) == (1, F.pow(alpha, 3), F.pow(alpha, 6))
    assert apply(F, s, (1, 2, 0)) == (1, 2, 0)


def test_sigma_hat_order(F):
    for nu in generators(F):
        s = sigma_hat(F, nu)
        assert same_projective_map(F, power(F, s, F.t), collineation(F, identity(3)))
        assert not same_projective_map(F, s, collineation(F, identity(3)))
    with pytest.raises(ValueError):
        sigma_hat(build_tower(3, 1, 4), 2)


def test_identity_fixes_points(F):
    c = collineation(F, identity(3))
    for P in list(enumerate_points(3, F.order))[:200]:
        assert apply(F, c, P) == P


def test_singular_matrix_rejected(F):
    with pytest.raises(ValueError):
        collineation(F, [(1, 1, 0), (1, 1, 0), (0, 0, 1)])


@settings(max_examples=60)
@given(data=st.data())
def test_matrix_inverse(F, data):
    A = [vec(F, data.draw, 3) for _ in range(3)]
    if det(F, A) == 0:
        assert rank(F, A) < 3
        return
    assert matmul(F, A, inverse(F, A)) == identity(3)
    b = vec(F, data.draw, 3)
    x = solve(F, A, b)
    assert tuple(sum_(F, [F.mul(a, y) for a, y in zip(row, x)]) for row in A) == b


def sum_(F, xs):
    s = 0
    for x in xs:
        s = F.add(s, x)
    return s


@settings(max_examples=60)
@given(data=st.data())
def test_normalize_projective(F, data):
    v = vec(F, data.draw, 3)
    c = data.draw(st.integers(1, F.order - 1))
    assert normalize(F, v) == normalize(F, tuple(F.mul(c, x) for x in v))


@settings(max_examples=40)
@given(data=st.data())
def test_dimension_formula(F, data):
    A = span(F, [vec(F, data.draw, 4) for _ in range(data.draw(st.integers(1, 3)))])
    B = span(F, [vec(F, data.draw, 4) for _ in range(data.draw(st.integers(1, 3)))])
    M = meet(F, A, B)
    J = join(F, A, B)
    assert (A.dim + 1) + (B.dim + 1) == (J.dim + 1) + (M.dim + 1)
    assert A.contains_subspace(F, M) and J.contains_subspace(F, A)


@settings(max_examples=30)
@given(data=st.data())
def test_collineation_group_laws(F, data):
    A = [vec(F, data.draw, 3) for _ in range(3)]
    if det(F, A) == 0:
        return
    c = collineation(F, A, data.draw(st.integers(0, 2)))
    d = compose(F, c, sigma_hat(F, 1))
    P = vec(F, data.draw, 3)
    assert apply(F, d, P) == apply(F, c, apply(F, sigma_hat(F, 1), P))
    assert apply(F, invert(F, c), apply(F, c, P)) == normalize(F, P)
    S = span(F, [P, vec(F, data.draw, 3)])
    img = apply_sub(F, c, S)
    assert img.dim == S.dim
    assert all(img.contains(F, apply(F, c, Q)) for Q in S.points(F))


def test_frob_point_matches_sigma_hat(F):
    for P in list(enumerate_points(3, F.order))[::97]:
        assert normalize(F, frob_point(F, P, 2)) == apply(F, sigma_hat(F, 2), P)


def test_rational_points(F):
    assert is_rational((1, 2, 0), 3)
    assert not is_rational((1, 3, 0), 3)
