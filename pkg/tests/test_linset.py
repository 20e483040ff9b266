import random

import pytest
from hypothesis import given, settings, strategies as st

from pglinset.fieldred import blowup_B
from pglinset.gf import HypothesisError, build_tower, theta
from pglinset.linset import (ProjectionConfig, axis_coords, condition_iii, config_from_point, fixing_generator,
                             imaginary_conditions, imaginary_points, iota, is_imaginary, is_pseudoregulus,
                             kappa, meets_standard_subgeometry, norm_one_pseudoregulus, normal_form_config,
                             project, project_by_meet, project_map, projection_witness,
                             projectivity_through, apply2, rotation_frobenius, splash,
                             splash_dual_check, standard_pseudoregulus, standard_subgeometry,
                             subgeometry_from_matrix, transversal_pairs, verify_characterization,
                             verify_splash)
from pglinset.projspace import (Subspace, apply, compose, enumerate_points, frob_point, identity, invert,
                                normalize, same_projective_map, sigma_hat, span)


def test_standard_and_norm_one_sets_agree(F33, F43, F34):
    for F in (F33, F43, F34):
        assert standard_pseudoregulus(F) == norm_one_pseudoregulus(F)
        assert len(norm_one_pseudoregulus(F)) == theta(F.t - 1, F.q)


def test_empty_center_gives_sigma(F33):
    sigma = standard_subgeometry(F33)
    cfg = ProjectionConfig(sigma, Subspace((), 3, F33.order), tuple(identity(3)))
    assert set(project_map(F33, cfg).values()) == set(sigma.points(F33))


def test_projection_matches_literal_meet(F33):
    P = next(imaginary_points(F33))
    cfg = config_from_point(F33, P)
    for Q, img in project_map(F33, cfg).items():
        assert axis_coords(F33, cfg, project_by_meet(F33, cfg, Q)) == img


def test_projection_is_linear_set_of_rank_t(F33):
    P = next(imaginary_points(F33))
    cfg = config_from_point(F33, P)
    S, _ = projection_witness(F33, cfg)
    L = blowup_B(F33, S)
    assert L.rank == 3 and L.scattered
    assert set(L.points) == project(F33, cfg)


def test_imaginary_examples(F33):
    assert not is_imaginary(F33, (1, 2, 0))
    alpha = 3
    P = (1, alpha, F33.pow(alpha, 2))
    assert is_imaginary(F33, P)
    with pytest.raises(ValueError):
        is_imaginary(F33, (1, 3))


def test_imaginary_count_and_conditions(F33):
    pts = list(imaginary_points(F33))
    # PG(2, 27) minus points on lines spanned over GF(3): 757 - 13*28 + ... counted directly
    assert len(pts) == 432
    for P in list(enumerate_points(3, F33.order))[::13]:
        a, b, c = imaginary_conditions(F33, P)
        assert a == b == c


def test_subline_is_not_pseudoregulus(F33):
    subline = {(1, x) for x in range(3)} | {(0, 1)}
    assert is_pseudoregulus(F33, subline) is None


def test_pseudoregulus_witness_and_unique_transversals(F33, F43):
    for F in (F33, F43):
        L = norm_one_pseudoregulus(F)
        w = is_pseudoregulus(F, L)
        assert set(w.transversals) == {(1, 0), (0, 1)}
        assert transversal_pairs(F, L) == {frozenset({(1, 0), (0, 1)})}


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_pseudoregulus_invariant_under_projectivity(F33, seed):
    rng = random.Random(seed)
    src = [(1, 0), (0, 1), (1, 1)]
    dst = set()
    while len(dst) < 3:
        dst.add(normalize(F33, (rng.randrange(27), rng.randrange(27))) if rng.random() < .9 else (0, 1))
        dst.discard(None)
    M = projectivity_through(F33, src, sorted(dst))
    L = {apply2(F33, M, P) for P in norm_one_pseudoregulus(F33)}
    w = is_pseudoregulus(F33, L)
    assert w is not None
    assert set(w.transversals) == {apply2(F33, M, (1, 0)), apply2(F33, M, (0, 1))}


def test_characterization_imaginary_center(F33):
    P = next(imaginary_points(F33))
    r = verify_characterization(F33, config_from_point(F33, P), check_uniqueness=True, with_phi=True)
    assert r["cond_i"] and r["cond_ii"] and r["cond_iii"]
    assert r["clause_b"] and r["unique_p_gamma"] and r["agree"]
    assert r["phi"]["norm_condition"] and r["phi"]["closed_form"] and r["phi"]["semilinear_condition"]


def test_characterization_non_imaginary_center(F33):
    rng = random.Random(7)
    pts = list(enumerate_points(3, F33.order))
    done = 0
    while done < 5:
        P = rng.choice(pts)
        if is_imaginary(F33, P) or meets_standard_subgeometry(F33, span(F33, [P])):
            continue
        r = verify_characterization(F33, config_from_point(F33, P))
        assert not (r["cond_i"] or r["cond_ii"] or r["cond_iii"]) and r["agree"]
        done += 1


def test_characterization_preconditions(F33):
    with pytest.raises(HypothesisError):
        F = build_tower(2, 1, 3)
        verify_characterization(F, config_from_point(F, (1, 2, 4)))
    with pytest.raises(HypothesisError):
        F = build_tower(3, 1, 2)
        cfg = ProjectionConfig(standard_subgeometry(F), Subspace((), 2, F.order), ((1, 0), (0, 1)))
        verify_characterization(F, cfg)
    with pytest.raises(ValueError):  # center inside the subgeometry
        verify_characterization(F33, config_from_point(F33, (1, 1, 0), axis_basis=((0, 1, 0), (0, 0, 1))))


@pytest.mark.parametrize("nu", [1, 3])
def test_normal_form_t4(F34, nu):
    cfg, P, M = normal_form_config(F34, nu)
    assert project(F34, cfg) == {normalize(F34, (x, F34.frob(x, nu))) for x in range(1, F34.order)}
    assert condition_iii(F34, cfg.center)[nu] == P
    r = verify_characterization(F34, cfg, with_phi=True)
    assert r["agree"] and r["cond_i"] and nu in r["nu"]
    assert r["phi"]["nu"] == nu and r["phi"]["closed_form"]


def test_uniqueness_two_generators_t5():
    F = build_tower(3, 1, 5)
    for nu in (1, 2):
        cfg, P, _ = normal_form_config(F, nu)
        r = verify_characterization(F, cfg)
        assert r["agree"] and r["cond_i"]
        assert condition_iii(F, cfg.center)[nu] == P


def test_kappa_maps_sigma_and_conjugates_frobenius(F33):
    P = next(imaginary_points(F33))
    k = kappa(F33, P)
    s = sigma_hat(F33, 1)
    tau = rotation_frobenius(F33, 1)
    # kappa sigma_hat kappa^-1 is the cyclic shift composed with Frobenius
    assert same_projective_map(F33, compose(F33, compose(F33, k, s), invert(F33, k)), tau)
    # kappa sends P and its conjugates to the coordinate points
    for j in range(3):
        e = tuple(1 if i == j else 0 for i in range(3))
        assert apply(F33, k, frob_point(F33, P, 1, j)) == e
    image = {apply(F33, k, Q) for Q in standard_subgeometry(F33).points(F33)}
    assert len(image) == 13 and all(apply(F33, tau, Q) == Q for Q in image)


def test_fixing_generator_fixes_sigma(F33):
    P = next(imaginary_points(F33))
    sigma = subgeometry_from_matrix(F33, invert(F33, kappa(F33, P)).matrix)
    g = fixing_generator(F33, sigma, 1)
    assert all(apply(F33, g, Q) == Q for Q in sigma.points(F33))


@pytest.mark.parametrize("nu", [1, 2])
def test_iota(F33, nu):
    _, _, M = normal_form_config(F33, nu)
    sig = subgeometry_from_matrix(F33, M)
    t = F33.t
    e = [tuple(1 if i == j else 0 for i in range(t)) for j in range(t)]
    cfg = ProjectionConfig(sig, span(F33, e[:t - 2]), (e[t - 2], e[t - 1]))
    images = {}
    for u in range(1, F33.order):
        P = iota(F33, u, nu)
        images.setdefault(P, set()).add(normalize(F33, (u,)))
        assert axis_coords(F33, cfg, P) == (1, F33.pow(u, F33.q ** nu - 1))
    assert len(images) == theta(t - 1, F33.q)
    assert set(images) == set(sig.points(F33))


def test_splash_examples(F33):
    P = next(imaginary_points(F33))
    basis = (P, frob_point(F33, P, 1))
    r = verify_splash(F33, basis)
    assert r["pseudoregulus"] and r["agree"] and r["transversals_ok"]
    assert splash_dual_check(F33, basis) == (True, True)
    assert len(splash(F33, basis)) == 13


def test_splash_rejects_secant_line(F33):
    with pytest.raises(ValueError):
        verify_splash(F33, ((1, 0, 0), (0, 1, 3)))
