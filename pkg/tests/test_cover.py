"""Universal cover lifts, rotation numbers, and the parity representation."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2rotor import cover
from sl2rotor.core import (
    GroupElement,
    mat_inv,
    psl_dist,
    random_lie,
    rotation,
    sl2_exp,
)

J = np.array([[0.0, -1.0], [1.0, 0.0]])


def mixed_lift(seed: int) -> cover.LiftedElement:
    rng = np.random.default_rng(seed)
    kind = seed % 3
    if kind == 0:
        base = rotation(float(rng.uniform(0.1, np.pi - 0.1)))
    elif kind == 1:
        lam = float(np.exp(rng.uniform(0.2, 1.2)))
        base = np.diag([lam, 1.0 / lam])
    else:
        base = sl2_exp(random_lie(rng, 0.7))
    h = sl2_exp(random_lie(rng, 0.5))
    g = GroupElement(h @ base @ mat_inv(h))
    return cover.deck(cover.lift_of(g), int(rng.integers(-2, 3)))


# ---------------------------------------------------------------------------
# rot on pinned inputs


def test_rot_of_rotation_lift():
    for th in (0.2, 1.0, np.pi / 2, 2.9):
        r = cover.rot(cover.lift_of(GroupElement.rotation(th)))
        assert abs(r - th / np.pi) < 1e-12


def test_rot_is_integer_off_elliptic():
    hyp = cover.rot(cover.lift_of(GroupElement.diagonal(2.0)))
    par = cover.rot(cover.lift_of(GroupElement(np.array([[1.0, 0], [1, 1]]))))
    assert hyp == 0.0
    assert par == 0.0


def test_deck_shifts_rot_exactly():
    for seed in range(12):
        l = mixed_lift(seed)
        r = cover.rot(l)
        for n in (-2, -1, 1, 3):
            shifted = cover.rot(cover.deck(l, n))
            if r == round(r):
                assert shifted == r + n  # integer rots shift exactly
            else:
                # band + fraction re-rounds at the new band: one ulp of slack
                assert abs(shifted - (r + n)) < 1e-12


def test_anchor_validation():
    g = GroupElement.rotation(0.5)
    with pytest.raises(ValueError):
        cover.LiftedElement(g, 0.5 + 0.3)  # not a lift of the image angle


# ---------------------------------------------------------------------------
# the group structure upstairs


def test_compose_with_inverse_is_identity_lift():
    for seed in range(12):
        l = mixed_lift(seed)
        li = cover.inverse(l)
        prod = cover.compose(l, li)
        assert psl_dist(prod.g.m, np.eye(2)) < 1e-9
        assert cover.rot(prod) == 0.0
        assert abs(cover.rot(li) + cover.rot(l)) < 1e-12


def test_compose_is_associative():
    for seed in range(8):
        a, b, c = mixed_lift(seed), mixed_lift(seed + 50), mixed_lift(seed + 100)
        left = cover.compose(cover.compose(a, b), c)
        right = cover.compose(a, cover.compose(b, c))
        assert psl_dist(left.g.m, right.g.m) < 1e-9
        assert abs(left.anchor - right.anchor) < 1e-9


def test_eval_lift_equivariance():
    for seed in range(8):
        l = mixed_lift(seed)
        for x in (-1.3, 0.4, 2.0):
            assert abs(cover.eval_lift(l, x + np.pi)
                       - cover.eval_lift(l, x) - np.pi) < 1e-9


def test_rot_against_iterative_definition():
    # the Birkhoff average f^k(0)/(k pi) must agree to within 3/k
    k = 64
    for seed in range(30):
        l = mixed_lift(seed)
        assert abs(cover.rot(l) - cover.rot_iterative(l, k)) <= 3.0 / k


# ---------------------------------------------------------------------------
# one-parameter lifts


def test_one_param_lift_of_rotations():
    assert abs(cover.rot(cover.one_param_lift(1.5 * np.pi * J)) - 1.5) < 1e-9
    assert abs(cover.rot(cover.one_param_lift(0.4 * np.pi * J)) - 0.4) < 1e-9


def test_one_param_lift_off_elliptic_is_zero_rot():
    gamma = np.array([[0.3, 0.1], [0.2, -0.3]])  # hyperbolic direction
    assert cover.rot(cover.one_param_lift(gamma)) == 0.0


def test_one_param_lift_is_a_homomorphism_in_t():
    gamma = np.array([[0.2, -1.1], [1.4, -0.2]])
    lab = cover.one_param_lift(gamma, 0.7 + 0.9)
    split = cover.compose(cover.one_param_lift(gamma, 0.7),
                          cover.one_param_lift(gamma, 0.9))
    assert psl_dist(lab.g.m, split.g.m) < 1e-9
    assert abs(lab.anchor - split.anchor) < 1e-9


# ---------------------------------------------------------------------------
# parity representation


def test_sl2_rep_undefined_on_half_bands():
    with pytest.raises(cover.ParityUndefined):
        cover.sl2_rep(cover.lift_of(GroupElement.rotation(np.pi / 2)))


def test_sl2_rep_projects_and_respects_deck():
    for seed in range(10):
        l = mixed_lift(seed)
        try:
            s = cover.sl2_rep(l)
        except cover.ParityUndefined:
            continue
        assert min(np.abs(s - l.g.m).max(), np.abs(s + l.g.m).max()) < 1e-12
        assert np.abs(cover.sl2_rep(cover.deck(l, 1)) + s).max() < 1e-12


def test_sl2_rep_is_multiplicative():
    for seed in range(10):
        l1, l2 = mixed_lift(seed), mixed_lift(seed + 31)
        try:
            s1, s2 = cover.sl2_rep(l1), cover.sl2_rep(l2)
            s12 = cover.sl2_rep(cover.compose(l1, l2))
        except cover.ParityUndefined:
            continue
        assert np.abs(s12 - s1 @ s2).max() < 1e-9


# ---------------------------------------------------------------------------
# path tracking


def test_track_lift_along_rotation_sweep():
    thetas = np.linspace(0.0, 2.5 * np.pi, 400)
    nodes = np.stack([rotation(t) for t in thetas])
    end = cover.track_lift_along(nodes)
    assert abs(cover.rot(end) - 2.5) < 1e-9
    assert abs(cover.rot_along(nodes) - 2.5) < 1e-9


def test_zero_rot_lift():
    g = GroupElement.diagonal(3.0)
    assert cover.rot(cover.zero_rot_lift(g)) == 0.0
    with pytest.raises(ValueError):
        cover.zero_rot_lift(GroupElement.rotation(1.0))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(-3, 3))
def test_rot_quasimorphism_bound(seed, n):
    l1 = cover.deck(mixed_lift(seed), n)
    l2 = mixed_lift(seed + 7)
    d = cover.rot(cover.compose(l1, l2)) - cover.rot(l1) - cover.rot(l2)
    assert abs(d) <= 1.0 + 1e-9
