"""Lifts of the projective circle action and rotation numbers.

A group element g acts on the circle of directions RP^1 = R/(pi Z) by
x -> angle of g (cos x, sin x).  An element of the universal cover is a
pair (g, anchor) where anchor is a real lift of the image angle of
direction 0; it pins down the continuous lift f: R -> R of the action,
with f(x + pi) = f(x) + pi and f(0) = anchor.

Rotation numbers are normalized so the deck translation x -> x + pi has
rot = 1 (a lift of the counterclockwise rotation by theta moving every
direction forward has rot = theta / pi).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DegenerateClassification,
    ELLIPTIC,
    GroupElement,
    HYPERBOLIC,
    IDENTITY_CLASS,
    classify,
    sl2_exp,
)

PI = np.pi


class ParityUndefined(ArithmeticError):
    """No sign choice in SL(2,R): the lift sits on a half-integer rot band."""


def act_angle(g: GroupElement, x: float) -> float:
    """Principal image angle of direction x under g, in (-pi, pi]."""
    v = np.array([np.cos(x), np.sin(x)])
    w = g.m @ v
    return float(np.arctan2(w[1], w[0]))


def _angles_along(ms: np.ndarray, x: np.ndarray) -> np.ndarray:
    # image angles of directions x[i] under matrices ms[i] (or one matrix)
    c, s = np.cos(x), np.sin(x)
    wx = ms[..., 0, 0] * c + ms[..., 0, 1] * s
    wy = ms[..., 1, 0] * c + ms[..., 1, 1] * s
    return np.arctan2(wy, wx)


def _wrap_increments(d: np.ndarray) -> np.ndarray:
    # nearest representative mod pi; valid while true increments stay
    # well inside (-pi/2, pi/2), which every walk below guarantees
    return (d + PI / 2.0) % PI - PI / 2.0


def _sigma_sq(m: np.ndarray) -> float:
    # squared largest singular value of a det-1 matrix; it bounds the
    # derivative of the lifted action, f'(x) = 1 / |g v(x)|^2 <= sigma^2
    f2 = float(np.sum(m * m))
    return (f2 + np.sqrt(max(f2 * f2 - 4.0, 0.0))) / 2.0


@dataclass(frozen=True)
class LiftedElement:
    """Universal cover element: base g plus the lift value at direction 0."""

    g: GroupElement
    anchor: float

    def __post_init__(self):
        a0 = act_angle(self.g, 0.0)
        res = self.anchor - a0
        if abs(res / PI - round(res / PI)) > 1e-6:
            raise ValueError(
                f"anchor {self.anchor} is not a lift of the image angle {a0}")


def lift_of(g: GroupElement) -> LiftedElement:
    """The standard lift, anchor in [0, pi)."""
    return LiftedElement(g, act_angle(g, 0.0) % PI)


def deck(lift: LiftedElement, n: int) -> LiftedElement:
    return LiftedElement(lift.g, lift.anchor + n * PI)


def eval_lift(lift: LiftedElement, x: float) -> float:
    """f(x) for the continuous lift pinned by the anchor.

    Walks from 0 to x in steps so short that each true angle increment is
    below pi/8 (the lift is sigma^2-Lipschitz), then accumulates
    nearest-mod-pi wrapped increments.  One vectorized pass.
    """
    x = float(x)
    if x == 0.0:
        return lift.anchor
    n = int(np.ceil(8.0 * abs(x) * _sigma_sq(lift.g.m) / PI)) + 1
    xs = np.linspace(0.0, x, n + 1)
    a = _angles_along(lift.g.m, xs)
    return lift.anchor + float(np.sum(_wrap_increments(np.diff(a))))


def compose(l1: LiftedElement, l2: LiftedElement) -> LiftedElement:
    """Product of cover elements: base g1 g2, anchor f1(f2(0))."""
    g = l1.g @ l2.g
    raw = eval_lift(l1, l2.anchor)
    # snap to an exact lift of the product's principal angle; the walk
    # only contributes rounding noise here
    a0 = act_angle(g, 0.0)
    k = round((raw - a0) / PI)
    if abs(raw - a0 - k * PI) > 1e-6:
        raise DegenerateClassification(
            f"composed anchor {raw} drifted {raw - a0 - k * PI} from a lift")
    return LiftedElement(g, a0 + k * PI)


def inverse(lift: LiftedElement) -> LiftedElement:
    """The cover inverse: anchor solves f(anchor_inv) = 0."""
    ginv = lift.g.inv()
    a = act_angle(ginv, 0.0)
    # g maps direction a to direction 0, hence f(a) is an exact multiple of pi
    fa = eval_lift(lift, a)
    k = round(fa / PI)
    if abs(fa - k * PI) > 1e-6:
        raise DegenerateClassification(f"inverse anchor residual {fa - k * PI}")
    return LiftedElement(ginv, a - k * PI)


def _displacement_band(lift: LiftedElement) -> int:
    # integer m with f(x) - x in (m pi, (m+1) pi) for all x; well defined
    # for elliptic g because the displacement never crosses pi Z
    sig2 = _sigma_sq(lift.g.m)
    n = max(64, int(np.ceil(8.0 * sig2)))
    xs = np.linspace(0.0, PI, n + 1)
    a = _angles_along(lift.g.m, xs)
    f = lift.anchor + np.concatenate(
        [[0.0], np.cumsum(_wrap_increments(np.diff(a)))])
    d = f - xs
    lo, hi = float(d.min()), float(d.max())
    m = int(np.floor(0.5 * (lo + hi) / PI))
    edge = 1e-12 * (1.0 + abs(lo) + abs(hi))
    if not (m * PI + edge < lo and hi < (m + 1) * PI - edge):
        raise DegenerateClassification(
            f"elliptic displacement range [{lo}, {hi}] touches a pi multiple")
    return m


def _fixed_direction(g: GroupElement) -> float:
    # an angle fixed by the projective action; g must not be elliptic
    m = g.m if g.trace >= 0 else -g.m
    tr = m[0, 0] + m[1, 1]
    lam = (tr + np.sqrt(max(tr * tr - 4.0, 0.0))) / 2.0
    k = m - lam * np.eye(2)
    r = k[0] if np.hypot(*k[0]) >= np.hypot(*k[1]) else k[1]
    return float(np.arctan2(r[0], -r[1]))  # orthogonal to the dominant row


def rot(lift: LiftedElement) -> float:
    """Translation number of the lift, exact integers off the elliptic set.

    Elliptic: band index of the displacement plus the class angle / pi.
    Otherwise some direction x0 is projectively fixed, so f(x0) - x0 is an
    exact multiple of pi and rot is that integer.
    """
    spec = classify(lift.g)
    if spec.kind == ELLIPTIC:
        return _displacement_band(lift) + spec.value / PI
    if spec.kind == IDENTITY_CLASS:
        x0 = 0.0
    else:
        x0 = _fixed_direction(lift.g)
    d = eval_lift(lift, x0) - x0
    n = round(d / PI)
    if abs(d - n * PI) > 1e-6:
        raise DegenerateClassification(
            f"fixed-direction displacement {d} is {d - n * PI} from a pi multiple")
    return float(n)


def rot_iterative(lift: LiftedElement, k: int = 64) -> float:
    """Birkhoff estimate f^k(0) / (k pi); slow, error below 1/k.

    Kept as an independent cross-check for rot; do not use in hot loops.
    """
    y = 0.0
    for _ in range(k):
        y = eval_lift(lift, y)
    return y / (k * PI)


def one_param_lift(gamma: np.ndarray, t: float = 1.0) -> LiftedElement:
    """Lift of exp(t gamma) reached continuously from the identity.

    Tracks the image angle of direction 0 along s -> exp(s gamma), s from 0
    to t, which pins the anchor without any classification step.
    """
    gamma = np.asarray(gamma, dtype=float)
    n = int(np.ceil(16.0 * (np.linalg.norm(gamma) + 1.0) * abs(t))) + 8
    ss = np.linspace(0.0, t, n + 1)
    mats = sl2_exp(ss[:, None, None] * gamma)
    a = _angles_along(mats, np.zeros(n + 1))
    anchor = float(np.sum(_wrap_increments(np.diff(a))))
    return LiftedElement(GroupElement(mats[-1]), anchor)


def sl2_rep(lift: LiftedElement) -> np.ndarray:
    """Image in SL(2,R) = cover mod squared deck; sign from the rot band.

    The trace of the image is positive on even bands (rot rounding to an
    even integer) and negative on odd bands; it vanishes exactly on the
    half-integer elliptic locus, where no continuous sign exists.
    """
    m = lift.g.m
    tr = m[0, 0] + m[1, 1]
    if abs(tr) <= 1e-12:
        raise ParityUndefined("trace vanishes: lift sits between parity bands")
    r = rot(lift)
    if abs(r - np.floor(r) - 0.5) <= 1e-9:
        raise ParityUndefined(f"rot {r} is a half integer")
    band = round(r)
    want_positive = band % 2 == 0
    return m if (tr > 0) == want_positive else -m


def track_lift_along(nodes: np.ndarray, x0: float = 0.0) -> LiftedElement:
    """Continuous lift of the endpoint of a matrix path.

    nodes is an (N+1, 2, 2) array of det-1 matrices forming a path that is
    resolvable at this sampling: consecutive nodes must move every
    direction by less than pi/2.  Starts at the standard lift of nodes[0]
    and returns the endpoint's lift.
    """
    nodes = np.asarray(nodes, dtype=float)
    a = _angles_along(nodes, np.full(len(nodes), float(x0)))
    start = lift_of(GroupElement(nodes[0]))
    val = eval_lift(start, x0) + float(np.sum(_wrap_increments(np.diff(a))))
    end_std = lift_of(GroupElement(nodes[-1]))
    e = eval_lift(end_std, x0)
    n = round((val - e) / PI)
    if abs(val - e - n * PI) > 1e-6:
        raise DegenerateClassification(
            f"endpoint lift residual {val - e - n * PI} after tracking")
    return deck(end_std, n)


def rot_along(nodes: np.ndarray, x0: float = 0.0) -> float:
    """rot gain along a matrix path: rot(tracked end) - rot(standard start)."""
    nodes = np.asarray(nodes, dtype=float)
    end = track_lift_along(nodes, x0)
    return rot(end) - rot(lift_of(GroupElement(nodes[0])))


def zero_rot_lift(g: GroupElement) -> LiftedElement:
    """The unique lift with rot 0; g must not be elliptic."""
    l = lift_of(g)
    r = rot(l)
    if r != np.floor(r):
        raise ValueError(f"no zero-rot lift: rot band is fractional ({r})")
    return deck(l, -int(r))
