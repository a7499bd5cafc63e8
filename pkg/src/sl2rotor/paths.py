"""Sampled paths in PSL(2,R) and the nonnegative-path constructors.

A path is stored as det-1 node matrices on the uniform grid t_i = i/N.
Nonnegativity means every discrete derivative cocycle g' g^-1 lies in the
nonnegative cone of traceless matrices; the cone is invariant under
conjugation, so the left version g^-1 g' agrees about membership and both
are exposed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import cover
from .core import (
    ConjClassSpec,
    DegenerateClassification,
    ELLIPTIC,
    GroupElement,
    HYPERBOLIC,
    IDENTITY,
    J,
    LieElement,
    NonUnimodular,
    classify,
    cone_margins,
    mat_inv,
    rotation,
    sl2_exp,
    sl2_log,
)

MAX_STEP = 0.5


class StepTooLarge(ValueError):
    """Consecutive path nodes too far apart to resolve the motion."""


class ItineraryViolation(ValueError):
    """Requested conjugacy-class itinerary not followed within tolerance."""


class ConjugatorBranchLoss(RuntimeError):
    """Continuous eigenvector/conjugator branch could not be maintained."""


def align_signs(nodes: np.ndarray) -> np.ndarray:
    """Flip representative signs so consecutive nodes are Frobenius-nearest."""
    nodes = np.array(nodes, dtype=float)
    ips = np.sum(nodes[:-1] * nodes[1:], axis=(1, 2))
    flips = np.concatenate([[1.0], np.cumprod(np.where(ips < 0, -1.0, 1.0))])
    return nodes * flips[:, None, None]


@dataclass(frozen=True)
class GroupPath:
    """Nodes of a path [0,1] -> PSL(2,R) on the uniform grid."""

    nodes: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes.ndim != 3 or nodes.shape[1:] != (2, 2) or len(nodes) < 2:
            raise ValueError(f"need an (N+1, 2, 2) array, got {nodes.shape}")
        det = nodes[:, 0, 0] * nodes[:, 1, 1] - nodes[:, 0, 1] * nodes[:, 1, 0]
        if not np.all(np.isfinite(det)) or np.any(det <= 0):
            raise NonUnimodular(f"node determinants must be positive, min {det.min()}")
        nodes = align_signs(nodes / np.sqrt(det)[:, None, None])
        steps = np.linalg.norm(np.diff(nodes, axis=0), axis=(1, 2))
        if steps.max() > MAX_STEP:
            raise StepTooLarge(
                f"largest node step {steps.max():.3g} exceeds {MAX_STEP}")
        nodes.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)

    @property
    def n_steps(self) -> int:
        return len(self.nodes) - 1

    @property
    def h(self) -> float:
        return 1.0 / self.n_steps

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, len(self.nodes))

    def node(self, i: int) -> GroupElement:
        return GroupElement(self.nodes[i])

    def _log_steps(self, left: bool) -> np.ndarray:
        dm = (mat_inv(self.nodes[:-1]) @ self.nodes[1:] if left
              else self.nodes[1:] @ mat_inv(self.nodes[:-1]))
        if np.linalg.norm(dm - IDENTITY, axis=(1, 2)).max() >= 1.0:
            raise StepTooLarge("a step leaves the principal log chart")
        return sl2_log(dm)

    def left_cocycles(self) -> np.ndarray:
        """log(g_i^-1 g_{i+1}) / h: midpoint values of g^-1 g'."""
        return self._log_steps(left=True) / self.h

    def right_cocycles(self) -> np.ndarray:
        """log(g_{i+1} g_i^-1) / h: midpoint values of g' g^-1."""
        return self._log_steps(left=False) / self.h

    def margins(self, side: str = "right") -> np.ndarray:
        cocycles = self.left_cocycles() if side == "left" else self.right_cocycles()
        return cone_margins(cocycles)

    def is_nonneg(self, tol: float = 1e-9) -> bool:
        return bool(self.margins().min() >= -tol)

    def is_nonpos(self, tol: float = 1e-9) -> bool:
        # gamma is in the nonpositive cone iff -gamma is in the nonnegative one
        side_margins = cone_margins(-self.right_cocycles())
        return bool(side_margins.min() >= -tol)

    def reversed(self) -> "GroupPath":
        return GroupPath(self.nodes[::-1])

    def inverted(self) -> "GroupPath":
        return GroupPath(mat_inv(self.nodes))

    def refine(self, substeps: int) -> "GroupPath":
        """Geodesic subdivision: substeps - 1 extra nodes inside each step."""
        if substeps <= 1:
            return self
        logs = self._log_steps(left=True)
        taus = np.arange(substeps) / substeps
        fill = np.einsum("nab,ntbc->ntac", self.nodes[:-1],
                         sl2_exp(taus[None, :, None, None] * logs[:, None]))
        fine = np.concatenate([fill.reshape(-1, 2, 2), self.nodes[-1:]])
        return GroupPath(fine)


def derivative_cocycle(p: GroupPath, i: int) -> LieElement:
    """Right derivative cocycle log(g_{i+1} g_i^-1)/h at step i."""
    if not 0 <= i < p.n_steps:
        raise IndexError(f"step index {i} out of range")
    return LieElement(p.right_cocycles()[i])


@dataclass(frozen=True)
class PathReport:
    min_cone_margin: float
    rot_gain: float
    endpoint_class: ConjClassSpec | None
    class_itinerary: list = field(default_factory=list)
    nonnegative: bool = False
    positive: bool = False


def _classify_or_none(m: np.ndarray) -> ConjClassSpec | None:
    try:
        return classify(GroupElement(m))
    except DegenerateClassification:
        return None


def is_nonnegative(p: GroupPath, margin: float = 1e-9) -> PathReport:
    """Cone margins of all derivative cocycles plus rot bookkeeping."""
    margins = p.margins()
    worst = float(margins.min())
    _, gain = rot_along(p)
    itinerary = [_classify_or_none(m) for m in p.nodes]
    return PathReport(
        min_cone_margin=worst,
        rot_gain=gain,
        endpoint_class=itinerary[-1],
        class_itinerary=itinerary,
        nonnegative=worst >= -margin,
        positive=worst > margin,
    )


def rot_along(p: GroupPath, x0: float = 0.0) -> tuple[cover.LiftedElement, float]:
    """Endpoint lift tracked continuously from the standard start lift.

    Returns (endpoint lift, rot gain); the gain is rot(end) - rot(start).
    """
    end = cover.track_lift_along(p.nodes, x0)
    start = cover.lift_of(GroupElement(p.nodes[0]))
    return end, cover.rot(end) - cover.rot(start)


def pointwise_product(p1: GroupPath, p2: GroupPath) -> GroupPath:
    if p1.n_steps != p2.n_steps:
        raise ValueError("paths must share the grid")
    return GroupPath(p1.nodes @ p2.nodes)


def make_positive(path: GroupPath, eta: float = 1e-3) -> GroupPath:
    """Compose with the slow rotation R(eta pi t).

    Rotations act on cone coordinates by turning (delta, eps) and fixing
    alpha, so every right-cocycle margin goes up by exactly eta pi.
    """
    ang = eta * np.pi * path.times
    c, s = np.cos(ang), np.sin(ang)
    rots = np.stack([np.stack([c, -s], -1), np.stack([s, c], -1)], -2)
    return GroupPath(rots @ path.nodes)


def _as_traceless(gamma) -> np.ndarray:
    if isinstance(gamma, LieElement):
        return gamma.x
    return LieElement(np.asarray(gamma, dtype=float)).x


def spiral_path(r: int, gamma, n: int | None = None) -> GroupPath:
    """R(r pi t) exp(t gamma): winds r half-turns while drifting by gamma.

    Small gamma keeps the derivative inside the cone: the right cocycle is
    r pi J + Ad_{R(r pi t)} gamma, with margin at least r pi - 2 |gamma|.
    """
    gamma = _as_traceless(gamma)
    if np.linalg.norm(gamma) > 0.2:
        raise ValueError("|gamma| must stay below 0.2 to remain in the cone")
    if r != int(r) or r < 1:
        raise ValueError("winding r must be a positive integer")
    if n is None:
        n = max(64, int(np.ceil(48 * (r + 1))))
    t = np.linspace(0.0, 1.0, n + 1)
    ang = r * np.pi * t
    c, s = np.cos(ang), np.sin(ang)
    rots = np.stack([np.stack([c, -s], -1), np.stack([s, c], -1)], -2)
    return GroupPath(rots @ sl2_exp(t[:, None, None] * gamma))


# ---------------------------------------------------------------------------
# class itineraries


def _scalar_model(data, n: int):
    # returns (value_at(t, i), slope_at(t, i)) where i is the current RK4
    # step; array input is read as node values joined piecewise linearly,
    # and the step index keeps every stage on one linear piece so the
    # integrator never straddles a slope kink
    if callable(data):
        def value_at(t: float, i: int) -> float:
            return float(data(min(max(t, 0.0), 1.0)))

        def slope_at(t: float, i: int) -> float:
            d = 1e-6
            lo, hi = max(t - d, 0.0), min(t + d, 1.0)
            return (value_at(hi, i) - value_at(lo, i)) / (hi - lo)

        return value_at, slope_at
    vals = np.asarray(data, dtype=float)
    if vals.shape != (n + 1,):
        raise ValueError(f"need {n + 1} node values, got shape {vals.shape}")

    def value_at(t: float, i: int) -> float:
        return float(vals[i] + (t * n - i) * (vals[i + 1] - vals[i]))

    def slope_at(t: float, i: int) -> float:
        return float((vals[i + 1] - vals[i]) * n)

    return value_at, slope_at


def _rk4(deriv, g0: np.ndarray, n: int) -> np.ndarray:
    h = 1.0 / n
    out = np.empty((n + 1, 2, 2))
    out[0] = g0
    g = np.array(g0, dtype=float)
    for i in range(n):
        t = i * h
        k1 = deriv(t, g, i)
        k2 = deriv(t + h / 2, g + (h / 2) * k1, i)
        k3 = deriv(t + h / 2, g + (h / 2) * k2, i)
        k4 = deriv(t + h, g + h * k3, i)
        g = g + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        out[i + 1] = g
    return out


def elliptic_itinerary_path(theta, g0: GroupElement | None = None,
                            n: int = 1000) -> GroupPath:
    """Nonnegative path through the elliptic classes of angle theta(t).

    Integrates g' = g gamma, gamma = theta' (g - cos(theta) 1) / sin(theta),
    which keeps tr g = 2 cos(theta(t)) exactly; the cone margin of the
    cocycle is positive exactly where theta' > 0.  A decreasing theta is
    refused: no nonnegative path can lower the elliptic angle (reverse the
    result to realize the nonpositive itinerary).
    """
    theta_at, dtheta_at = _scalar_model(theta, n)
    probes = np.linspace(0.0, 1.0, 4 * n + 1)
    vals = np.array([theta_at(t, min(int(t * n), n - 1)) for t in probes])
    if vals.min() < 1e-6 or vals.max() > np.pi - 1e-6:
        raise ItineraryViolation("theta must stay inside (0, pi)")
    if np.diff(vals).min() < -1e-12:
        raise ItineraryViolation("theta must be nondecreasing on a nonnegative path")
    if g0 is None:
        start = rotation(vals[0])
    else:
        spec = classify(g0)
        if spec.kind != ELLIPTIC or abs(spec.value - vals[0]) > 1e-9:
            raise ItineraryViolation(
                f"g0 must be elliptic of angle {vals[0]}, got {spec}")
        # counterclockwise representative has trace 2 cos(theta)
        start = g0.m if g0.m[1, 0] > 0 else -g0.m

    def deriv(t, g, i):
        dth = dtheta_at(t, i)
        if dth == 0.0:
            return np.zeros((2, 2))
        th = theta_at(t, i)
        return dth / np.sin(th) * (g @ g - np.cos(th) * g)

    path = GroupPath(_rk4(deriv, start, n))
    drift = np.abs(np.abs(path.nodes[:, 0, 0] + path.nodes[:, 1, 1])
                   - 2.0 * np.abs(np.cos(vals[::4])))
    if drift.max() > 1e-6:
        raise ItineraryViolation(f"angle itinerary drifted by {drift.max():.3g}")
    return path


def _hyperbolic_generator(g: np.ndarray, want_increase: bool,
                          eta_scale: float) -> np.ndarray:
    # cone-boundary directions tangent to the fixed-multiplier motion:
    # alpha = sqrt(r), (delta, eps) = +-(b + c, a - d) with
    # r = (a - d)^2 + (b + c)^2 = tr^2 - 4 + (c - b)^2 for det 1.
    # The + branch has tr(g gamma) = sqrt(r)(sqrt(r) - T) > 0, so it always
    # raises the trace; eta J pushes strictly inside the cone.  eta is
    # capped so the eta J term never overturns the sign of tr(g gamma),
    # whose unperturbed size is at least (tr^2 - 4) sqrt(r) / (sqrt(r)+|T|).
    a, b, c, d = g.ravel()
    m = np.array([[a - d, b + c], [b + c, d - a]])
    root_r = np.hypot(a - d, b + c)
    sign = 1.0 if want_increase else -1.0
    tee = abs(c - b)
    tr2m4 = (a + d) ** 2 - 4.0
    eta = eta_scale * root_r
    if tee > 0.0:
        eta = min(eta, 0.25 * tr2m4 * root_r / ((root_r + tee) * tee))
    return root_r * J + sign * m + eta * J


def hyperbolic_itinerary_path(lam, direction: int = 1,
                              g0: GroupElement | None = None, n: int = 1000,
                              eta_scale: float = 1e-3) -> GroupPath:
    """Nonnegative path through hyperbolic classes of multiplier lam(t).

    Flows along a perturbed cone-boundary generator rescaled so the trace
    of the representative follows tau(t) = direction (lam + 1/lam) exactly;
    the boundary branch tracks the sign of tau'.
    """
    lam_at, dlam_at = _scalar_model(lam, n)
    probes = np.linspace(0.0, 1.0, 4 * n + 1)
    lam_vals = np.array([lam_at(t, min(int(t * n), n - 1)) for t in probes])
    if lam_vals.min() <= 1.0 + 1e-9:
        raise ItineraryViolation("multiplier must stay above 1")
    if direction not in (-1, 1):
        raise ValueError("direction must be +1 or -1")
    if g0 is None:
        start = direction * np.diag([lam_vals[0], 1.0 / lam_vals[0]])
    else:
        spec = classify(g0)
        if spec.kind != HYPERBOLIC or abs(spec.value - lam_vals[0]) > 1e-9:
            raise ItineraryViolation(
                f"g0 must be hyperbolic of multiplier {lam_vals[0]}, got {spec}")
        tr = g0.trace
        start = g0.m if tr * direction > 0 else -g0.m

    def deriv(t, g, i):
        lam = lam_at(t, i)
        dtau = direction * (1.0 - 1.0 / lam ** 2) * dlam_at(t, i)
        if dtau == 0.0:
            return np.zeros((2, 2))
        gamma = _hyperbolic_generator(g, dtau > 0, eta_scale)
        pairing = float(np.trace(g @ gamma))
        return (dtau / pairing) * (gamma @ g)

    path = GroupPath(_rk4(deriv, start, n))
    node_lams = lam_vals[::4]
    target = node_lams + 1.0 / node_lams
    drift = np.abs(np.abs(path.nodes[:, 0, 0] + path.nodes[:, 1, 1]) - target)
    if drift.max() > 1e-5:
        raise ItineraryViolation(f"multiplier itinerary drifted by {drift.max():.3g}")
    return path


# ---------------------------------------------------------------------------
# the unit path and its conjugator frame


def _unit_eigvec(b: np.ndarray) -> np.ndarray:
    # unit vector in the kernel of the (numerically) rank-1 matrix b
    r = b[0] if np.hypot(*b[0]) >= np.hypot(*b[1]) else b[1]
    v = np.array([-r[1], r[0]])
    return v / np.linalg.norm(v)


def conjugator_path(nodes: np.ndarray, lam: float) -> np.ndarray:
    """Continuous det-1 frames k_i with nodes_i = k_i diag(lam,1/lam) k_i^-1.

    Every node must be hyperbolic of multiplier lam.  Eigenvector branches
    and the overall projective sign are carried along the path; a jump
    above the resolvability threshold raises ConjugatorBranchLoss.
    """
    nodes = np.asarray(nodes, dtype=float)
    lam_inv = 1.0 / lam
    out = np.empty_like(nodes)
    eye = np.eye(2)
    u1p = u2p = None
    for i, m in enumerate(nodes):
        mp = m if m[0, 0] + m[1, 1] >= 0 else -m
        u1 = _unit_eigvec(mp - lam * eye)
        u2 = _unit_eigvec(mp - lam_inv * eye)
        if u1p is not None:
            if float(u1 @ u1p) < 0:
                u1 = -u1
            if float(u2 @ u2p) < 0:
                u2 = -u2
        u1p, u2p = u1, u2
        du = float(u1[0] * u2[1] - u1[1] * u2[0])
        if abs(du) < 1e-12:
            raise ConjugatorBranchLoss(f"eigenvectors collapse at node {i}")
        c1 = 1.0 / np.sqrt(abs(du))
        c2 = c1 if du > 0 else -c1
        k = np.stack([c1 * u1, c2 * u2], axis=1)
        if i > 0:
            prev = out[i - 1]
            if np.linalg.norm(k - prev) > np.linalg.norm(k + prev):
                k = -k
            if min(np.linalg.norm(k - prev), np.linalg.norm(k + prev)) > MAX_STEP:
                raise ConjugatorBranchLoss(f"conjugator jump at node {i}")
        out[i] = k
    return out


def conjugation_residual(nodes: np.ndarray, ks: np.ndarray, lam: float) -> float:
    rebuilt = ks @ np.diag([lam, 1.0 / lam]) @ mat_inv(ks)
    signs = np.where((nodes * rebuilt).sum(axis=(1, 2)) < 0, -1.0, 1.0)
    return float(np.linalg.norm(nodes - signs[:, None, None] * rebuilt,
                                axis=(1, 2)).max())


def unit_path(lam_target: float, lam: float,
              n: int = 2000) -> tuple[GroupPath, GroupPath, dict]:
    """Path from 1 losing a "unit" of trace: endpoint trace -(lam_t + 1/lam_t).

    Both segments stay inside the level set {tr(g diag(lam, 1/lam)) =
    lam + 1/lam}: first the lower-triangular shear raising the corner
    entry to 1, then the slide with that corner pinned driving the trace
    monotonically from 2 down through -2.  The path is conjugate to a
    nonnegative path; here the verifiable consequences are produced: the
    conjugator frame k(t) of g1(t) g2, its trace identity, the positivity
    of its diagonal, and the exact unit of rot gained by g1.
    """
    if lam <= 1.0 or lam_target <= 1.0:
        raise ValueError("multipliers must exceed 1")
    half = n // 2
    t1 = np.linspace(0.0, 1.0, half + 1)
    seg_a = np.zeros((half + 1, 2, 2))
    seg_a[:, 0, 0] = 1.0
    seg_a[:, 1, 1] = 1.0
    seg_a[:, 1, 0] = t1
    a_end = (lam ** 2 + 1.0 + lam_target + 1.0 / lam_target) / (lam ** 2 - 1.0)
    av = 1.0 + (a_end - 1.0) * np.linspace(0.0, 1.0, n - half + 1)
    seg_b = np.empty((n - half + 1, 2, 2))
    seg_b[:, 0, 0] = av
    seg_b[:, 1, 0] = 1.0
    seg_b[:, 1, 1] = lam ** 2 + 1.0 - av * lam ** 2
    seg_b[:, 0, 1] = av * seg_b[:, 1, 1] - 1.0
    g1 = GroupPath(np.concatenate([seg_a, seg_b[1:]]))

    ms = g1.nodes @ np.diag([lam, 1.0 / lam])
    ks = conjugator_path(ms, lam)
    residual = conjugation_residual(ms, ks, lam)
    k_path = GroupPath(ks)
    ps = ks[:, 0, 0] * ks[:, 1, 1]
    # eq: tr(g1) = (1 - p s)(lam - 1/lam)^2 + 2 with p, s the k diagonal
    identity_residual = float(np.abs(
        (1.0 - ps) * (lam - 1.0 / lam) ** 2 + 2.0
        - (g1.nodes[:, 0, 0] + g1.nodes[:, 1, 1])).max())
    k_end_lift, k_gain = rot_along(k_path)
    end_lift, gain = rot_along(g1)
    report = {
        "conjugation_residual": residual,
        "trace_identity_residual": identity_residual,
        "min_ps": float(ps.min()),
        "k_end_class": str(classify(k_path.node(n))),
        "k_rot": cover.rot(k_end_lift),
        "rot_gain": gain,
        "endpoint_trace": float(g1.nodes[-1, 0, 0] + g1.nodes[-1, 1, 1]),
    }
    return g1, k_path, report


# ---------------------------------------------------------------------------
# the hyperbolic triple with a rot defect


@dataclass(frozen=True)
class TripleWithLifts:
    g0: GroupElement
    g1: GroupElement
    g2: GroupElement
    l0: cover.LiftedElement
    l1: cover.LiftedElement
    l2: cover.LiftedElement

    @property
    def defect(self) -> float:
        return cover.rot(self.l0) - cover.rot(self.l1) - cover.rot(self.l2)


def three_classes_triple(lam0: float, lam1: float, lam2: float,
                         branch: int = -1) -> TripleWithLifts:
    """Hyperbolic g1, g2 of multipliers lam1, lam2 with g1 g2 of multiplier
    lam0 and negative trace.

    The lifts connect each factor to the identity through its one-parameter
    subgroup; l0 is their cover product.  branch -1 makes the triple lose
    one unit of rot (rot l0 = -1), branch +1 gain one.
    """
    if min(lam0, lam1, lam2) <= 1.0:
        raise ValueError("multipliers must exceed 1")
    if branch not in (-1, 1):
        raise ValueError("branch must be -1 or +1")
    t = (lam0 + 1.0 / lam0 + lam1 * lam2 + 1.0 / (lam1 * lam2)) / (lam1 - 1.0 / lam1)
    s = float(branch)
    g1 = GroupElement.diagonal(lam1)
    g2 = GroupElement(np.array([
        [lam2 - t, s * (lam2 - 1.0 / lam2 - t)],
        [s * t, 1.0 / lam2 + t],
    ]))
    # positive-trace representatives are exp of their principal log, so the
    # one-parameter lifts land on the zero-rot branch
    l1 = cover.one_param_lift(sl2_log(g1.m if g1.trace > 0 else -g1.m))
    l2 = cover.one_param_lift(sl2_log(g2.m if g2.trace > 0 else -g2.m))
    l0 = cover.compose(l1, l2)
    return TripleWithLifts(g1 @ g2, g1, g2, l0, l1, l2)


# ---------------------------------------------------------------------------
# two elliptic factors


def elliptic_about(theta: float, w: complex) -> GroupElement:
    """Rotation by theta about the disc point w, |w| < 1, as a real matrix."""
    w = complex(w)
    r2 = abs(w) ** 2
    if r2 >= 1.0:
        raise ValueError("w must lie in the open unit disc")
    c, s = np.cos(theta), np.sin(theta)
    den = 1.0 - r2
    return GroupElement(np.array([
        [c - s * 2.0 * w.imag / den, -s * abs(1 + w) ** 2 / den],
        [s * abs(1 - w) ** 2 / den, c + s * 2.0 * w.imag / den],
    ]))


def two_elliptic_trace(theta1: float, theta2: float, w: complex) -> float:
    """Trace of (rotation theta1 about w) (rotation theta2 about 0).

    Equals 2 cos t1 cos t2 - 2 sin t1 sin t2 (1+|w|^2)/(1-|w|^2); decreasing
    in |w|, with supremum 2 cos(t1 + t2) on the diagonal w = 0.
    """
    r2 = abs(complex(w)) ** 2
    if r2 >= 1.0:
        raise ValueError("w must lie in the open unit disc")
    return float(2.0 * np.cos(theta1) * np.cos(theta2)
                 - 2.0 * np.sin(theta1) * np.sin(theta2) * (1.0 + r2) / (1.0 - r2))
