"""Scalar linear algebra over SL(2,R) and PSL(2,R).

Conventions used throughout the package:

* matrices are indexed row major, m = [[a, b], [c, d]];
* group elements carry a unit-determinant representative, equality and
  distance are always modulo an overall sign;
* a traceless matrix gamma is described by the coordinates

      alpha = (c - b) / 2,  delta = (c + b) / 2,  eps = a,

  i.e. gamma = [[eps, delta - alpha], [delta + alpha, -eps]].  On unit
  vectors v = (cos phi, sin phi) the quadratic form

      q(v) = det(v, gamma v) = alpha + delta sin(2 phi) ... (see cone_margin)

  has minimum alpha - sqrt(delta^2 + eps^2) and maximum
  alpha + sqrt(delta^2 + eps^2), so the nonnegative cone {q >= 0
  everywhere} is exactly {alpha >= sqrt(delta^2 + eps^2)};
* T(g) = c - b, so rotation by theta has T = 2 sin(theta), and
  T(g^2) = T(g) tr(g).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TAU_CLASS = 1e-9    # half width of the |trace| = 2 band
EPS_EQ = 1e-9       # matrix equality threshold, Frobenius, modulo sign

IDENTITY = np.eye(2)
J = np.array([[0.0, -1.0], [1.0, 0.0]])  # rotation generator, cone interior

ELLIPTIC = "elliptic"
HYPERBOLIC = "hyperbolic"
PARABOLIC_NONNEG = "parabolic_nonneg"
PARABOLIC_NONPOS = "parabolic_nonpos"
IDENTITY_CLASS = "identity"

POSITIVE = "positive"
NONNEG_BOUNDARY = "nonneg_boundary"
NEGATIVE = "negative"
NONPOS_BOUNDARY = "nonpos_boundary"
ZERO = "zero"
INDEFINITE = "indefinite"


class NonUnimodular(ValueError):
    """Input matrix has nonpositive or non-finite determinant."""


class DegenerateClassification(ArithmeticError):
    """Conjugacy-type test was numerically inconclusive."""


def rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def _check_unimodular(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.shape != (2, 2) or not np.all(np.isfinite(m)):
        raise NonUnimodular(f"not a finite 2x2 matrix: {m!r}")
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if not np.isfinite(det) or det <= 0.0:
        raise NonUnimodular(f"determinant {det} is not positive")
    return m / np.sqrt(det)


class GroupElement:
    """An element of PSL(2,R): a det-1 representative, sign not trusted."""

    __slots__ = ("m",)

    def __init__(self, m) -> None:
        object.__setattr__(self, "m", _check_unimodular(m))
        self.m.setflags(write=False)

    def __setattr__(self, *a):  # immutable value type
        raise AttributeError("GroupElement is immutable")

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(IDENTITY)

    @classmethod
    def rotation(cls, theta: float) -> "GroupElement":
        return cls(rotation(theta))

    @classmethod
    def diagonal(cls, lam: float) -> "GroupElement":
        return cls(np.array([[lam, 0.0], [0.0, 1.0 / lam]]))

    @property
    def trace(self) -> float:
        return float(self.m[0, 0] + self.m[1, 1])

    def inv(self) -> "GroupElement":
        a, b, c, d = self.m.ravel()
        return GroupElement(np.array([[d, -b], [-c, a]]))

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.m @ other.m)

    def close_to(self, other: "GroupElement", eps: float = EPS_EQ) -> bool:
        return psl_dist(self.m, other.m) <= eps

    def __repr__(self) -> str:
        return f"GroupElement({self.m.tolist()!r})"


def psl_dist(m1: np.ndarray, m2: np.ndarray) -> float:
    """Frobenius distance modulo overall sign."""
    return float(min(np.linalg.norm(m1 - m2), np.linalg.norm(m1 + m2)))


@dataclass(frozen=True)
class LieElement:
    """Traceless 2x2 matrix with the (alpha, delta, eps) cone coordinates."""

    x: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        if x.shape != (2, 2) or not np.all(np.isfinite(x)):
            raise ValueError(f"not a finite 2x2 matrix: {x!r}")
        if abs(x[0, 0] + x[1, 1]) > 1e-12 * max(1.0, float(np.abs(x).max())):
            raise ValueError(f"matrix is not traceless: trace={x[0,0]+x[1,1]}")
        # store an exactly traceless copy
        x = x - 0.5 * (x[0, 0] + x[1, 1]) * IDENTITY
        x.setflags(write=False)
        object.__setattr__(self, "x", x)

    @classmethod
    def from_cone_coords(cls, alpha: float, delta: float, eps: float) -> "LieElement":
        return cls(np.array([[eps, delta - alpha], [delta + alpha, -eps]]))

    @property
    def alpha(self) -> float:
        return 0.5 * float(self.x[1, 0] - self.x[0, 1])

    @property
    def delta(self) -> float:
        return 0.5 * float(self.x[1, 0] + self.x[0, 1])

    @property
    def eps(self) -> float:
        return float(self.x[0, 0])

    def cone_margin(self) -> float:
        return self.alpha - float(np.hypot(self.delta, self.eps))

    def norm(self) -> float:
        return float(np.linalg.norm(self.x))


@dataclass(frozen=True)
class ConjClassSpec:
    """Conjugacy class of PSL(2,R): kind tag plus the invariant scalar."""

    kind: str
    value: float | None = None

    def __post_init__(self):
        if self.kind == ELLIPTIC:
            if not (self.value is not None and 0.0 < self.value < np.pi):
                raise ValueError(f"elliptic angle must lie in (0, pi): {self.value}")
        elif self.kind == HYPERBOLIC:
            if not (self.value is not None and self.value > 1.0):
                raise ValueError(f"hyperbolic multiplier must exceed 1: {self.value}")
        elif self.kind in (PARABOLIC_NONNEG, PARABOLIC_NONPOS, IDENTITY_CLASS):
            if self.value is not None:
                raise ValueError(f"{self.kind} takes no parameter")
        else:
            raise ValueError(f"unknown class kind {self.kind!r}")

    @classmethod
    def elliptic(cls, theta: float) -> "ConjClassSpec":
        return cls(ELLIPTIC, float(theta))

    @classmethod
    def hyperbolic(cls, lam: float) -> "ConjClassSpec":
        return cls(HYPERBOLIC, float(lam))

    @classmethod
    def parabolic(cls, nonneg: bool = True) -> "ConjClassSpec":
        return cls(PARABOLIC_NONNEG if nonneg else PARABOLIC_NONPOS)

    @classmethod
    def identity(cls) -> "ConjClassSpec":
        return cls(IDENTITY_CLASS)

    def close_to(self, other: "ConjClassSpec", tol: float = 1e-9) -> bool:
        if self.kind != other.kind:
            return False
        if self.value is None:
            return other.value is None
        return other.value is not None and abs(self.value - other.value) <= tol

    def __str__(self) -> str:
        if self.kind == ELLIPTIC:
            return f"Elliptic(theta={self.value:.12g})"
        if self.kind == HYPERBOLIC:
            return f"Hyperbolic(lambda={self.value:.12g})"
        return {PARABOLIC_NONNEG: "ParabolicNonneg",
                PARABOLIC_NONPOS: "ParabolicNonpos",
                IDENTITY_CLASS: "Identity"}[self.kind]


def direction_form_values(m: np.ndarray, n: int = 360) -> np.ndarray:
    """det(v, m v) on n unit directions v; the sign scan used by classify."""
    phi = np.linspace(0.0, np.pi, n, endpoint=False)
    x, y = np.cos(phi), np.sin(phi)
    a, b, c, d = m.ravel()
    return c * x * x + (d - a) * x * y - b * y * y


def classify(g: GroupElement, tol: float = TAU_CLASS) -> ConjClassSpec:
    """Conjugacy class from |trace|, with oriented angle for elliptics.

    Elliptic elements rotate every direction the same way, so the sign of
    det(v, gv) at any v picks the representative conjugate to a
    counterclockwise rotation; theta = arccos of half its trace.
    Parabolic sign comes from the same form on the trace-2 representative.
    """
    m = g.m
    tr = g.trace
    at = abs(tr)
    if at < 2.0 - tol:
        # c entry of the counterclockwise representative is positive:
        # the form q(v) = c x^2 + (d-a) xy - b y^2 is definite of sign c
        mp = m if m[1, 0] > 0 else -m
        theta = float(np.arccos(np.clip((mp[0, 0] + mp[1, 1]) / 2.0, -1.0, 1.0)))
        return ConjClassSpec.elliptic(theta)
    if at > 2.0 + tol:
        return ConjClassSpec.hyperbolic((at + np.sqrt(at * at - 4.0)) / 2.0)
    if psl_dist(m, IDENTITY) <= tol:
        return ConjClassSpec.identity()
    mp = m if tr >= 0 else -m
    vals = direction_form_values(mp)
    lo, hi = float(vals.min()), float(vals.max())
    if max(abs(lo), abs(hi)) <= tol:
        raise DegenerateClassification(
            f"parabolic sign scan inconclusive: form range [{lo}, {hi}]")
    return ConjClassSpec.parabolic(nonneg=(abs(hi) >= abs(lo)))


def cone_test(gamma: LieElement, tol: float = TAU_CLASS) -> str:
    radius = float(np.hypot(gamma.delta, gamma.eps))
    alpha = gamma.alpha
    if gamma.norm() <= tol:
        return ZERO
    if alpha > 0 and abs(alpha - radius) <= tol:
        return NONNEG_BOUNDARY
    if alpha < 0 and abs(alpha + radius) <= tol:
        return NONPOS_BOUNDARY
    if alpha > radius:
        return POSITIVE
    if -alpha > radius:
        return NEGATIVE
    return INDEFINITE


def is_cone_nonneg(kind: str) -> bool:
    return kind in (POSITIVE, NONNEG_BOUNDARY, ZERO)


def is_cone_nonpos(kind: str) -> bool:
    return kind in (NEGATIVE, NONPOS_BOUNDARY, ZERO)


def t_function(g: GroupElement) -> float:
    """T(g) = c - b of the stored representative; sign-blind callers use |T|."""
    return float(g.m[1, 0] - g.m[0, 1])


def canonical_rep(spec: ConjClassSpec) -> GroupElement:
    if spec.kind == ELLIPTIC:
        return GroupElement.rotation(spec.value)
    if spec.kind == HYPERBOLIC:
        return GroupElement.diagonal(spec.value)
    if spec.kind == PARABOLIC_NONNEG:
        return GroupElement(np.array([[1.0, 0.0], [1.0, 1.0]]))
    if spec.kind == PARABOLIC_NONPOS:
        return GroupElement(np.array([[1.0, 0.0], [-1.0, 1.0]]))
    return GroupElement.identity()


def random_lie(rng: np.random.Generator, scale: float = 0.7) -> np.ndarray:
    a, b, c = rng.normal(0.0, scale, size=3)
    return np.array([[a, b], [c, -a]])


def random_in_class(spec: ConjClassSpec, seed, spread: float = 0.7) -> GroupElement:
    """Seeded conjugate h rep(spec) h^-1; the class is preserved exactly."""
    rng = np.random.default_rng(seed)
    h = sl2_exp(random_lie(rng, spread))
    rep = canonical_rep(spec).m
    hinv = np.array([[h[1, 1], -h[0, 1]], [-h[1, 0], h[0, 0]]])
    return GroupElement(h @ rep @ hinv)


# ---------------------------------------------------------------------------
# closed-form exp / log for traceless 2x2 matrices, batched over leading axes

def _cs_funcs(q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # C(q) = cos(sqrt(q)) and S(q) = sin(sqrt(q))/sqrt(q), continued through
    # q <= 0 as cosh/sinh; the series branch keeps them smooth at q = 0
    q = np.asarray(q, dtype=float)
    c = np.empty_like(q)
    s = np.empty_like(q)
    small = np.abs(q) < 1e-8
    pos = (q > 0) & ~small
    neg = (q < 0) & ~small
    w = np.sqrt(q[pos])
    c[pos] = np.cos(w)
    s[pos] = np.sin(w) / w
    w = np.sqrt(-q[neg])
    c[neg] = np.cosh(w)
    s[neg] = np.sinh(w) / w
    qq = q[small]
    c[small] = 1.0 - qq / 2.0 + qq * qq / 24.0
    s[small] = 1.0 - qq / 6.0 + qq * qq / 120.0
    return c, s


def sl2_exp(x: np.ndarray) -> np.ndarray:
    """Matrix exponential of traceless 2x2 input; x may be batched (...,2,2)."""
    x = np.asarray(x, dtype=float)
    q = x[..., 0, 0] * x[..., 1, 1] - x[..., 0, 1] * x[..., 1, 0]
    c, s = _cs_funcs(q)
    return c[..., None, None] * IDENTITY + s[..., None, None] * x


def _log_factor(t: np.ndarray) -> np.ndarray:
    # f(t) with log(m) = f * (m - t I), t = tr(m)/2; f = theta/sin(theta)
    # for t = cos(theta) < 1 and s/sinh(s) for t = cosh(s) > 1.  Both are
    # the same analytic function of u = 1 - t; series keeps t ~ 1 stable.
    t = np.asarray(t, dtype=float)
    f = np.empty_like(t)
    u = 1.0 - t
    small = np.abs(u) < 1e-6
    ell = (t < 1.0) & ~small
    hyp = (t > 1.0) & ~small
    f[ell] = np.arccos(t[ell]) / np.sqrt(1.0 - t[ell] ** 2)
    f[hyp] = np.arccosh(t[hyp]) / np.sqrt(t[hyp] ** 2 - 1.0)
    uu = u[small]
    f[small] = 1.0 + uu / 3.0 + 2.0 * uu * uu / 15.0
    return f


def sl2_log(m: np.ndarray) -> np.ndarray:
    """Principal log of det-1 matrices with tr > -2; batched (...,2,2)."""
    m = np.asarray(m, dtype=float)
    t = 0.5 * (m[..., 0, 0] + m[..., 1, 1])
    if np.any(t <= -1.0 + 1e-12):
        raise ValueError("principal log undefined at trace <= -2")
    out = _log_factor(t)[..., None, None] * (m - t[..., None, None] * IDENTITY)
    # kill the rounding residue on the diagonal so results are exactly traceless
    half_tr = 0.5 * (out[..., 0, 0] + out[..., 1, 1])
    out[..., 0, 0] -= half_tr
    out[..., 1, 1] -= half_tr
    return out


def mat_inv(m: np.ndarray) -> np.ndarray:
    """Inverse of det-1 matrices by adjugate; batched."""
    out = np.empty_like(m)
    out[..., 0, 0] = m[..., 1, 1]
    out[..., 1, 1] = m[..., 0, 0]
    out[..., 0, 1] = -m[..., 0, 1]
    out[..., 1, 0] = -m[..., 1, 0]
    return out


def cone_margins(x: np.ndarray) -> np.ndarray:
    """alpha - sqrt(delta^2 + eps^2) for a batch (...,2,2) of traceless x."""
    alpha = 0.5 * (x[..., 1, 0] - x[..., 0, 1])
    delta = 0.5 * (x[..., 1, 0] + x[..., 0, 1])
    eps = x[..., 0, 0]
    return alpha - np.hypot(delta, eps)
