"""Theta sums, canonical norms, unipotent period families, slope harness.

The lattice sum

    theta(z; tau) = sum_n exp(pi i n'tau n + 2 pi i n'z)

is truncated over a sup-norm box whose radius is chosen so that the bound

    #(shell r) * exp(-pi lambda_min(Im tau) r^2 + 2 pi r |Im z|_1)

sums to less than the requested tolerance over the discarded shells.  The
summation order (shells outward, lexicographic inside a shell) is fixed, so
results are bit-stable for identical inputs.

The genus-1 harness samples a one-parameter family with period matrix
j(t) = A log(t) / (2 pi i) + B along a geometric sequence of t values and
fits the growth rate of the canonical log-norm of the pairing between two
degree-zero section divisors against log|t|.  Each divisor is a difference
of two sections with distinct base points, so the four points stay pairwise
disjoint and the fitted slope can be compared with the exact Green's pairing
of the corresponding reductions on the cycle graph.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import ThetaDomainError, ThetaPoleError, TruncationError
from .graphs import Divisor, cycle_graph
from .green import green

DEFAULT_EPS = 1e-12
_MAX_RADIUS = 20_000
# relative cancellation beyond this marks the point as lying on a theta zero
_POLE_TOL = 1e-10
# beyond this, exp() inside the lattice sum can overflow a double
_MAX_LOG_SCALE = 700.0 / math.pi


def _promote_z(z) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(z, dtype=complex))
    if arr.ndim != 1:
        raise ThetaDomainError("z must be a complex vector")
    return arr


def _promote_tau(tau) -> np.ndarray:
    arr = np.atleast_2d(np.asarray(tau, dtype=complex))
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ThetaDomainError("tau must be a square complex matrix")
    return arr


class PeriodPoint:
    """Point (z, tau) with tau symmetric and Im(tau) positive definite."""

    __slots__ = ("z", "tau", "im_tau", "lambda_min")

    def __init__(self, z, tau):
        z = _promote_z(z)
        tau = _promote_tau(tau)
        if z.shape[0] != tau.shape[0]:
            raise ThetaDomainError("z and tau dimensions disagree")
        asym = np.max(np.abs(tau - tau.T))
        if asym > 1e-12 * (1.0 + np.max(np.abs(tau))):
            raise ThetaDomainError("tau is not symmetric")
        tau = (tau + tau.T) / 2.0
        im = tau.imag.copy()
        lam = float(np.linalg.eigvalsh(im)[0])
        if lam <= 0.0:
            raise ThetaDomainError("Im(tau) is not positive definite")
        z.setflags(write=False)
        tau.setflags(write=False)
        im.setflags(write=False)
        self.z = z
        self.tau = tau
        self.im_tau = im
        self.lambda_min = lam

    @property
    def g(self) -> int:
        return self.z.shape[0]


@lru_cache(maxsize=64)
def _lattice(g: int, radius: int) -> np.ndarray:
    """Integer points with sup-norm <= radius, shells outward, lex inside."""
    pts = sorted(
        np.ndindex(*(2 * radius + 1,) * g),
        key=lambda ix: (max(abs(k - radius) for k in ix), ix),
    )
    arr = np.asarray(pts, dtype=np.int64) - radius
    arr.setflags(write=False)
    return arr


def _shell_count(g: int, r: int) -> float:
    return 1.0 if r == 0 else float((2 * r + 1) ** g - (2 * r - 1) ** g)


def _truncation_radius(g: int, lam: float, im_z_l1: float, eps: float) -> int:
    """Smallest box radius whose discarded tail is provably below eps."""
    if eps <= 0.0:
        raise ThetaDomainError("eps must be positive")

    def shell_bound(r: int) -> float:
        expo = -math.pi * lam * r * r + 2.0 * math.pi * r * im_z_l1
        if expo > 700.0:
            raise TruncationError("lattice terms overflow double precision")
        return _shell_count(g, r) * math.exp(expo)

    r = 1
    while r <= _MAX_RADIUS:
        # ratio of consecutive shell bounds is at most 5^g * exp(...) < 1/2
        ratio_ok = (5.0 ** g) * math.exp(
            -math.pi * lam * (2 * r + 3) + 2.0 * math.pi * im_z_l1
        ) <= 0.5
        if ratio_ok and 2.0 * shell_bound(r + 1) < eps:
            return r
        r += 1
    raise TruncationError("truncation radius exceeds the allowed maximum")


def _theta_and_mass(p: PeriodPoint, eps: float) -> tuple[complex, float]:
    """Truncated sum and the total magnitude of its terms.

    The mass bounds the attainable cancellation: a value far below
    rounding-error times the mass means the point sits on the zero divisor.
    """
    im_z_l1 = float(np.sum(np.abs(p.z.imag)))
    radius = _truncation_radius(p.g, p.lambda_min, im_z_l1, eps)
    ns = _lattice(p.g, radius)
    quad = np.einsum("ij,jk,ik->i", ns, p.tau, ns)
    lin = ns @ p.z
    terms = np.exp(1j * math.pi * quad + 2j * math.pi * lin)
    return complex(np.sum(terms)), float(np.sum(np.abs(terms)))


def theta(z, tau, eps: float = DEFAULT_EPS) -> complex:
    """Truncated theta sum with absolute tail below eps."""
    value, _ = _theta_and_mass(PeriodPoint(z, tau), eps)
    return value


def log_theta_norm(z, tau, eps: float = DEFAULT_EPS, im_inv: np.ndarray | None = None) -> float:
    """log of the canonical theta norm; raises ThetaPoleError near a zero."""
    p = PeriodPoint(z, tau)
    sign, logdet = np.linalg.slogdet(p.im_tau)
    im_z = p.z.imag
    if im_inv is None:
        quad = float(im_z @ np.linalg.solve(p.im_tau, im_z))
    else:
        quad = float(im_z @ (im_inv @ im_z))
    value, mass = _theta_and_mass(p, eps)
    if abs(value) <= _POLE_TOL * mass:
        raise ThetaPoleError("theta vanishes at the requested point")
    return 0.25 * float(logdet) - math.pi * quad + math.log(abs(value))


def theta_norm(z, tau, eps: float = DEFAULT_EPS) -> float:
    """(det Im tau)^(1/4) exp(-pi Im z' (Im tau)^-1 Im z) |theta(z; tau)|."""
    p = PeriodPoint(z, tau)
    im_z = p.z.imag
    quad = float(im_z @ np.linalg.solve(p.im_tau, im_z))
    det = float(np.linalg.det(p.im_tau))
    return det ** 0.25 * math.exp(-math.pi * quad) * abs(theta(p.z, p.tau, eps))


def eta_norm(z, w, tau, eps: float = DEFAULT_EPS) -> float:
    """Canonical norm of the biextension section at classes (z, w).

    |theta(z+w) theta(0) / (theta(z) theta(w))| times the exponential
    correction; equals 1 when either argument is 0.  A vanishing theta in
    the denominator raises ThetaPoleError.
    """
    p = PeriodPoint(z, tau)
    q = PeriodPoint(w, tau)
    tz, mz = _theta_and_mass(p, eps)
    tw, mw = _theta_and_mass(PeriodPoint(q.z, p.tau), eps)
    if abs(tz) <= _POLE_TOL * mz or abs(tw) <= _POLE_TOL * mw:
        raise ThetaPoleError("theta vanishes at a section argument")
    tzw = theta(p.z + q.z, p.tau, eps)
    t0 = theta(np.zeros(p.g), p.tau, eps)
    cross = float(p.z.imag @ np.linalg.solve(p.im_tau, q.z.imag))
    return abs(tzw * t0 / (tz * tw)) * math.exp(-2.0 * math.pi * cross)


@dataclass(frozen=True)
class SectionPath:
    """Path z(t) = alpha . j(t) + beta with exact rational fractions alpha."""

    alpha: tuple[Fraction, ...]
    beta: tuple[complex, ...]

    def at(self, tau: np.ndarray) -> np.ndarray:
        a = np.array([float(x) for x in self.alpha])
        return a @ tau + np.asarray(self.beta, dtype=complex)


class PeriodFamily:
    """Unipotent one-parameter family j(t) = A log(t)/(2 pi i) + B."""

    __slots__ = ("A", "B", "sections")

    def __init__(self, A, B, sections: Sequence[SectionPath] = ()):
        A = np.atleast_2d(np.asarray(A))
        if not np.issubdtype(A.dtype, np.integer):
            if not np.allclose(A, np.round(np.real(A))):
                raise ThetaDomainError("A must be integral")
            A = np.round(np.real(A)).astype(np.int64)
        if A.shape[0] != A.shape[1] or not np.array_equal(A, A.T):
            raise ThetaDomainError("A must be square and symmetric")
        if np.linalg.eigvalsh(A.astype(float))[0] < -1e-9:
            raise ThetaDomainError("A must be positive semi-definite")
        B = _promote_tau(B)
        if B.shape != A.shape:
            raise ThetaDomainError("A and B shapes disagree")
        if np.max(np.abs(B - B.T)) > 1e-12 * (1.0 + np.max(np.abs(B))):
            raise ThetaDomainError("B must be symmetric")
        for s in sections:
            if len(s.alpha) != A.shape[0] or len(s.beta) != A.shape[0]:
                raise ThetaDomainError("section dimension disagrees with A")
        A.setflags(write=False)
        B.setflags(write=False)
        self.A = A
        self.B = B
        self.sections = tuple(sections)

    @property
    def g(self) -> int:
        return self.A.shape[0]


def u_of(t: complex) -> float:
    return -math.log(abs(t)) / (2.0 * math.pi)


def period(fam: PeriodFamily, t: complex) -> np.ndarray:
    """j(t) with the principal log branch; Im j(t) must be positive definite."""
    t = complex(t)
    if not 0.0 < abs(t) < 1.0:
        raise ThetaDomainError("t must lie in the punctured unit disk")
    tau = fam.A * (cmath.log(t) / (2j * math.pi)) + fam.B
    PeriodPoint(np.zeros(fam.g), tau)  # validates Im positive definite
    return tau


def im_inverse(fam: PeriodFamily, t: complex) -> np.ndarray:
    """(Im j(t))^-1; converges entrywise as t -> 0."""
    return np.linalg.inv(period(fam, t).imag)


@dataclass(frozen=True)
class SlopeReport:
    """Samples and fit of the canonical log-norm against log|t|."""

    t: tuple[float, ...]
    log_norms: tuple[float, ...]
    fitted_slope: float
    predicted_slope: Fraction
    abs_error: float
    residual_band: float
    resamples: int

    def to_json(self) -> dict:
        p = self.predicted_slope
        return {
            "t": list(self.t),
            "F": list(self.log_norms),
            "fitted_slope": self.fitted_slope,
            "predicted_slope": f"{p.numerator}/{p.denominator}",
            "abs_error": self.abs_error,
            "residual_band": self.residual_band,
            "resamples": self.resamples,
        }


def geometric_sequence(t_max: float, t_min: float, steps: int) -> tuple[float, ...]:
    if not 0.0 < t_min < t_max < 1.0 or steps < 4:
        raise ThetaDomainError("need 0 < t_min < t_max < 1 and at least 4 steps")
    return tuple(float(x) for x in np.geomspace(t_max, t_min, steps))


def _check_geometric(ts: Sequence[float]) -> None:
    if len(ts) < 4:
        raise ThetaDomainError("need at least 4 sample points")
    if any(not 0.0 < t < 1.0 for t in ts):
        raise ThetaDomainError("t values must lie in (0, 1)")
    ratios = [ts[i + 1] / ts[i] for i in range(len(ts) - 1)]
    if any(r >= 1.0 for r in ratios):
        raise ThetaDomainError("t values must decrease")
    if max(ratios) - min(ratios) > 1e-9 * max(ratios):
        raise ThetaDomainError("t values must form a geometric sequence")


def _pairing_log_norm(z: complex, w: complex, tau: np.ndarray,
                      sigma: complex, eps: float, im_inv: np.ndarray) -> float:
    """Canonical log-norm of the pairing of [z+s1]-[s1] with [w+s2]-[s2].

    Assembled from the odd-shifted theta-norm kernel at the four pairwise
    differences; sigma = s1 - s2 keeps the four sections disjoint.
    """
    c0 = (1.0 + tau[0, 0]) / 2.0

    def kern(v: complex) -> float:
        return log_theta_norm([v + c0], tau, eps, im_inv=im_inv)

    return kern(z - w + sigma) - kern(z + sigma) - kern(w - sigma) + kern(sigma)


def slope_check(
    fam: PeriodFamily,
    graph_prediction: Fraction,
    t_sequence: Sequence[float],
    eps: float = DEFAULT_EPS,
    max_resamples: int = 8,
) -> SlopeReport:
    """Sample the pairing log-norm along t_sequence and fit its slope.

    Genus-1 families with two section paths only.  The fitted slope is
    compared against the exact graph prediction; theta zeros along the path
    trigger a deterministic resample with perturbed base points.
    """
    if fam.g != 1:
        raise ThetaDomainError("the slope harness handles genus-1 families only")
    if len(fam.sections) != 2:
        raise ThetaDomainError("exactly two section paths are required")
    ts = [float(t) for t in t_sequence]
    _check_geometric(ts)
    if int(fam.A[0, 0]) * u_of(ts[-1]) > _MAX_LOG_SCALE:
        raise TruncationError("t_sequence descends past the underflow guard")

    taus = [period(fam, t) for t in ts]
    invs = [im_inverse(fam, t) for t in ts]
    zs = [fam.sections[0].at(tau)[0] for tau in taus]
    ws = [fam.sections[1].at(tau)[0] for tau in taus]

    values: list[float] | None = None
    resamples = 0
    for attempt in range(max_resamples):
        sigma = complex(0.31 - 0.84 + 0.0137 * attempt, 0.0)
        try:
            values = [
                _pairing_log_norm(z, w, tau, sigma, eps, iv)
                for z, w, tau, iv in zip(zs, ws, taus, invs)
            ]
            break
        except ThetaPoleError:
            resamples += 1
    if values is None:
        raise ThetaPoleError("could not avoid theta zeros along the path")

    x = np.log(np.abs(ts))
    fitted = float(np.polyfit(x, values, 1)[0])
    predicted = Fraction(graph_prediction)
    residuals = np.asarray(values) - float(predicted) * x
    last_decade = np.asarray(ts) <= 10.0 * ts[-1]
    band = float(residuals[last_decade].max() - residuals[last_decade].min())
    return SlopeReport(
        t=tuple(ts),
        log_norms=tuple(float(v) for v in values),
        fitted_slope=fitted,
        predicted_slope=predicted,
        abs_error=abs(fitted - float(predicted)),
        residual_band=band,
        resamples=resamples,
    )


def cycle_family(N: int, a: int, b: int, im_b: float = 1.0,
                 betas: tuple[complex, complex] = (0.13, 0.271)) -> PeriodFamily:
    """Genus-1 family with A = (N) and sections at fractions a/N and b/N."""
    if N < 1:
        raise ThetaDomainError("N must be a positive integer")
    return PeriodFamily(
        [[N]],
        [[1j * im_b]],
        sections=(
            SectionPath((Fraction(a, N),), (complex(betas[0]),)),
            SectionPath((Fraction(b, N),), (complex(betas[1]),)),
        ),
    )


def predicted_cycle_slope(N: int, a: int, b: int) -> Fraction:
    """Green's pairing of the section reductions on the N-cycle."""
    graph = cycle_graph(N)
    d = Divisor.delta(f"C{a % N}") - Divisor.delta("C0")
    e = Divisor.delta(f"C{b % N}") - Divisor.delta("C0")
    return green(graph, d, e)
