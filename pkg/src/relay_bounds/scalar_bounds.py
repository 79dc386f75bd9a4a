"""Entropy-gap bound functions for relay-style side information.

All quantities are entropy rates in nats per channel use.  The module
evaluates, in closed and in variational form, the functions that bound the
destination-side conditional entropy rate ``h2`` of a relay message in terms
of the source-side rate ``h1``:

* Gaussian observation pair:   h2 <= c(h1) where
      c(h) = min_{t>0} { t + h / (1 - e^{-2t}) }
           = 0.5*ln(1 + h + sqrt(h^2 + 2h)) + 0.5*(h + sqrt(h^2 + 2h))
* relaxed Gaussian baseline:   h2 <= h1 + sqrt(2*h1)
* implicit Gaussian bound:     h2 - h1 <= 0.5*ln(1 + 2*h2)
* bounded-density channels:    h2 <= c_alpha(h1) where
      c_alpha(h) = min_{t>0} { (alpha-1)*t + h / (1 - e^{-t}) }
  and alpha >= 1 is the peak output-density ratio of the channel.

Each closed form is paired with an independent numerical oracle (golden-
section minimization of the variational objective), and each bound has an
inverse used by the capacity-bound modules.  Everything here is a pure
function; there is no shared mutable state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

# Entropy rates above this are rejected: the closed forms are still finite
# there, but the bounds stop being meaningful long before and capping keeps
# every intermediate quantity comfortably inside IEEE double range.
RATE_CAP = 1e15

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Tolerance:
    """Absolute tolerance and iteration budget for the iterative solvers."""

    abs_tol: float = 1e-10
    max_iter: int = 200

    def __post_init__(self) -> None:
        if not math.isfinite(self.abs_tol) or self.abs_tol <= 0.0:
            raise DomainError(f"abs_tol must be a positive finite number, got {self.abs_tol!r}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise DomainError(f"max_iter must be a positive integer, got {self.max_iter!r}")


DEFAULT_TOL = Tolerance()


def require_rate(value: float, name: str = "h") -> float:
    """Validate a nonnegative, finite entropy rate in nats."""
    x = float(value)
    if math.isnan(x) or math.isinf(x):
        raise DomainError(f"{name} must be finite, got {value!r}")
    if x < 0.0:
        raise DomainError(f"{name} must be nonnegative, got {x}")
    if x > RATE_CAP:
        raise DomainError(f"{name}={x} exceeds the supported range (<= {RATE_CAP} nats)")
    return x


def require_alpha(value: float, name: str = "alpha") -> float:
    """Validate a peak density ratio (must be >= 1)."""
    a = float(value)
    if math.isnan(a) or math.isinf(a):
        raise DomainError(f"{name} must be finite, got {value!r}")
    if a < 1.0:
        raise DomainError(f"{name} must be >= 1 (density peak over a probability measure), got {a}")
    return a


# ---------------------------------------------------------------------------
# Gaussian entropy-gap bound
# ---------------------------------------------------------------------------


def gauss_gap_closed(h: float) -> float:
    """Closed-form Gaussian entropy-gap bound c(h).

    c(h) = 0.5*ln(1 + h + sqrt(h^2 + 2h)) + 0.5*(h + sqrt(h^2 + 2h)),
    strictly increasing with c(0) = 0, c(h) >= h, and small-h behaviour
    c(h) = sqrt(2h) + h/2 + O(h^{3/2}).
    """
    h = require_rate(h)
    if h == 0.0:
        return 0.0
    s = math.sqrt(h) * math.sqrt(h + 2.0)  # sqrt(h^2 + 2h) without underflow at small h
    return 0.5 * math.log1p(h + s) + 0.5 * (h + s)


def gauss_gap_variational(h: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """Numerical oracle for c(h): minimize t + h/(1 - e^{-2t}) over t > 0.

    Uses golden-section search on a bracket found by geometric expansion; it
    never consults the closed form.
    """
    h = require_rate(h)
    if h == 0.0:
        return 0.0

    def objective(t: float) -> float:
        return t + h / -math.expm1(-2.0 * t)

    return _minimize_unimodal(objective, tol)


def gauss_gap_relaxed(h: float) -> float:
    """Relaxed Gaussian baseline h + sqrt(2h) (weaker than gauss_gap_closed)."""
    h = require_rate(h)
    return h + math.sqrt(2.0 * h)


def gauss_gap_inverse(c0: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """Solve c(h) = c0 for h by bisection on [0, c0].

    The bracket is valid because c(h) >= h; the residual stopping rule
    |c(h) - c0| <= abs_tol also pins h to abs_tol since c' > 1 everywhere.
    """
    c0 = require_rate(c0, "c0")
    if c0 == 0.0:
        return 0.0
    return _bisect_residual(gauss_gap_closed, c0, 0.0, c0, tol)


def relaxed_gap_inverse(c0: float) -> float:
    """Closed-form inverse of h -> h + sqrt(2h)."""
    c0 = require_rate(c0, "c0")
    # positive root s of s^2 + sqrt(2) s = c0 with s = sqrt(h), written in a
    # cancellation-free form
    s = 2.0 * c0 / (math.sqrt(2.0 + 4.0 * c0) + math.sqrt(2.0))
    return s * s


# ---------------------------------------------------------------------------
# Implicit Gaussian bound  h2 - h1 <= 0.5*ln(1 + 2*h2)
# ---------------------------------------------------------------------------


def lemma3_gap(h2: float) -> float:
    """Largest allowed excess h2 - h1 at destination rate h2: 0.5*ln(1 + 2*h2)."""
    h2 = require_rate(h2, "h2")
    return 0.5 * math.log1p(2.0 * h2)


def lemma3_h2max(h1: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """Largest h2 compatible with source rate h1 under the implicit bound.

    Inverts g(h2) = h2 - 0.5*ln(1 + 2*h2), which is strictly increasing with
    g(0) = 0, by bisection; the bracket is expanded geometrically from a seed
    interval that provably contains the root.
    """
    h1 = require_rate(h1, "h1")
    if h1 == 0.0:
        return 0.0

    def g(h2: float) -> float:
        return h2 - 0.5 * math.log1p(2.0 * h2)

    lo = h1  # g(h) <= h, so the root is >= h1
    width = 0.5 * math.log1p(2.0 * (h1 + 2.0)) + 1.0
    hi = h1 + width
    for _ in range(tol.max_iter):
        if g(hi) >= h1:
            break
        lo = hi
        width *= 2.0
        hi = h1 + width
    else:
        raise ConvergenceError(f"could not bracket the implicit-bound inverse for h1={h1}")

    for _ in range(tol.max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:  # bracket exhausted at double precision
            return mid
        if g(mid) < h1:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol.abs_tol:
            return 0.5 * (lo + hi)
    raise ConvergenceError(
        f"implicit-bound inverse did not reach width {tol.abs_tol} in {tol.max_iter} iterations"
    )


# ---------------------------------------------------------------------------
# Bounded-density entropy-gap bound
# ---------------------------------------------------------------------------


def bdd_gap_closed(h: float, alpha: float) -> float:
    """Closed-form bounded-density entropy-gap bound c_alpha(h).

    With beta = h/(alpha-1):
        c_alpha(h) = (alpha-1) * [ ln(1 + beta/2 + sqrt(beta + beta^2/4))
                                   + beta/2 + sqrt(beta + beta^2/4) ].
    alpha = 1 is the exact limit c_1(h) = h.
    """
    h = require_rate(h)
    alpha = require_alpha(alpha)
    if h == 0.0:
        return 0.0
    eps = alpha - 1.0
    if eps == 0.0:
        return h
    beta = h / eps
    if eps < 1e-12 and beta > 1e4:
        # large-beta expansion: c_alpha(h) = h + eps*(1 + ln(beta)) + O(eps/beta^2);
        # below beta ~ 1e4 the direct form is already cancellation-free
        return h + eps * (1.0 + math.log(beta))
    root = math.sqrt(beta) * math.sqrt(1.0 + 0.25 * beta)  # sqrt(beta + beta^2/4)
    return eps * (math.log1p(0.5 * beta + root) + 0.5 * beta + root)


def bdd_gap_variational(h: float, alpha: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """Numerical oracle for c_alpha(h): minimize (alpha-1)*t + h/(1 - e^{-t})."""
    h = require_rate(h)
    alpha = require_alpha(alpha)
    if h == 0.0:
        return 0.0
    if alpha == 1.0:
        return h  # infimum as t -> infinity
    eps = alpha - 1.0

    def objective(t: float) -> float:
        return eps * t + h / -math.expm1(-t)

    return _minimize_unimodal(objective, tol)


def bdd_gap_inverse(c0: float, alpha: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """Solve c_alpha(h) = c0 for h by bisection on [0, c0] (valid: c_alpha(h) >= h)."""
    c0 = require_rate(c0, "c0")
    alpha = require_alpha(alpha)
    if c0 == 0.0:
        return 0.0
    if alpha == 1.0:
        return c0  # c_1 is the identity
    return _bisect_residual(lambda x: bdd_gap_closed(x, alpha), c0, 0.0, c0, tol)


# ---------------------------------------------------------------------------
# Solver internals
# ---------------------------------------------------------------------------


def _bracket_minimum(f, t0: float, max_expand: int) -> tuple[float, float]:
    """Bracket the minimizer of a unimodal f on (0, inf) by geometric expansion."""
    t1, f1 = t0, f(t0)
    t2 = 2.0 * t1
    f2 = f(t2)
    if f2 < f1:
        for _ in range(max_expand):
            t3 = 2.0 * t2
            f3 = f(t3)
            if f3 >= f2:
                return t1, t3
            t1, t2, f2 = t2, t3, f3
        raise ConvergenceError("bracket expansion failed while walking up")
    for _ in range(max_expand):
        t_low = 0.5 * t1
        f_low = f(t_low)
        if f_low >= f1:
            return t_low, t2
        t2, t1, f1 = t1, t_low, f_low
    raise ConvergenceError("bracket expansion failed while walking down")


def _minimize_unimodal(f, tol: Tolerance, t0: float = 1e-6) -> float:
    """Golden-section minimum value of a unimodal f on (0, inf)."""
    lo, hi = _bracket_minimum(f, t0, max_expand=400)
    width_goal = tol.abs_tol * max(1.0, hi)
    x1 = hi - _INV_GOLDEN * (hi - lo)
    x2 = lo + _INV_GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(max(tol.max_iter, 100)):
        if hi - lo <= width_goal:
            return min(f1, f2)
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_GOLDEN * (hi - lo)
            f2 = f(x2)
    raise ConvergenceError(
        f"golden-section search did not reach bracket width {width_goal} "
        f"within {max(tol.max_iter, 100)} iterations"
    )


def _bisect_residual(f, target: float, lo: float, hi: float, tol: Tolerance) -> float:
    """Bisect an increasing f to |f(x) - target| <= abs_tol on [lo, hi]."""
    for _ in range(tol.max_iter):
        mid = 0.5 * (lo + hi)
        resid = f(mid) - target
        if abs(resid) <= tol.abs_tol:
            return mid
        if mid <= lo or mid >= hi:  # adjacent doubles and still above tolerance
            break
        if resid < 0.0:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(
        f"bisection did not reach residual {tol.abs_tol} for target {target} "
        f"within {tol.max_iter} iterations"
    )
