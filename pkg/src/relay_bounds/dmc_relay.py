"""Capacity upper bound for primitive relay channels with bounded density.

For a discrete memoryless channel W = P(Y|X) = P(Z|X) the peak density ratio
is alpha = sum_y max_x W(y|x) (equivalently exp I_inf), and the capacity with
relay rate C0 satisfies

    C(C0) <= max_p min{ I(X;Y,Z),  I(X;Y) + C0 - c_alpha^{-1}(C0) }

where the outer maximum runs over input distributions p and c_alpha is the
bounded-density entropy-gap bound from scalar_bounds.  The cutset analogue
drops the penalty term.  Both objectives are concave in p (mutual information
is concave in the input law and a min of concave functions stays concave), so
projected gradient ascent with multistarts finds the global maximum; a
Frank-Wolfe-style stationarity gap provides a suboptimality certificate and a
dense simplex grid cross-checks small alphabets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DimensionError, DomainError
from .scalar_bounds import DEFAULT_TOL, Tolerance, bdd_gap_inverse, require_rate

_ROW_SUM_TOL = 1e-12
_TINY = 1e-300


@dataclass(frozen=True)
class DiscreteChannel:
    """Row-stochastic |X| x |Y| transition matrix W(y|x)."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2:
            raise DomainError(f"channel matrix must be 2-d, got shape {m.shape}")
        if m.shape[0] < 2 or m.shape[1] < 2:
            raise DomainError(f"channel needs at least 2 inputs and 2 outputs, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise DomainError("channel matrix contains non-finite entries")
        if np.any(m < 0.0) or np.any(m > 1.0):
            raise DomainError("channel entries must lie in [0, 1]")
        sums = m.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > _ROW_SUM_TOL):
            raise DomainError(f"channel rows must sum to 1 within {_ROW_SUM_TOL}, got {sums}")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n_inputs(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_outputs(self) -> int:
        return self.matrix.shape[1]

    @staticmethod
    def bsc(crossover: float) -> "DiscreteChannel":
        """Binary symmetric channel with the given crossover probability."""
        p = float(crossover)
        if not (0.0 <= p <= 1.0):
            raise DomainError(f"crossover must be in [0, 1], got {p}")
        return DiscreteChannel(np.array([[1.0 - p, p], [p, 1.0 - p]]))


@dataclass(frozen=True)
class InputDistribution:
    """Probability vector over the channel input alphabet."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 1:
            raise DomainError(f"input distribution must be 1-d, got shape {p.shape}")
        if not np.all(np.isfinite(p)) or np.any(p < 0.0):
            raise DomainError("input probabilities must be finite and nonnegative")
        if abs(p.sum() - 1.0) > _ROW_SUM_TOL:
            raise DomainError(f"input probabilities must sum to 1 within {_ROW_SUM_TOL}")
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @staticmethod
    def uniform(k: int) -> "InputDistribution":
        return InputDistribution(np.full(k, 1.0 / k))


@dataclass(frozen=True)
class DmcBoundReport:
    """Optimized discrete-channel bound with its cutset analogue.

    penalty = C0 - c_alpha^{-1}(C0) is the residual relay contribution that
    replaces C0 in the cutset expression, so the improvement over the cutset
    bound is c_alpha^{-1}(C0).  suboptimality_gap certifies how far cor2_bound
    can be below the true maximum (certified means gap <= 1e-8).
    """

    alpha: float
    penalty: float
    cutset: float
    cor2_bound: float
    argmax_input: InputDistribution
    suboptimality_gap: float
    certified: bool

    def __post_init__(self) -> None:
        if self.cor2_bound > self.cutset + 1e-9:
            raise DomainError(
                f"cor2 bound {self.cor2_bound} exceeds its cutset analogue {self.cutset}"
            )


# ---------------------------------------------------------------------------
# alpha, I_inf, and mutual informations
# ---------------------------------------------------------------------------


def alpha_of_channel(w: DiscreteChannel) -> float:
    """Peak density ratio alpha = sum_y max_x W(y|x); equals 1 iff all rows agree."""
    return float(w.matrix.max(axis=0).sum())


def i_infinity(w: DiscreteChannel) -> float:
    """Order-infinity mutual information ln(alpha) of the channel."""
    return math.log(alpha_of_channel(w))


def i_infinity_minimax_oracle(w: DiscreteChannel, grid_steps: int | None = None) -> float:
    """Independent minimax evaluation of I_inf.

    Minimizes over reference output laws Q the essential-sup ratio
    max_{x,y: W(y|x)>0} W(y|x)/Q(y), scanning a dense simplex grid plus the
    analytic optimum Q*(y) proportional to max_x W(y|x).
    """
    m = w.matrix
    peak = m.max(axis=0)
    candidates = [peak / peak.sum()]
    ny = w.n_outputs
    if grid_steps is None:
        grid_steps = {2: 4000, 3: 400, 4: 100}.get(ny, 40)
    grid = simplex_grid(ny, grid_steps)
    best = math.inf
    support = m > 0.0
    for q in candidates + [grid[i] for i in range(grid.shape[0])]:
        qmat = np.broadcast_to(q, m.shape)
        if np.any(qmat[support] <= 0.0):
            continue  # ratio is infinite off the support of Q
        ratio = float((m[support] / qmat[support]).max())
        best = min(best, ratio)
    return math.log(best)


def _xlogx_rows(m: np.ndarray) -> np.ndarray:
    """Row sums of W*ln(W) with the 0*ln(0) = 0 convention."""
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(m > 0.0, m * np.log(np.maximum(m, _TINY)), 0.0)
    return terms.sum(axis=1)


def _entropy(p: np.ndarray) -> float:
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0.0, p * np.log(np.maximum(p, _TINY)), 0.0)
    return float(-terms.sum())


def mutual_info(p: InputDistribution, w: DiscreteChannel) -> float:
    """Single-letter mutual information I(X;Y) in nats, 0*ln(0) = 0."""
    probs = p.probs
    if probs.shape[0] != w.n_inputs:
        raise DimensionError(
            f"input distribution has {probs.shape[0]} entries, channel expects {w.n_inputs}"
        )
    m = w.matrix
    q = probs @ m
    value = float(probs @ _xlogx_rows(m)) + _entropy(q)
    return max(value, 0.0)  # clamp -0.0 / rounding at independence


def product_channel(w: DiscreteChannel) -> DiscreteChannel:
    """Two independent uses of W fed the same input: W2((y,z)|x) = W(y|x)W(z|x)."""
    m = w.matrix
    rows = np.einsum("xy,xz->xyz", m, m).reshape(w.n_inputs, -1)
    # rows sum to (row sum)^2; renormalize away the squared rounding residue
    rows = rows / rows.sum(axis=1, keepdims=True)
    return DiscreteChannel(rows)


def mutual_info_product(p: InputDistribution, w: DiscreteChannel) -> float:
    """I(X;Y,Z) for the product observation (Y,Z) conditionally iid given X."""
    return mutual_info(p, product_channel(w))


# ---------------------------------------------------------------------------
# Concave maximization over the input simplex
# ---------------------------------------------------------------------------


def project_to_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-based)."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    idx = np.arange(1, v.shape[0] + 1)
    rho = np.nonzero(u * idx > (css - 1.0))[0][-1]
    theta = (css[rho] - 1.0) / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


def simplex_grid(k: int, steps: int) -> np.ndarray:
    """All probability vectors with denominators `steps` on the k-simplex."""
    if k < 1 or steps < 1:
        raise DomainError("simplex_grid needs k >= 1 and steps >= 1")
    if k == 1:
        return np.ones((1, 1))
    if k == 2:
        i = np.arange(steps + 1)
        return np.stack([i, steps - i], axis=1) / steps
    if k == 3:
        i, j = np.meshgrid(np.arange(steps + 1), np.arange(steps + 1), indexing="ij")
        mask = i + j <= steps
        i, j = i[mask], j[mask]
        return np.stack([i, j, steps - i - j], axis=1) / steps
    if k == 4:
        rng_ = np.arange(steps + 1, dtype=np.int32)
        i, j, l = np.meshgrid(rng_, rng_, rng_, indexing="ij")
        mask = (i.astype(np.int64) + j + l) <= steps
        i, j, l = i[mask], j[mask], l[mask]
        return np.stack([i, j, l, steps - i - j - l], axis=1).astype(float) / steps
    raise DomainError("simplex_grid supports up to 4 symbols")


class _RelayObjective:
    """min{ I(X;Y,Z), I(X;Y) + penalty } with supergradient and certificate."""

    _KINK_TOL = 1e-12

    def __init__(self, w: DiscreteChannel, penalty: float):
        self.w1 = w.matrix
        self.w2 = product_channel(w).matrix
        self.rowh1 = _xlogx_rows(self.w1)
        self.rowh2 = _xlogx_rows(self.w2)
        self.penalty = float(penalty)

    def _branch_data(self, p: np.ndarray) -> tuple[float, float, np.ndarray, np.ndarray]:
        q1 = p @ self.w1
        q2 = p @ self.w2
        kl1 = self.rowh1 - self.w1 @ np.log(np.maximum(q1, _TINY))
        kl2 = self.rowh2 - self.w2 @ np.log(np.maximum(q2, _TINY))
        joint = float(p @ kl2)
        direct = float(p @ kl1) + self.penalty
        return joint, direct, kl2, kl1

    def value(self, p: np.ndarray) -> float:
        joint, direct, _, _ = self._branch_data(p)
        return min(joint, direct)

    def evaluate(self, p: np.ndarray) -> tuple[float, np.ndarray, float]:
        """Return (value, ascent supergradient, stationarity gap).

        The gap is min over supergradients g in the hull of the two branch
        gradients of max_i g_i - g.p; for a concave objective any supergradient
        makes that a valid suboptimality bound, and at a kink the minimizing
        mixture is also the best ascent direction.
        """
        joint, direct, g_joint, g_direct = self._branch_data(p)
        if joint < direct - self._KINK_TOL:
            g = g_joint
            return joint, g, float(g.max() - g @ p)
        if direct < joint - self._KINK_TOL:
            g = g_direct
            return direct, g, float(g.max() - g @ p)
        g, gap = _best_mixture_direction(p, g_joint, g_direct)
        return min(joint, direct), g, gap


def _best_mixture_direction(
    p: np.ndarray, g_joint: np.ndarray, g_direct: np.ndarray
) -> tuple[np.ndarray, float]:
    """Mixture of the branch gradients with the smallest Frank-Wolfe gap.

    gap(lam) = max_i g(lam)_i - g(lam).p is convex piecewise-linear in lam;
    a coarse scan plus golden-section refinement localizes its minimum.
    """

    def gap_at(lam: float) -> float:
        g = lam * g_joint + (1.0 - lam) * g_direct
        return float(g.max() - g @ p)

    lams = np.linspace(0.0, 1.0, 21)
    gaps = [gap_at(lam) for lam in lams]
    j = int(np.argmin(gaps))
    lo = lams[max(j - 1, 0)]
    hi = lams[min(j + 1, len(lams) - 1)]
    inv_golden = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv_golden * (hi - lo)
    x2 = lo + inv_golden * (hi - lo)
    f1, f2 = gap_at(x1), gap_at(x2)
    for _ in range(60):
        if hi - lo <= 1e-13:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_golden * (hi - lo)
            f1 = gap_at(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_golden * (hi - lo)
            f2 = gap_at(x2)
    best_lam = x1 if f1 <= f2 else x2
    candidates = [lams[j], best_lam]
    best_lam = min(candidates, key=gap_at)
    g = best_lam * g_joint + (1.0 - best_lam) * g_direct
    return g, gap_at(best_lam)


def _ascend(
    objective, p0: np.ndarray, gap_tol: float, max_iter: int
) -> tuple[float, np.ndarray, float]:
    """Projected gradient ascent with step halving from a single start."""
    p = p0
    value, grad, gap = objective(p)
    step = 0.25
    for _ in range(max_iter):
        if gap <= gap_tol:
            break
        moved = False
        s = step
        while s >= 1e-16:
            cand = project_to_simplex(p + s * grad)
            v_cand, g_cand, gap_cand = objective(cand)
            if v_cand > value + 1e-15:
                p, value, grad, gap = cand, v_cand, g_cand, gap_cand
                step = min(2.0 * s, 64.0)
                moved = True
                break
            s *= 0.5
        if not moved:
            break  # no ascent along the chosen supergradient; gap is the certificate
    return value, p, gap


def _polish(
    obj: _RelayObjective,
    p: np.ndarray,
    target_gap: float = 1e-10,
    max_rounds: int = 1000,
) -> tuple[float, np.ndarray, float]:
    """Multiplicative (Blahut-Arimoto style) balance steps p <- p*e^g / Z.

    Gradient ascent leaves the support gradient slightly unbalanced, which a
    first-order certificate cannot distinguish from true suboptimality; the
    multiplicative fixed point equalizes it geometrically.  Steps are guarded
    so the true objective never decreases; the returned gap is the best
    certificate min_visited(value + fw_gap) minus the best value seen.
    """
    value, grad, gap = obj.evaluate(p)
    best_value, best_p = value, p
    upper = value + gap
    for _ in range(max_rounds):
        if upper - best_value <= target_gap:
            break
        z = p * np.exp(grad - grad.max())
        total = z.sum()
        if not np.isfinite(total) or total <= 0.0:
            break
        p_next = z / total
        v_next, g_next, gap_next = obj.evaluate(p_next)
        if v_next < value - 1e-13:
            break
        p, value, grad, gap = p_next, v_next, g_next, gap_next
        upper = min(upper, value + gap)
        if value > best_value:
            best_value, best_p = value, p
    return best_value, best_p, max(upper - best_value, 0.0)


def _maximize_relay_objective(
    obj: _RelayObjective,
    k: int,
    seed: int,
    n_starts: int,
    gap_tol: float = 1e-8,
    max_iter: int = 500,
) -> tuple[float, np.ndarray, float]:
    """Multistart ascent plus balance polish; returns (value, argmax, gap)."""
    rng = np.random.default_rng(seed)
    starts = [np.full(k, 1.0 / k)]
    starts += [rng.dirichlet(np.full(k, 0.35)) for _ in range(max(n_starts - 1, 0))]
    best_value, best_p, best_gap = -math.inf, starts[0], math.inf
    for p0 in starts:
        value, p, gap = _ascend(obj.evaluate, p0, gap_tol, max_iter)
        if value > best_value + 1e-15 or (abs(value - best_value) <= 1e-15 and gap < best_gap):
            best_value, best_p, best_gap = value, p, gap
    if best_gap > gap_tol:
        best_value, best_p, best_gap = _polish(obj, best_p)
    return best_value, best_p, best_gap


def _grid_refine(
    obj: _RelayObjective, k: int, value: float, steps: int = 200
) -> tuple[float, np.ndarray | None]:
    """Best objective value over the dense simplex grid (belt-and-suspenders)."""
    grid = simplex_grid(k, steps)
    best_value, best_p = value, None
    chunk = 65536
    for start in range(0, grid.shape[0], chunk):
        block = grid[start : start + chunk]
        q1 = block @ obj.w1
        q2 = block @ obj.w2
        with np.errstate(divide="ignore", invalid="ignore"):
            lq1 = np.log(np.maximum(q1, _TINY))
            lq2 = np.log(np.maximum(q2, _TINY))
        direct = block @ obj.rowh1 - (q1 * lq1).sum(axis=1) + obj.penalty
        joint = block @ obj.rowh2 - (q2 * lq2).sum(axis=1)
        values = np.minimum(joint, direct)
        i = int(values.argmax())
        if values[i] > best_value:
            best_value = float(values[i])
            best_p = block[i].copy()
    return best_value, best_p


def _optimize(
    w: DiscreteChannel,
    penalty: float,
    seed: int,
    n_starts: int,
    grid_check: bool | None,
) -> tuple[float, np.ndarray, float]:
    obj = _RelayObjective(w, penalty)
    k = w.n_inputs
    value, p, gap = _maximize_relay_objective(obj, k, seed, n_starts)
    if grid_check is None:
        grid_check = k <= 3  # mesh-200 grid is cheap below 4 symbols
    if grid_check:
        if k > 4:
            raise DomainError("grid validation is only available for up to 4 input symbols")
        grid_value, grid_p = _grid_refine(obj, k, value)
        if grid_value > value + 2e-3:
            raise ConvergenceError(
                f"simplex grid found {grid_value}, multistart ascent only {value}"
            )
        if grid_p is not None and grid_value > value:
            refined, p2, gap2 = _ascend(obj.evaluate, grid_p, 1e-8, 2000)
            if refined > value:
                value, p, gap = refined, p2, gap2
    if gap > 1e-6:
        raise ConvergenceError(
            f"optimizer stalled: best value {value} with suboptimality gap {gap}"
        )
    return value, p, gap


def capacity_ub_cor2(
    w: DiscreteChannel,
    c0: float,
    tol: Tolerance = DEFAULT_TOL,
    *,
    alpha_override: float | None = None,
    seed: int = 0,
    n_starts: int = 16,
    grid_check: bool | None = None,
) -> DmcBoundReport:
    """Bounded-density capacity bound max_p min{I(X;YZ), I(X;Y) + C0 - c_a^{-1}(C0)}.

    alpha defaults to the channel's own peak ratio; pass alpha_override when
    the channel is only known through a density bound.  The report carries the
    cutset analogue computed on the same multistart set.
    """
    c0 = require_rate(c0, "c0")
    alpha = alpha_of_channel(w) if alpha_override is None else float(alpha_override)
    if alpha_override is not None and alpha < alpha_of_channel(w) - 1e-12:
        raise DomainError(
            f"alpha override {alpha} is below the channel's own peak ratio"
        )
    penalty = c0 - bdd_gap_inverse(c0, alpha, tol)
    value, p, gap = _optimize(w, penalty, seed, n_starts, grid_check)
    cutset_value, _, _ = _optimize(w, c0, seed, n_starts, grid_check)
    # the cor2 argmax is feasible for the cutset objective and dominates it
    # pointwise, which keeps the report internally consistent
    cutset_value = max(cutset_value, _RelayObjective(w, c0).value(p))
    return DmcBoundReport(
        alpha=alpha,
        penalty=penalty,
        cutset=cutset_value,
        cor2_bound=value,
        argmax_input=InputDistribution(p),
        suboptimality_gap=gap,
        certified=bool(gap <= 1e-8),
    )


def cutset_dmc(
    w: DiscreteChannel,
    c0: float,
    tol: Tolerance = DEFAULT_TOL,
    *,
    seed: int = 0,
    n_starts: int = 16,
    grid_check: bool | None = None,
) -> float:
    """Cutset analogue max_p min{I(X;YZ), I(X;Y) + C0}."""
    c0 = require_rate(c0, "c0")
    value, _, _ = _optimize(w, c0, seed, n_starts, grid_check)
    return value
