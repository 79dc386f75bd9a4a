"""Numerical verification of the reverse-hypercontractivity machinery.

This module checks, by exact enumeration on small alphabets and by Gaussian
quadrature, the inequalities that power the capacity bounds:

* semi-simple semigroups T_t = tensor_i [e^{-t} Id + (1-e^{-t}) P_i] satisfy
  ||T_t f||_q >= ||f||_p for q < p < 1 whenever t >= ln((1-q)/(1-p)),
  and the q=0 special case E[ln T_t f] >= (1 + 1/t) ln E[f] for f in [0,1]^n;
* the Ornstein-Uhlenbeck action T_{x,t} f(y) = E[f(e^{-t}y + (1-e^{-t})x
  + sqrt(1-e^{-2t}) V)] evaluated by Gauss-Hermite quadrature, its exponential
  test functions having closed-form norms that exhibit the critical time
  t = 0.5*ln((1-q)/(1-p)) exactly;
* the entropy-gap bounds themselves, via exact relay-instance enumeration
  (discrete channels) and quantizer instances (Gaussian links at n = 1).

Random suites derive one RNG stream per instance from (seed, index), so
results do not depend on execution order and any failure can be replayed
from its record.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dmc_relay import DiscreteChannel, alpha_of_channel
from .errors import DimensionError, DomainError
from .scalar_bounds import bdd_gap_closed, gauss_gap_closed

_SUM_TOL = 1e-12
_MAX_AXES = 4
_MAX_ALPHABET = 6
_MAX_BLOCKLENGTH = 3
_MAX_MESSAGES = 8


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SemiSimpleSemigroup:
    """Tensor product of simple semigroups e^{-t} Id + (1-e^{-t}) P_i at time t."""

    factors: tuple[np.ndarray, ...]
    time: float

    def __post_init__(self) -> None:
        if not self.factors:
            raise DomainError("semigroup needs at least one factor")
        if len(self.factors) > _MAX_AXES:
            raise DomainError(f"at most {_MAX_AXES} tensor factors are supported")
        frozen = []
        for i, dist in enumerate(self.factors):
            d = np.asarray(dist, dtype=float)
            if d.ndim != 1 or not (2 <= d.shape[0] <= _MAX_ALPHABET):
                raise DomainError(
                    f"factor {i} must be a vector over 2..{_MAX_ALPHABET} symbols, got shape {d.shape}"
                )
            if not np.all(np.isfinite(d)) or np.any(d < 0.0):
                raise DomainError(f"factor {i} must be a nonnegative finite vector")
            if abs(d.sum() - 1.0) > _SUM_TOL:
                raise DomainError(f"factor {i} must sum to 1 within {_SUM_TOL}")
            d = d.copy()
            d.setflags(write=False)
            frozen.append(d)
        object.__setattr__(self, "factors", tuple(frozen))
        t = float(self.time)
        if math.isnan(t) or t < 0.0:
            raise DomainError(f"time must be >= 0, got {self.time!r}")
        object.__setattr__(self, "time", t)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(d) for d in self.factors)

    def at_time(self, t: float) -> "SemiSimpleSemigroup":
        return SemiSimpleSemigroup(self.factors, t)


@dataclass(frozen=True)
class ProductFunction:
    """Dense nonnegative table over the product alphabet."""

    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.ndim < 1 or v.ndim > _MAX_AXES:
            raise DomainError(f"table must have 1..{_MAX_AXES} axes, got {v.ndim}")
        if not np.all(np.isfinite(v)) or np.any(v < 0.0):
            raise DomainError("table entries must be finite and nonnegative")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights for expectations against the standard normal law."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        n = np.asarray(self.nodes, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if n.ndim != 1 or w.ndim != 1 or n.shape != w.shape or n.shape[0] < 1:
            raise DomainError("nodes and weights must be matching nonempty vectors")
        if not (np.all(np.isfinite(n)) and np.all(np.isfinite(w))):
            raise DomainError("nodes and weights must be finite")
        if np.any(w < 0.0):
            raise DomainError("weights must be nonnegative")
        if abs(w.sum() - 1.0) > _SUM_TOL:
            raise DomainError(f"weights must sum to 1 within {_SUM_TOL} (normalize first)")
        n = n.copy()
        w = w.copy()
        n.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "nodes", n)
        object.__setattr__(self, "weights", w)

    @staticmethod
    def gauss_hermite(order: int = 64) -> "QuadratureRule":
        """Gauss-Hermite rule rescaled to integrate against N(0, 1)."""
        if order < 1:
            raise DomainError(f"order must be >= 1, got {order}")
        x, w = np.polynomial.hermite.hermgauss(order)
        return QuadratureRule(nodes=x * math.sqrt(2.0), weights=w / w.sum())


DEFAULT_RULE = QuadratureRule.gauss_hermite(64)


@dataclass(frozen=True)
class RelayInstance:
    """Finite relay code: channel, codebook x^n(m), and relay partition of Z^n.

    The partition is a flat array of cell indices over Z^n enumerated in
    C order (last symbol fastest).
    """

    channel: DiscreteChannel
    codebook: tuple[tuple[int, ...], ...]
    relay_partition: np.ndarray

    def __post_init__(self) -> None:
        book = tuple(tuple(int(s) for s in word) for word in self.codebook)
        if not (1 <= len(book) <= _MAX_MESSAGES):
            raise DomainError(f"codebook must hold 1..{_MAX_MESSAGES} messages, got {len(book)}")
        n = len(book[0])
        if not (1 <= n <= _MAX_BLOCKLENGTH):
            raise DomainError(f"blocklength must be 1..{_MAX_BLOCKLENGTH}, got {n}")
        kx = self.channel.n_inputs
        for word in book:
            if len(word) != n:
                raise DomainError("all codewords must share one blocklength")
            if any(not (0 <= s < kx) for s in word):
                raise DomainError(f"codeword symbols must index the {kx}-ary input alphabet")
        part = np.asarray(self.relay_partition, dtype=int)
        n_z = self.channel.n_outputs**n
        if part.shape != (n_z,):
            raise DomainError(
                f"partition must assign a cell to each of the {n_z} relay observations"
            )
        if np.any(part < 0):
            raise DomainError("partition cells must be nonnegative integers")
        part = part.copy()
        part.setflags(write=False)
        object.__setattr__(self, "codebook", book)
        object.__setattr__(self, "relay_partition", part)

    @property
    def blocklength(self) -> int:
        return len(self.codebook[0])


# ---------------------------------------------------------------------------
# Semigroup action and norms
# ---------------------------------------------------------------------------


def apply_semisimple(sg: SemiSimpleSemigroup, f: ProductFunction) -> ProductFunction:
    """Apply e^{-t} Id + (1-e^{-t}) P_i along every tensor axis.

    Linear, positivity preserving, and unital (the all-ones table is fixed).
    """
    if f.values.shape != sg.shape:
        raise DimensionError(f"table shape {f.values.shape} does not match {sg.shape}")
    keep = math.exp(-sg.time)
    mix = -math.expm1(-sg.time)
    out = f.values
    for axis, dist in enumerate(sg.factors):
        avg = np.tensordot(dist, out, axes=([0], [axis]))
        avg = np.expand_dims(avg, axis)
        out = keep * out + mix * avg
    return ProductFunction(out)


def stationary_measure(sg: SemiSimpleSemigroup) -> np.ndarray:
    """Product table of the stationary measure tensor_i P_i."""
    table = sg.factors[0]
    for dist in sg.factors[1:]:
        table = np.multiply.outer(table, dist)
    return table


def lp_norm(f: ProductFunction | np.ndarray, measure: np.ndarray, p: float) -> float:
    """L^p(Q) norm for p <= 1, with the p = 0 geometric-mean convention.

    For p <= 0 a zero of f on the support of the measure gives norm 0 (the
    correct limit); the p = 0 case is evaluated in the log domain.
    """
    values = f.values if isinstance(f, ProductFunction) else np.asarray(f, dtype=float)
    q = np.asarray(measure, dtype=float)
    if values.shape != q.shape:
        raise DimensionError(f"function shape {values.shape} != measure shape {q.shape}")
    if not np.all(np.isfinite(q)) or np.any(q < 0.0) or abs(q.sum() - 1.0) > 1e-9:
        raise DomainError("measure must be a probability table")
    if not math.isfinite(p) or p > 1.0:
        raise DomainError(f"norm index must be <= 1, got {p!r}")
    support = q > 0.0
    vals = values[support]
    wts = q[support]
    if p == 0.0:
        if np.any(vals == 0.0):
            return 0.0
        return float(math.exp(np.dot(wts, np.log(vals))))
    if p < 0.0 and np.any(vals == 0.0):
        return 0.0
    with np.errstate(divide="ignore", over="ignore"):
        moment = float(np.dot(wts, vals**p))
    if p < 0.0 and math.isinf(moment):
        return 0.0
    return moment ** (1.0 / p)


def check_mossel(sg: SemiSimpleSemigroup, f: ProductFunction, p: float, q: float) -> float:
    """Margin ||T_t f||_q - ||f||_p for the semi-simple semigroup.

    Requires q <= p < 1 and t >= ln((1-q)/(1-p)); the reverse
    hypercontractivity estimate makes the margin nonnegative (p = q is the
    Jensen baseline with critical time 0).
    """
    if not (q <= p < 1.0):
        raise DomainError(f"need q <= p < 1, got p={p}, q={q}")
    critical = math.log((1.0 - q) / (1.0 - p))
    if sg.time < critical:
        raise DomainError(f"time {sg.time} is below the critical time {critical}")
    mu = stationary_measure(sg)
    smoothed = apply_semisimple(sg, f)
    return lp_norm(smoothed, mu, q) - lp_norm(f, mu, p)


def mossel_q0_margin(sg: SemiSimpleSemigroup, f: ProductFunction) -> float:
    """Margin E[ln T_t f] - (1 + 1/t) ln E[f] for f in [0,1]^n, t > 0."""
    if sg.time <= 0.0:
        raise DomainError("the q=0 inequality needs t > 0")
    if np.any(f.values > 1.0 + 1e-12):
        raise DomainError("the q=0 inequality needs f taking values in [0, 1]")
    mu = stationary_measure(sg)
    mean = float((mu * f.values).sum())
    if mean <= 0.0:
        raise DomainError("f must have positive mass under the stationary measure")
    smoothed = apply_semisimple(sg, f).values
    support = mu > 0.0
    if np.any(smoothed[support] <= 0.0):
        return math.inf  # ln E[f] finite while lhs is -inf cannot happen for t>0
    lhs = float(np.dot(mu[support], np.log(smoothed[support])))
    return lhs - (1.0 + 1.0 / sg.time) * math.log(min(mean, 1.0))


# ---------------------------------------------------------------------------
# Ornstein-Uhlenbeck action and Borell margins
# ---------------------------------------------------------------------------


def ou_apply(
    f: Callable[[np.ndarray], np.ndarray],
    x: float,
    y: float,
    t: float,
    rule: QuadratureRule = DEFAULT_RULE,
) -> float:
    """Quadrature value of T_{x,t} f(y) = E[f(e^{-t}y + (1-e^{-t})x + sd*V)].

    f must accept a numpy array of evaluation points; sd = sqrt(1 - e^{-2t}).
    """
    if t < 0.0 or math.isnan(t):
        raise DomainError(f"time must be >= 0, got {t!r}")
    mean = math.exp(-t) * y + -math.expm1(-t) * x
    sd = math.sqrt(-math.expm1(-2.0 * t))
    points = mean + sd * rule.nodes
    vals = np.asarray(f(points), dtype=float)
    return float(np.dot(rule.weights, vals))


def check_ou_q0(
    f: Callable[[np.ndarray], np.ndarray],
    x: float,
    t: float,
    rule: QuadratureRule = DEFAULT_RULE,
) -> float:
    """Margin E[ln T_{x,t} f] - (1 + 1/(2t)) ln E[f] for f in [0,1], by quadrature.

    Both expectations run against the stationary measure N(x, 1).
    """
    if t <= 0.0:
        raise DomainError("the q=0 inequality needs t > 0")
    ys = x + rule.nodes
    smoothed = np.array([ou_apply(f, x, float(y), t, rule) for y in ys])
    if np.any(smoothed <= 0.0):
        raise DomainError("T_t f vanished at a quadrature node; use f with positive mass")
    lhs = float(np.dot(rule.weights, np.log(smoothed)))
    mean = float(np.dot(rule.weights, np.asarray(f(ys), dtype=float)))
    if not (0.0 < mean <= 1.0 + 1e-12):
        raise DomainError("f must map into [0, 1] with positive mass")
    return lhs - (1.0 + 0.5 / t) * math.log(min(mean, 1.0))


def check_borell_exponential(lam: float, x: float, p: float, q: float, t: float) -> float:
    """Log-margin ln||T_{x,t} f||_q - ln||f||_p for f(u) = e^{lam*u}.

    Under the stationary measure N(x, 1) both norms are explicit:
        ln||f||_p        = lam*x + p*lam^2/2
        ln||T_t f||_q    = lam*x + lam^2*((1-e^{-2t}) + q*e^{-2t})/2
    so the margin is lam^2*((1-e^{-2t}) + q*e^{-2t} - p)/2, which is zero
    exactly at the critical time t = 0.5*ln((1-q)/(1-p)) and increasing in t.
    """
    if not (q < p < 1.0):
        raise DomainError(f"need q < p < 1, got p={p}, q={q}")
    if t < 0.0 or math.isnan(t):
        raise DomainError(f"time must be >= 0, got {t!r}")
    shrink = math.exp(-2.0 * t)
    lhs = lam * x + 0.5 * lam * lam * (-math.expm1(-2.0 * t) + q * shrink)
    rhs = lam * x + 0.5 * lam * lam * p
    return lhs - rhs


def borell_critical_time(p: float, q: float) -> float:
    """Critical OU time 0.5*ln((1-q)/(1-p)) for norm indices q < p < 1."""
    if not (q < p < 1.0):
        raise DomainError(f"need q < p < 1, got p={p}, q={q}")
    return 0.5 * math.log((1.0 - q) / (1.0 - p))


# ---------------------------------------------------------------------------
# Exact entropy-gap oracles
# ---------------------------------------------------------------------------


def _entropy_flat(p: np.ndarray) -> float:
    mass = p[p > 0.0]
    # masses can carry 1-ulp excursions above 1, so clamp the rounding residue
    return max(float(-(mass * np.log(mass)).sum()), 0.0)


def _sequence_distribution(w: np.ndarray, word: tuple[int, ...]) -> np.ndarray:
    """Flat product distribution of n channel uses driven by a codeword."""
    table = np.ones(1)
    for symbol in word:
        table = np.multiply.outer(table, w[symbol]).reshape(-1)
    return table


def brute_force_entropy_gap(inst: RelayInstance) -> tuple[float, float]:
    """Exact (h1, h2) = ((1/n)H(I|X^n), (1/n)H(I|Y^n)) by full enumeration.

    The relay message I cells the observation space Z^n; messages are
    uniform, Y^n and Z^n are conditionally iid given the codeword.
    """
    w = inst.channel.matrix
    n = inst.blocklength
    m_count = len(inst.codebook)
    cells = int(inst.relay_partition.max()) + 1

    seq_dists = {}
    for word in set(inst.codebook):
        seq_dists[word] = _sequence_distribution(w, word)
    cell_given_word = {
        word: np.bincount(inst.relay_partition, weights=dist, minlength=cells)
        for word, dist in seq_dists.items()
    }

    # H(I | X^n): condition on distinct codewords (identical codewords merge)
    word_mass: dict[tuple[int, ...], float] = {}
    for word in inst.codebook:
        word_mass[word] = word_mass.get(word, 0.0) + 1.0 / m_count
    h1 = sum(mass * _entropy_flat(cell_given_word[word]) for word, mass in word_mass.items())

    # H(I | Y^n) from the exact joint over (cell, observation sequence)
    joint = np.zeros((cells, w.shape[1] ** n))
    for word, mass in word_mass.items():
        joint += mass * np.outer(cell_given_word[word], seq_dists[word])
    h_iy = max(_entropy_flat(joint.reshape(-1)) - _entropy_flat(joint.sum(axis=0)), 0.0)
    return h1 / n, h_iy / n


def gaussian_quantizer_gap(
    constellation,
    thresholds,
    rule: QuadratureRule = DEFAULT_RULE,
) -> tuple[float, float]:
    """Exact-h1 / quadrature-h2 pair for a one-shot Gaussian relay quantizer.

    X is uniform on the constellation (noise variance 1, points pre-scaled),
    Z = X + N(0,1) is quantized by the sorted thresholds into I, and
    Y = X + N(0,1) independently.  h1 = H(I|X) comes from normal CDF
    differences; h2 = H(I|Y) integrates the posterior entropy over Y by
    quadrature.
    """
    xs = np.asarray(constellation, dtype=float)
    taus = np.asarray(thresholds, dtype=float)
    if xs.ndim != 1 or xs.shape[0] < 1 or not np.all(np.isfinite(xs)):
        raise DomainError("constellation must be a nonempty finite vector")
    if taus.ndim != 1 or not np.all(np.isfinite(taus)):
        raise DomainError("thresholds must be a finite vector")
    if np.any(np.diff(taus) <= 0.0):
        raise DomainError("thresholds must be strictly increasing")
    if taus.size == 0:
        return 0.0, 0.0  # a single quantizer cell carries no information

    edges = np.concatenate(([-math.inf], taus, [math.inf]))
    # P(I = i | X = x) via Phi differences, columns are quantizer cells
    cdf_at = lambda u: 0.5 * _erfc_vec(-u / math.sqrt(2.0))
    upper = cdf_at(edges[None, 1:] - xs[:, None])
    lower = cdf_at(edges[None, :-1] - xs[:, None])
    cell_given_x = np.clip(upper - lower, 0.0, 1.0)

    k = xs.shape[0]
    h1 = float(np.mean([_entropy_flat(row) for row in cell_given_x]))

    # h2: for Y = x_c + v, the posterior over inputs is a softmax of -(y-x)^2/2
    ys = (xs[:, None] + rule.nodes[None, :]).reshape(-1)
    log_post = -0.5 * (ys[:, None] - xs[None, :]) ** 2
    log_post -= log_post.max(axis=1, keepdims=True)
    post = np.exp(log_post)
    post /= post.sum(axis=1, keepdims=True)
    cell_given_y = post @ cell_given_x
    with np.errstate(divide="ignore", invalid="ignore"):
        ent = -np.where(
            cell_given_y > 0.0, cell_given_y * np.log(np.maximum(cell_given_y, 1e-300)), 0.0
        ).sum(axis=1)
    weights = (np.full((k, 1), 1.0 / k) * rule.weights[None, :]).reshape(-1)
    h2 = float(np.dot(weights, ent))
    return h1, h2


def _erfc_vec(u: np.ndarray) -> np.ndarray:
    return np.vectorize(math.erfc)(u)


# ---------------------------------------------------------------------------
# Randomized suites (one RNG stream per instance)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteRecord:
    """One verified instance: descriptor, margin, and pass flag."""

    suite: str
    index: int
    instance: dict
    margin: float
    passed: bool


def _instance_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng((seed, index))


def _random_semigroup(rng, n=None, k=None, t=None, p=None, q=None):
    n = int(rng.integers(1, 4)) if n is None else int(n)
    k = int(rng.integers(2, 5)) if k is None else int(k)
    factors = tuple(rng.dirichlet(np.ones(k)) for _ in range(n))
    if p is None or q is None:
        if rng.random() < 0.1:
            p = q = float(rng.uniform(0.05, 0.95))  # Jensen baseline
        else:
            draws = rng.uniform(-2.0, 1.0, size=2)
            while abs(draws[0] - draws[1]) < 1e-6:
                draws = rng.uniform(-2.0, 1.0, size=2)
            p, q = float(draws.max()), float(draws.min())
    critical = math.log((1.0 - q) / (1.0 - p))
    if t is None:
        extra = 0.0 if rng.random() < 0.2 else float(rng.uniform(0.0, 2.0))
        # 20% of draws sit exactly at the critical time (0 for the p = q baseline)
        t = critical * (1.0 + extra) if critical > 0.0 else extra
    t = float(t)
    sg = SemiSimpleSemigroup(factors, t)
    vals = rng.random(sg.shape)
    if rng.random() < 0.25:
        vals = np.where(rng.random(sg.shape) < 0.3, 0.0, vals)
    if rng.random() < 0.25:
        vals = vals * float(rng.uniform(0.5, 2.0))
    return sg, ProductFunction(vals), float(p), float(q), critical


def mossel_suite(
    n_instances: int,
    seed: int,
    *,
    n: int | None = None,
    k: int | None = None,
    t: float | None = None,
    p: float | None = None,
    q: float | None = None,
    tol: float = 1e-12,
) -> list[SuiteRecord]:
    """Randomized reverse-hypercontractivity margins for semi-simple semigroups."""
    records = []
    for idx in range(n_instances):
        rng = _instance_rng(seed, idx)
        sg, f, pp, qq, critical = _random_semigroup(rng, n=n, k=k, t=t, p=p, q=q)
        margin = check_mossel(sg, f, pp, qq)
        records.append(
            SuiteRecord(
                suite="mossel",
                index=idx,
                instance={
                    "n": len(sg.factors),
                    "alphabet": sg.shape[0],
                    "p": pp,
                    "q": qq,
                    "t": sg.time,
                    "critical": critical,
                },
                margin=float(margin),
                passed=bool(margin >= -tol),
            )
        )
    return records


def mossel_q0_suite(n_instances: int, seed: int, *, tol: float = 1e-12) -> list[SuiteRecord]:
    """q = 0 specialization margins E[ln T_t f] - (1 + 1/t) ln E[f] on [0,1] tables."""
    records = []
    for idx in range(n_instances):
        rng = _instance_rng(seed, idx)
        n = int(rng.integers(1, 4))
        k = int(rng.integers(2, 5))
        factors = tuple(rng.dirichlet(np.ones(k)) for _ in range(n))
        t = float(rng.uniform(0.05, 3.0))
        sg = SemiSimpleSemigroup(factors, t)
        vals = rng.random(sg.shape)
        if rng.random() < 0.3:
            vals = np.where(rng.random(sg.shape) < 0.3, 0.0, vals)
        if not vals.any():
            vals[(0,) * n] = 0.5
        f = ProductFunction(vals)
        margin = mossel_q0_margin(sg, f)
        records.append(
            SuiteRecord(
                suite="mossel-q0",
                index=idx,
                instance={"n": n, "alphabet": k, "t": t},
                margin=float(margin),
                passed=bool(margin >= -tol),
            )
        )
    return records


def borell_suite(
    n_instances: int,
    seed: int,
    *,
    t_factor: float = 1.0,
    tol: float = 1e-12,
) -> list[SuiteRecord]:
    """Closed-form Borell margins for exponential functions at t_factor * critical."""
    records = []
    for idx in range(n_instances):
        rng = _instance_rng(seed, idx)
        lam = float(rng.uniform(0.1, 2.0)) * (1.0 if rng.random() < 0.5 else -1.0)
        x = float(rng.uniform(-3.0, 3.0))
        q = float(rng.uniform(-2.0, 0.8))
        p = float(rng.uniform(q + 0.05, min(q + 2.0, 0.999)))
        critical = borell_critical_time(p, q)
        t = t_factor * critical
        margin = check_borell_exponential(lam, x, p, q, t)
        records.append(
            SuiteRecord(
                suite="borell-exp",
                index=idx,
                instance={"lam": lam, "x": x, "p": p, "q": q, "t": t, "critical": critical},
                margin=float(margin),
                passed=bool(margin >= -tol),
            )
        )
    return records


def ou_q0_suite(
    n_instances: int,
    seed: int,
    *,
    rule: QuadratureRule = DEFAULT_RULE,
    tol: float = 1e-9,
) -> list[SuiteRecord]:
    """Quadrature margins for the OU q = 0 inequality on squashed test functions."""
    records = []
    for idx in range(n_instances):
        rng = _instance_rng(seed, idx)
        a = float(rng.uniform(0.3, 3.0))
        b = float(rng.uniform(-2.0, 2.0))
        floor = float(rng.uniform(0.0, 0.2))

        def f(u, a=a, b=b, floor=floor):
            return floor + (1.0 - floor) / (1.0 + np.exp(-a * (u - b)))

        x = float(rng.uniform(-2.0, 2.0))
        t = float(rng.uniform(0.05, 2.5))
        margin = check_ou_q0(f, x, t, rule)
        records.append(
            SuiteRecord(
                suite="ou-q0",
                index=idx,
                instance={"x": x, "t": t, "slope": a, "shift": b, "floor": floor},
                margin=float(margin),
                passed=bool(margin >= -tol),
            )
        )
    return records


def _random_relay_instance(rng) -> RelayInstance:
    if rng.random() < 0.5:
        channel = DiscreteChannel.bsc(float(rng.uniform(0.05, 0.45)))
    else:
        rows = rng.dirichlet(np.ones(3), size=2)
        rows = rows / rows.sum(axis=1, keepdims=True)
        channel = DiscreteChannel(rows)
    n = int(rng.integers(1, 4))
    m_count = int(rng.integers(1, 5))
    codebook = tuple(
        tuple(int(s) for s in rng.integers(0, channel.n_inputs, size=n)) for _ in range(m_count)
    )
    n_z = channel.n_outputs**n
    cells = int(rng.integers(1, min(_MAX_MESSAGES, n_z) + 1))
    partition = rng.integers(0, cells, size=n_z)
    return RelayInstance(channel, codebook, partition)


def relay_oracle_suite(n_instances: int, seed: int, *, tol: float = 1e-9) -> list[SuiteRecord]:
    """End-to-end check h2 <= c_alpha(h1) on exactly enumerated relay instances."""
    records = []
    for idx in range(n_instances):
        rng = _instance_rng(seed, idx)
        inst = _random_relay_instance(rng)
        h1, h2 = brute_force_entropy_gap(inst)
        alpha = alpha_of_channel(inst.channel)
        margin = bdd_gap_closed(h1, alpha) - h2
        records.append(
            SuiteRecord(
                suite="lemma4",
                index=idx,
                instance={
                    "channel": inst.channel.matrix.tolist(),
                    "codebook": [list(w) for w in inst.codebook],
                    "cells": int(inst.relay_partition.max()) + 1,
                    "n": inst.blocklength,
                    "alpha": alpha,
                    "h1": h1,
                    "h2": h2,
                },
                margin=float(margin),
                passed=bool(margin >= -tol),
            )
        )
    return records


def quantizer_oracle_suite(
    n_instances: int,
    seed: int,
    *,
    rule: QuadratureRule = DEFAULT_RULE,
    tol: float = 1e-6,
) -> list[SuiteRecord]:
    """Gaussian quantizer margins against both scalar entropy-gap bounds."""
    records = []
    for idx in range(n_instances):
        rng = _instance_rng(seed, idx)
        k = int(rng.integers(2, 5))
        xs = np.sort(rng.uniform(-3.0, 3.0, size=k))
        while np.any(np.diff(xs) < 1e-3):
            xs = np.sort(rng.uniform(-3.0, 3.0, size=k))
        n_taus = int(rng.integers(1, 4))
        taus = np.sort(rng.uniform(-3.0, 3.0, size=n_taus))
        while np.any(np.diff(taus) < 1e-3):
            taus = np.sort(rng.uniform(-3.0, 3.0, size=n_taus))
        h1, h2 = gaussian_quantizer_gap(xs, taus, rule)
        margin_gap = gauss_gap_closed(h1) - h2
        margin_log = 0.5 * math.log1p(2.0 * h2) - (h2 - h1)
        margin = min(margin_gap, margin_log)
        records.append(
            SuiteRecord(
                suite="quantizer",
                index=idx,
                instance={
                    "constellation": xs.tolist(),
                    "thresholds": taus.tolist(),
                    "h1": h1,
                    "h2": h2,
                    "margin_gap": margin_gap,
                    "margin_log": margin_log,
                },
                margin=float(margin),
                passed=bool(margin >= -tol),
            )
        )
    return records


def semigroup_suite(n_instances: int, seed: int, *, tol: float = 1e-12) -> list[SuiteRecord]:
    """Structural margins: semigroup law, stationarity, unitality, positivity."""
    records = []
    for idx in range(n_instances):
        rng = _instance_rng(seed, idx)
        sg, f, _, _, _ = _random_semigroup(rng, p=0.5, q=0.5, t=0.0)
        t1 = float(rng.uniform(0.0, 2.0))
        t2 = float(rng.uniform(0.0, 2.0))
        mu = stationary_measure(sg)
        two_step = apply_semisimple(sg.at_time(t1), apply_semisimple(sg.at_time(t2), f))
        one_step = apply_semisimple(sg.at_time(t1 + t2), f)
        dev_law = float(np.max(np.abs(two_step.values - one_step.values)))
        dev_stat = abs(float((mu * one_step.values).sum()) - float((mu * f.values).sum()))
        ones = ProductFunction(np.ones(sg.shape))
        dev_unit = float(np.max(np.abs(apply_semisimple(sg.at_time(t1), ones).values - 1.0)))
        positivity = float(one_step.values.min())
        margin = -max(dev_law, dev_stat, dev_unit, -positivity)
        records.append(
            SuiteRecord(
                suite="semigroup",
                index=idx,
                instance={"n": len(sg.factors), "alphabet": sg.shape[0], "t1": t1, "t2": t2},
                margin=float(margin),
                passed=bool(margin >= -tol),
            )
        )
    return records
