"""Stochastic max-plus linear systems x(k) = A^T(k) x(k-1).

A system is described by a :class:`MatrixProcess` that draws i.i.d. state
transition matrices A(1), A(2), ... from a seeded random stream.  The mean
growth rate (Lyapunov exponent) of the state vector equals the limit of
||A(1)...A(k)|| / k, which is estimated here by Monte Carlo and computed
exactly for block-diagonal and scalar-plus-constant block-triangular
structures.

Replications use independent streams keyed by (seed, replication index), so
runs are reproducible and replication order is immaterial.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import tropical as tp


def stream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator keyed by (seed, *key) via SeedSequence."""
    return np.random.default_rng([int(seed), *map(int, key)])


@dataclass(frozen=True)
class MatrixProcess:
    """I.i.d. sequence of square tropical matrices.

    ``sampler(k, rng)`` returns the k-th draw A(k); it must consume the
    stream deterministically so that equal seeds reproduce equal sequences.
    ``path_norms``, when provided, is a shortcut returning the whole sequence
    ||A_1||, ..., ||A_K|| for one replication from the same draws the sampler
    would make; it must agree with the sampler-driven product (exactly so on
    dyadic inputs, and up to float summation order otherwise).
    """

    dimension: int
    sampler: Callable[[int, np.random.Generator], np.ndarray]
    path_norms: Callable[[np.random.Generator, int], np.ndarray] | None = None


@dataclass(frozen=True)
class GrowthTrace:
    """Norm growth record: ||A_k|| and the estimate ||A_k|| / k per step."""

    k: np.ndarray
    norm: np.ndarray
    estimate: np.ndarray

    def write_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("k,norm,estimate\n")
            for k, nrm, est in zip(self.k, self.norm, self.estimate):
                fh.write(f"{k},{nrm:.10g},{est:.10g}\n")


@dataclass(frozen=True)
class LyapunovEstimate:
    estimate: float
    stderr: float
    per_replication: np.ndarray


@dataclass(frozen=True)
class BlockTriangularSpec:
    """Block-triangular system with a random scalar upper block.

    The transition matrices are [[alpha_k, T(k)], [0-block, D]] where alpha_k
    is a nonnegative RV with mean ``mu1``, D is a constant square block some
    power of which must be entrywise finite, and ``coupling_sampler`` draws
    the 1 x dim(D) coupling row T(k).
    """

    mu1: float
    D: np.ndarray
    coupling_sampler: Callable[[np.random.Generator], np.ndarray]


def evolve(process: MatrixProcess, x0: np.ndarray, steps: int,
           rng: np.random.Generator) -> np.ndarray:
    """Apply x(k) = A^T(k) x(k-1) for ``steps`` sampled matrices."""
    x = tp.as_vector(x0)
    if x.shape[0] != process.dimension:
        raise ValueError(
            f"state length {x.shape[0]} does not match dimension {process.dimension}")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    for k in range(1, steps + 1):
        a = process.sampler(k, rng)
        # (A^T x)_i = max_j (a_ji + x_j)
        x = (a + x[:, None]).max(axis=0)
    return x


def product_norm_trace(process: MatrixProcess, horizon: int,
                       rng: np.random.Generator, stride: int = 1) -> GrowthTrace:
    """Running product A_k = A(1)...A(k) with ||A_k|| recorded every ``stride``.

    With x(0) the all-zero vector, ||x(k)|| equals ||A_k||, so the estimate
    column is directly comparable with state-vector growth.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if stride < 1:
        raise ValueError("stride must be at least 1")
    prod = tp.eye(process.dimension)
    ks, norms, ests = [], [], []
    for k in range(1, horizon + 1):
        prod = tp.mmul(prod, process.sampler(k, rng))
        if k % stride == 0:
            nrm = tp.norm(prod)
            ks.append(k)
            norms.append(nrm)
            ests.append(nrm / k)
    return GrowthTrace(np.array(ks), np.array(norms), np.array(ests))


def lyapunov_estimate(process: MatrixProcess, horizon: int, replications: int,
                      seed: int) -> LyapunovEstimate:
    """Monte Carlo Lyapunov exponent: mean over replications of ||A_K|| / K.

    Each replication owns the stream keyed (seed, replication).  ||A_K|| is
    obtained by evolving x(k) = A^T(k) x(k-1) from the all-zero vector, whose
    norm equals the product norm step for step; processes exposing
    ``path_norms`` shortcut the evolution.  The standard error is the sample
    standard deviation over replications divided by sqrt(replications)
    (zero for a single replication).
    """
    if horizon < 1 or replications < 1:
        raise ValueError("horizon and replications must be at least 1")
    finals = np.empty(replications)
    for rep in range(replications):
        rng = stream(seed, rep)
        if process.path_norms is not None:
            finals[rep] = process.path_norms(rng, horizon)[-1]
        else:
            x = tp.ones(process.dimension)
            for k in range(1, horizon + 1):
                a = process.sampler(k, rng)
                x = (a + x[:, None]).max(axis=0)
            finals[rep] = x.max()
    per_rep = finals / horizon
    est = float(per_rep.mean())
    se = float(per_rep.std(ddof=1) / np.sqrt(replications)) if replications > 1 else 0.0
    return LyapunovEstimate(est, se, per_rep)


def lyapunov_block_diagonal(mus) -> float:
    """Exact exponent of a block-diagonal system: the largest block rate."""
    vals = [float(m) for m in mus]
    if not vals:
        raise ValueError("need at least one block growth rate")
    if not all(np.isfinite(vals)):
        raise ValueError("block growth rates must be finite")
    return max(vals)


def lyapunov_block_triangular(spec: BlockTriangularSpec) -> float:
    """Exact exponent max(mu1, spectral_radius(D)) of the block system."""
    _check_block_spec(spec)
    return max(spec.mu1, tp.spectral_radius(spec.D))


def block_triangular_process(spec: BlockTriangularSpec,
                             alpha_sampler: Callable[[np.random.Generator], float],
                             ) -> MatrixProcess:
    """Matrix process assembling [[alpha_k, T(k)], [0, D]] draws."""
    _check_block_spec(spec)
    d = spec.D.shape[0]

    def sampler(k: int, rng: np.random.Generator) -> np.ndarray:
        alpha = float(alpha_sampler(rng))
        t = np.asarray(spec.coupling_sampler(rng), dtype=float).reshape(1, d)
        if np.isneginf(t).all():
            raise ValueError("coupling block drawn entirely zero; exponent "
                             "formula assumes finite coupling norms")
        a = tp.zeros((d + 1, d + 1))
        a[0, 0] = alpha
        a[0, 1:] = t[0]
        a[1:, 1:] = spec.D
        return a

    return MatrixProcess(dimension=d + 1, sampler=sampler)


def sandwich_bounds(alphas, d_blocks, t_norms) -> tuple[float, float]:
    """Lower and upper envelopes of ||A(1)...A(k)|| for block-triangular factors.

    ``alphas`` are the scalar upper-diagonal entries, ``d_blocks`` the
    per-step lower-diagonal blocks (a constant block repeated, in the
    specialization used by the station model), ``t_norms`` the coupling-block
    norms.  The envelope is

        lower = (alpha_1 ... alpha_k) (+) ||D(1..k)||
        upper = lower (+) (max_j ||T(j)||) (x)
                max_i (alpha_1 ... alpha_{i-1}) (x) ||D(i+1..k)||

    and the realized product norm always lies in [lower, upper].
    """
    alphas = [float(a) for a in alphas]
    t_norms = [float(t) for t in t_norms]
    k = len(alphas)
    if k < 1 or len(d_blocks) != k or len(t_norms) != k:
        raise ValueError("alphas, d_blocks and t_norms must share a length >= 1")

    # Suffix product norms ||D(i+1) ... D(k)|| for i = k down to 0.
    d = d_blocks[0].shape[0]
    suffix_norm = [0.0] * (k + 1)
    suffix_norm[k] = tp.norm(tp.eye(d))
    prod = tp.eye(d)
    for i in range(k - 1, -1, -1):
        prod = tp.mmul(d_blocks[i], prod)
        suffix_norm[i] = tp.norm(prod)

    prefix = 0.0  # alpha_1 ... alpha_{i-1}, tropically a running real sum
    cross = tp.ZERO
    for i in range(1, k + 1):
        cross = max(cross, prefix + suffix_norm[i])
        prefix = prefix + alphas[i - 1]

    lower = max(prefix, suffix_norm[0])  # prefix now holds the full alpha product
    upper = max(lower, max(t_norms) + cross)
    return lower, upper


def p_step_process(process: MatrixProcess, p: int) -> MatrixProcess:
    """Process of p-step products A'(k) = A(p(k-1)+1) ... A(pk).

    Useful when the lower-diagonal block only becomes entrywise finite at
    some power p; horizons that are not multiples of p truncate to floor(K/p)
    reduced steps on the caller's side.
    """
    if p < 1:
        raise ValueError("p must be at least 1")

    def sampler(k: int, rng: np.random.Generator) -> np.ndarray:
        out = process.sampler((k - 1) * p + 1, rng)
        for j in range(1, p):
            out = tp.mmul(out, process.sampler((k - 1) * p + 1 + j, rng))
        return out

    return MatrixProcess(dimension=process.dimension, sampler=sampler)


def _check_block_spec(spec: BlockTriangularSpec) -> None:
    if not np.isfinite(spec.mu1) or spec.mu1 < 0:
        raise ValueError("mu1 must be finite and nonnegative")
    d = spec.D
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"D must be square, got shape {d.shape}")
    # Some D^p must be entrywise finite.  Searching up to Wielandt's
    # primitivity bound (n-1)^2 + 1 is sharp; the station's m x m charge
    # block, for one, first becomes finite at p = 2(m-1) > m.
    n = d.shape[0]
    p = np.array(d)
    for _ in range((n - 1) ** 2 + 1):
        if tp.is_regular(p):
            return
        p = tp.mmul(p, d)
    raise ValueError("no power of D is entrywise finite (block not primitive)")
