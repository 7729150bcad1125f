"""Battery swapping and charging station (BSCS) model.

A station holds m identical battery packs; swapping one pack takes b time
units, recharging takes c, and vehicles arrive with i.i.d. interarrival
times of mean a.  With x(k) the k-th arrival epoch and y(k) the k-th swap
completion, the dynamics are

    x(k) = x(k-1) + alpha_k
    y(k) = max(x(k), y(k-1), y(k-m) + c) + b,      x(j) = y(j) = 0 for j <= 0.

The same system in max-plus form is v(k) = A^T(k) v(k-1) with the state
v(k) = (x(k), y(k), ..., y(k-m+1)) and a transition matrix assembled from a
swap-coupling matrix B and a stage matrix C(k); y(k) coincides with the norm
of the running matrix product.  The long-run mean cycle time has the closed
form max(a, b, (b+c)/m), independent of the interarrival distribution
beyond its mean.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tropical as tp
from .dynamics import MatrixProcess, stream

# Snapping interarrival samples to this grid makes every max-plus sum in the
# model exact in float64 (values stay far below 2**27), so the scalar and
# matrix routes agree bit for bit regardless of summation order.
DYADIC_GRID = 2.0 ** -26


def quantize(values, grid: float = DYADIC_GRID):
    """Snap samples to a dyadic lattice (see DYADIC_GRID)."""
    return np.round(np.asarray(values, dtype=float) / grid) * grid


@dataclass(frozen=True)
class Exponential:
    """Exponential interarrival times, sampled by inverse CDF -mean*log(1-U)."""

    mean: float

    def __post_init__(self):
        if not self.mean >= 0:
            raise ValueError("exponential mean must be nonnegative")

    def sample(self, rng: np.random.Generator, size=None):
        return -self.mean * np.log1p(-rng.random(size))

    @property
    def mean_value(self) -> float:
        return self.mean


@dataclass(frozen=True)
class Uniform:
    """Uniform interarrival times on [lo, hi], sampled as lo + (hi-lo)*U."""

    lo: float
    hi: float

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise ValueError("uniform support needs 0 <= lo <= hi")

    def sample(self, rng: np.random.Generator, size=None):
        return self.lo + (self.hi - self.lo) * rng.random(size)

    @property
    def mean_value(self) -> float:
        return (self.lo + self.hi) / 2.0


@dataclass(frozen=True)
class Deterministic:
    """Constant interarrival time."""

    value: float

    def __post_init__(self):
        if not self.value >= 0:
            raise ValueError("deterministic interarrival must be nonnegative")

    def sample(self, rng: np.random.Generator, size=None):
        if size is None:
            return self.value
        return np.full(size, self.value)

    @property
    def mean_value(self) -> float:
        return self.value


InterarrivalDist = Exponential | Uniform | Deterministic


def dist_from_config(obj) -> InterarrivalDist:
    """Parse {"exp": {"mean": a}} | {"uniform": {"lo":, "hi":}} | {"det": {"a":}}."""
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ValueError(f"bad interarrival distribution spec: {obj!r}")
    kind, params = next(iter(obj.items()))
    try:
        if kind == "exp":
            return Exponential(float(params["mean"]))
        if kind == "uniform":
            return Uniform(float(params["lo"]), float(params["hi"]))
        if kind == "det":
            return Deterministic(float(params["a"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad parameters for {kind!r} distribution: {params!r}") from exc
    raise ValueError(f"unknown interarrival distribution kind: {kind!r}")


@dataclass(frozen=True)
class StationParams:
    """One station: interarrival law, swap time b, charge time c, m packs."""

    dist: InterarrivalDist
    b: float
    c: float
    m: int

    def __post_init__(self):
        if not self.b > 0:
            raise ValueError("swap time b must be positive")
        if not self.c > 0:
            raise ValueError("charge time c must be positive")
        if not (isinstance(self.m, int) and self.m >= 1):
            raise ValueError("battery count m must be a positive integer")

    @property
    def state_dim(self) -> int:
        return self.m + 1


def station_from_config(obj) -> StationParams:
    if not isinstance(obj, dict):
        raise ValueError("station config must be a JSON object")
    try:
        return StationParams(
            dist=dist_from_config(obj["dist"]),
            b=float(obj["b"]),
            c=float(obj["c"]),
            m=int(obj["m"]),
        )
    except KeyError as exc:
        raise ValueError(f"station config missing field {exc.args[0]!r}") from exc


@dataclass(frozen=True)
class SimTrace:
    """Per-step record of arrivals x(k), completions y(k), estimates y(k)/k."""

    k: np.ndarray
    x: np.ndarray
    y: np.ndarray
    lambda_hat: np.ndarray

    def write_csv(self, path, stride: int = 1) -> None:
        with open(path, "w") as fh:
            fh.write(format_trace_csv(self, stride))


def format_trace_csv(trace: SimTrace, stride: int = 1) -> str:
    lines = ["k,x,y,lambda_hat"]
    for k, x, y, lam in zip(trace.k[stride - 1::stride], trace.x[stride - 1::stride],
                            trace.y[stride - 1::stride], trace.lambda_hat[stride - 1::stride]):
        lines.append(f"{k},{x:.10g},{y:.10g},{lam:.10g}")
    return "\n".join(lines) + "\n"


def recurrence_path(alphas, b: float, c: float, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate the recurrence on given interarrival samples.

    The last m completion epochs live in a ring buffer initialised to 0,
    which realises y(j) = 0 for all j <= 0.
    """
    alphas = np.asarray(alphas, dtype=float)
    horizon = len(alphas)
    xs = np.empty(horizon)
    ys = np.empty(horizon)
    x = 0.0
    y_prev = 0.0
    ybuf = [0.0] * m
    for k in range(1, horizon + 1):
        x = x + alphas[k - 1]
        slot = (k - 1) % m
        y = max(x, y_prev, ybuf[slot] + c) + b
        ybuf[slot] = y
        y_prev = y
        xs[k - 1] = x
        ys[k - 1] = y
    return xs, ys


def simulate_recurrence(params: StationParams, horizon: int, seed: int) -> SimTrace:
    """Simulate the station for ``horizon`` arrivals with a seeded stream."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    alphas = params.dist.sample(stream(seed), horizon)
    xs, ys = recurrence_path(alphas, params.b, params.c, params.m)
    ks = np.arange(1, horizon + 1)
    return SimTrace(ks, xs, ys, ys / ks)


def estimator_series(trace: SimTrace, stride: int) -> np.ndarray:
    """Subsample (k, y(k)/k) pairs at k = stride, 2*stride, ...; shape (n, 2)."""
    if stride < 1:
        raise ValueError("stride must be at least 1")
    return np.column_stack((trace.k[stride - 1::stride],
                            trace.lambda_hat[stride - 1::stride]))


def mean_cycle_time_exact(params: StationParams) -> float:
    """Closed-form mean cycle time max(a, b, (b+c)/m)."""
    return max(params.dist.mean_value, params.b, (params.b + params.c) / params.m)


def swap_matrix(params: StationParams) -> np.ndarray:
    """The swap-coupling matrix B: a single entry b in position (2, 1)."""
    b_mat = tp.zeros((params.state_dim, params.state_dim))
    b_mat[1, 0] = params.b
    return b_mat


def stage_matrix(alpha: float, params: StationParams) -> np.ndarray:
    """The matrix C(k) driving v(k-1): arrival shift, swap row, delay line.

    Row 2 carries b on y(k-1) and b+c on y(k-m); for m = 1 those land in the
    same column, where the entries combine tropically to max(b, b+c).
    """
    m = params.m
    n = params.state_dim
    c_mat = tp.zeros((n, n))
    c_mat[0, 0] = alpha
    if m == 1:
        c_mat[1, 1] = max(params.b, params.b + params.c)
    else:
        c_mat[1, 1] = params.b
        c_mat[1, n - 1] = params.b + params.c
        for i in range(2, n):
            c_mat[i, i - 1] = tp.ONE
    return c_mat


def transition_matrix(alpha: float, params: StationParams) -> np.ndarray:
    """Direct assembly of A^T(k): the explicit one-step state map.

    Equals kleene_star(B) C(k) entry for entry; row 2 is the swap row
    (alpha+b, b, 0s..., b+c), rows 3.. shift the completion history.
    """
    if not (np.isfinite(alpha) and alpha >= 0):
        raise ValueError("interarrival sample must be finite and nonnegative")
    at = stage_matrix(alpha, params)
    at[1, 0] = alpha + params.b
    return at


def transition_via_star(alpha: float, params: StationParams) -> np.ndarray:
    """A^T(k) obtained by solving the implicit step equation.

    Builds B and C(k) explicitly, verifies cycle_trace(B) is the tropical
    zero (so the one-step fixpoint is unique), and returns kleene_star(B) C(k).
    Must coincide with :func:`transition_matrix`; the two construction routes
    cross-check each other.
    """
    if not (np.isfinite(alpha) and alpha >= 0):
        raise ValueError("interarrival sample must be finite and nonnegative")
    b_mat = swap_matrix(params)
    ct = tp.cycle_trace(b_mat)
    if ct != tp.ZERO:
        raise AssertionError(f"swap matrix acquired a cycle: {ct}")
    return tp.mmul(tp.kleene_star(b_mat), stage_matrix(alpha, params))


def charge_block(params: StationParams) -> np.ndarray:
    """The constant m x m lower-diagonal block D of the untransposed A(k).

    Carries b as a self-loop, a delay line of tropical ones, and b+c closing
    the recharge cycle; its spectral radius is max(b, (b+c)/m).  For m = 1 it
    degenerates to the 1 x 1 block (b+c).
    """
    m = params.m
    d = tp.zeros((m, m))
    if m == 1:
        d[0, 0] = params.b + params.c
        return d
    d[0, 0] = params.b
    for i in range(m - 1):
        d[i, i + 1] = tp.ONE
    d[m - 1, 0] = params.b + params.c
    return d


def block_decompose(at: np.ndarray, params: StationParams,
                    ) -> tuple[float, np.ndarray, np.ndarray]:
    """Split A(k) = transpose of ``at`` into (d1 scalar, t12 row, D block)."""
    n = params.state_dim
    if at.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} transition matrix, got {at.shape}")
    a = at.T
    return float(a[0, 0]), a[0:1, 1:].copy(), a[1:, 1:].copy()


def matrix_process(params: StationParams, grid: float | None = None) -> MatrixProcess:
    """The station as a matrix process sampling A(k) (one uniform per step).

    ``grid`` optionally snaps interarrival samples to a dyadic lattice, which
    makes the scalar recurrence and the matrix product agree bit for bit.
    The attached fast norm path evaluates ||A_k|| through the recurrence
    identity y(k) = ||A_k||.
    """

    def draw(rng: np.random.Generator, size=None):
        smp = params.dist.sample(rng, size)
        return smp if grid is None else quantize(smp, grid)

    def sampler(k: int, rng: np.random.Generator) -> np.ndarray:
        return transition_matrix(float(draw(rng)), params).T

    def path_norms(rng: np.random.Generator, horizon: int) -> np.ndarray:
        alphas = draw(rng, horizon)
        _, ys = recurrence_path(alphas, params.b, params.c, params.m)
        return ys

    return MatrixProcess(dimension=params.state_dim, sampler=sampler,
                         path_norms=path_norms)


def scalar_vs_matrix_equivalence(params: StationParams, horizon: int, seed: int) -> bool:
    """Check y(k) == ||A(1)...A(k)|| for every k on shared samples.

    Samples are snapped to the dyadic grid so both routes perform exact
    float sums and the comparison is bit-exact.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    alphas = quantize(params.dist.sample(stream(seed), horizon))
    _, ys = recurrence_path(alphas, params.b, params.c, params.m)
    prod = tp.eye(params.state_dim)
    for k in range(1, horizon + 1):
        prod = tp.mmul(prod, transition_matrix(float(alphas[k - 1]), params).T)
        if tp.norm(prod) != ys[k - 1]:
            return False
    return True


def format_figure_csv(trace: SimTrace, stride: int, exact: float) -> str:
    """Two-column figure data k,lambda_hat plus the exact reference sidecar."""
    pts = estimator_series(trace, stride)
    lines = ["k,lambda_hat"]
    for k, lam in pts:
        lines.append(f"{int(k)},{lam:.10g}")
    lines.append(f"exact,{exact:.10g}")
    return "\n".join(lines) + "\n"


def default_station() -> StationParams:
    """The canonical demo configuration: exp(25) arrivals, b=5, c=100, m=4."""
    return StationParams(dist=Exponential(25.0), b=5.0, c=100.0, m=4)
