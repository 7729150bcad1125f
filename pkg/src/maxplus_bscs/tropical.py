"""Max-plus (tropical) scalar and dense matrix algebra.

The carrier set is R united with -inf under (max, +): tropical addition is
the maximum, tropical multiplication is ordinary addition.  Scalars are
plain Python/numpy floats with ``float('-inf')`` as the additive neutral
element (it absorbs multiplication, and no NaN can arise because +inf is
rejected at every construction point).  Matrices and vectors are dense
float64 numpy arrays; every operation is a pure function returning a fresh
array.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

# Additive neutral (absorbing for tropical multiplication).
ZERO = float("-inf")
# Multiplicative neutral: the real number 0.
ONE = 0.0


def add(x: float, y: float) -> float:
    """Tropical sum: max(x, y)."""
    return x if x >= y else y


def mul(x: float, y: float) -> float:
    """Tropical product: x + y, with -inf absorbing."""
    return x + y


def inverse(x: float) -> float:
    """Tropical multiplicative inverse (-x). Undefined for the zero element."""
    if x == ZERO:
        raise ValueError("tropical zero has no multiplicative inverse")
    return -x


def power(x: float, q) -> float:
    """Tropical power x**q for rational q, i.e. the real product q*x.

    Conventions for the zero element: ZERO**q is ZERO for q > 0 and ONE for
    q == 0; negative powers of ZERO are undefined.  For q >= 0 the binomial
    identity (x (+) y)**q = x**q (+) y**q holds.
    """
    if x == ZERO:
        if q > 0:
            return ZERO
        if q == 0:
            return ONE
        raise ValueError("negative power of the tropical zero")
    if isinstance(q, Fraction):
        return x * q.numerator / q.denominator
    return x * q


def as_matrix(data) -> np.ndarray:
    """Coerce nested sequences / arrays to a validated 2-d float64 matrix."""
    arr = np.array(data, dtype=float)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"expected a nonempty 2-d matrix, got shape {arr.shape}")
    if np.isnan(arr).any() or np.isposinf(arr).any():
        raise ValueError("matrix entries must be finite reals or -inf")
    return arr


def as_vector(data) -> np.ndarray:
    """Coerce a sequence / array to a validated 1-d float64 vector."""
    arr = np.array(data, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"expected a nonempty 1-d vector, got shape {arr.shape}")
    if np.isnan(arr).any() or np.isposinf(arr).any():
        raise ValueError("vector entries must be finite reals or -inf")
    return arr


def zeros(shape) -> np.ndarray:
    """Matrix or vector with every entry equal to the tropical zero."""
    return np.full(shape, ZERO)


def eye(n: int) -> np.ndarray:
    """Tropical identity: ONE on the diagonal, ZERO elsewhere."""
    out = np.full((n, n), ZERO)
    np.fill_diagonal(out, ONE)
    return out


def ones(n: int) -> np.ndarray:
    """Vector of tropical ones (all real 0)."""
    return np.zeros(n)


def is_regular(a: np.ndarray) -> bool:
    """True when no entry equals the tropical zero."""
    return bool(np.isfinite(a).all())


def madd(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Entrywise tropical sum of equally shaped matrices/vectors."""
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return np.maximum(a, b)


def mmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tropical matrix product: (a b)_ij = max_k (a_ik + b_kj)."""
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ValueError(f"incompatible shapes for product: {a.shape} x {b.shape}")
    return (a[:, :, None] + b[None, :, :]).max(axis=1)


def matvec(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Tropical matrix-vector product."""
    if a.ndim != 2 or x.ndim != 1 or a.shape[1] != x.shape[0]:
        raise ValueError(f"incompatible shapes for product: {a.shape} x {x.shape}")
    return (a + x[None, :]).max(axis=1)


def scale(x: float, a: np.ndarray) -> np.ndarray:
    """Tropical scalar multiple: add x to every entry."""
    return a + x


def mpow(a: np.ndarray, p: int) -> np.ndarray:
    """Tropical matrix power, a**0 = identity."""
    _require_square(a)
    if p < 0:
        raise ValueError("matrix powers need a nonnegative exponent")
    out = eye(a.shape[0])
    for _ in range(p):
        out = mmul(out, a)
    return out


def conjugate(a: np.ndarray) -> np.ndarray:
    """Multiplicative conjugate: transpose with finite entries negated.

    Entries equal to the tropical zero stay zero; an all-zero matrix has no
    conjugate.
    """
    if np.isneginf(a).all():
        raise ValueError("conjugate of the all-zero matrix is undefined")
    at = a.T
    return np.where(np.isneginf(at), ZERO, -at)


def trace(a: np.ndarray) -> float:
    """Tropical trace: maximum diagonal entry."""
    _require_square(a)
    return float(np.diagonal(a).max())


def cycle_trace(a: np.ndarray) -> float:
    """max over m = 1..n of trace(a**m); the tropical determinant analogue.

    Nonpositive exactly when the weighted digraph of ``a`` has no cycle of
    positive total weight, which is the convergence condition for
    :func:`kleene_star`.
    """
    _require_square(a)
    n = a.shape[0]
    best = ZERO
    p = a
    for _ in range(n):
        best = add(best, trace(p))
        p = mmul(p, a)
    return best


def kleene_star(a: np.ndarray) -> np.ndarray:
    """Kleene star I (+) a (+) ... (+) a**(n-1); needs cycle_trace(a) <= ONE."""
    _require_square(a)
    if cycle_trace(a) > ONE:
        raise ValueError("Kleene star requires cycle_trace(a) <= 0")
    n = a.shape[0]
    out = eye(n)
    p = eye(n)
    for _ in range(n - 1):
        p = mmul(p, a)
        out = np.maximum(out, p)
    return out


def norm(a: np.ndarray) -> float:
    """Tropical norm: the maximum entry (of a matrix or a vector)."""
    return float(a.max())


def spectral_radius(a: np.ndarray) -> float:
    """Maximum tropical eigenvalue: max over m = 1..n of trace(a**m) / m.

    Equals the maximum mean weight of the elementary cycles of the weighted
    digraph of ``a`` (ZERO for an acyclic graph).  Computed straight from the
    definition with repeated products, O(n^4); model matrices are small.
    """
    _require_square(a)
    n = a.shape[0]
    best = ZERO
    p = a
    for m in range(1, n + 1):
        best = add(best, trace(p) / m)
        p = mmul(p, a)
    return best


def solve_bellman(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Unique solution x = a x (+) b, as kleene_star(a) b.

    Uniqueness holds under cycle_trace(a) < ONE (strict); the substituted
    equation then reproduces x exactly.
    """
    _require_square(a)
    if b.ndim != 1 or b.shape[0] != a.shape[0]:
        raise ValueError(f"rhs shape {b.shape} does not match matrix {a.shape}")
    if not cycle_trace(a) < ONE:
        raise ValueError("unique solution requires cycle_trace(a) < 0")
    return matvec(kleene_star(a), b)


def to_jsonable(a: np.ndarray):
    """Nested lists with the string "-inf" standing in for the tropical zero."""
    if a.ndim == 1:
        return [x if np.isfinite(x) else "-inf" for x in a.tolist()]
    return [[x if np.isfinite(x) else "-inf" for x in row] for row in a.tolist()]


def from_json(obj) -> np.ndarray:
    """Parse the JSON interchange form (numbers, "-inf") into an array."""

    def entry(v):
        if v == "-inf":
            return ZERO
        if isinstance(v, (int, float)) and not isinstance(v, bool):
            return float(v)
        raise ValueError(f"bad tropical entry: {v!r}")

    if not isinstance(obj, list) or not obj:
        raise ValueError("expected a nonempty JSON array")
    if isinstance(obj[0], list):
        rows = [[entry(v) for v in row] for row in obj]
        return as_matrix(rows)
    return as_vector([entry(v) for v in obj])


def _require_square(a: np.ndarray) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
