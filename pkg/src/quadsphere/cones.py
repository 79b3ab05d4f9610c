"""Matrix-cone machinery for the nonnegative orthant: Z-pattern and
irreducibility predicates, Perron dominant pairs, the full Pareto spectrum by
support enumeration, and the copositivity verdict derived from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .linalg import (
    ConvergenceError,
    SymMatrix,
    as_sym_matrix,
    eigen_decompose,
)

__all__ = [
    "ParetoEigenpair",
    "ParetoSpectrum",
    "PerronPair",
    "is_z_matrix",
    "is_irreducible",
    "perron_pair",
    "pareto_spectrum",
    "is_copositive",
    "check_kz_property",
]

# slack on (Ax - lambda x)_i >= 0 outside the support
_SLACK_TOL = 1e-9
# slack on eigenvector nonnegativity
_NONNEG_TOL = 1e-10
# strict positivity floor inside the support (boundary vectors are covered by
# smaller supports in the enumeration)
_STRICT_TOL = 1e-12

DEFAULT_MAX_EXACT_DIM = 16


@dataclass(frozen=True)
class ParetoEigenpair:
    """Pareto eigenvalue with a supporting unit vector.

    ``vector`` is nonnegative with unit norm, strictly positive exactly on
    ``support`` (0-based indices); (A - value I) vector vanishes on the support
    and is nonnegative off it, up to the documented slacks.
    """

    value: float
    vector: np.ndarray
    support: tuple


@dataclass(frozen=True)
class ParetoSpectrum:
    """All Pareto eigenpairs of a symmetric matrix, values ascending."""

    pairs: list
    min_value: float
    exact: bool


@dataclass(frozen=True)
class PerronPair:
    """Dominant eigenvalue of a nonnegative matrix with a nonnegative unit
    eigenvector."""

    value: float
    vector: np.ndarray


def is_z_matrix(A: SymMatrix, tol: float = _NONNEG_TOL) -> bool:
    """True iff all off-diagonal entries are at most ``tol``."""
    A = as_sym_matrix(A)
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    if A.n < 2:
        return True
    off = A.a[~np.eye(A.n, dtype=bool)]
    return bool(off.max() <= tol)


def is_irreducible(A: SymMatrix) -> bool:
    """Connectivity of the sparsity graph (edges where |a_ij| > 1e-12, i != j).

    For symmetric matrices reducibility is exactly disconnection of this graph.
    """
    A = as_sym_matrix(A)
    n = A.n
    if n == 1:
        return True
    adj = np.abs(A.a) > 1e-12
    np.fill_diagonal(adj, False)
    seen = np.zeros(n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        i = stack.pop()
        for j in np.flatnonzero(adj[i]):
            if not seen[j]:
                seen[j] = True
                stack.append(int(j))
    return bool(seen.all())


def perron_pair(A: SymMatrix) -> PerronPair:
    """Dominant eigenpair of an entrywise-nonnegative symmetric matrix."""
    A = as_sym_matrix(A)
    if float(A.a.min()) < -1e-12:
        raise ValueError("matrix must be entrywise nonnegative")
    E = eigen_decompose(A)
    lam = float(E.eigenvalues[-1])
    v = E.vectors[:, -1].copy()
    if v.sum() < 0:
        v = -v
    if float(v.min()) < -_NONNEG_TOL:
        # mixed signs can appear when the dominant eigenvalue is degenerate;
        # shifted power iteration recovers a nonnegative representative
        lam, v = _power_iteration(A)
    return PerronPair(value=lam, vector=v)


def _power_iteration(A: SymMatrix, cap: int = 10_000):
    shift = A.norm_fro()
    b = A.a + shift * np.eye(A.n)
    x = np.full(A.n, 1.0 / np.sqrt(A.n))
    for _ in range(cap):
        y = b @ x
        nrm = float(np.linalg.norm(y))
        if nrm == 0.0:
            break  # A is the zero matrix; any nonnegative unit vector works
        y /= nrm
        if float(np.linalg.norm(y - x)) <= 1e-14:
            x = y
            break
        x = y
    else:
        raise ConvergenceError("power iteration did not converge")
    lam = float(x @ A.a @ x)
    if float(np.linalg.norm(A.a @ x - lam * x)) > 1e-8 * max(1.0, A.norm_fro()):
        raise ConvergenceError("power iteration residual too large")
    return lam, x


def pareto_spectrum(
    A: SymMatrix,
    max_exact_dim: int = DEFAULT_MAX_EXACT_DIM,
    slack_tol: float = _SLACK_TOL,
    nonneg_tol: float = _NONNEG_TOL,
) -> ParetoSpectrum:
    """Exact Pareto spectrum by enumerating all nonempty supports.

    For every support J the principal submatrix is eigendecomposed; eigenpairs
    whose (sign-flipped) eigenvector is strictly positive on J and whose
    zero-extension keeps (Ax - lambda x) nonnegative off J are kept.
    """
    A = as_sym_matrix(A)
    n = A.n
    if n > max_exact_dim:
        raise ValueError(
            f"dimension {n} exceeds max_exact_dim={max_exact_dim}; "
            "use the sampling minimizer instead"
        )
    a = A.a
    found = []
    indices = list(range(n))
    for size in range(1, n + 1):
        for support in combinations(indices, size):
            idx = list(support)
            sub = SymMatrix(a[np.ix_(idx, idx)])
            E = eigen_decompose(sub)
            for k in range(size):
                lam = float(E.eigenvalues[k])
                u = E.vectors[:, k]
                for cand in (u, -u):
                    if float(cand.min()) < -nonneg_tol:
                        continue
                    if float(cand.min()) <= _STRICT_TOL:
                        # zero inside the support; the boundary vector is the
                        # interior vector of a smaller support
                        continue
                    x = np.zeros(n)
                    x[idx] = cand
                    resid = a @ x - lam * x
                    outside = np.delete(resid, idx)
                    if outside.size and float(outside.min()) < -slack_tol:
                        continue
                    found.append(ParetoEigenpair(lam, x, support))
                    break
    found.sort(key=lambda p: (p.value, p.support))
    pairs = _dedupe(found)
    if not pairs:
        raise ConvergenceError("empty Pareto spectrum; tolerances too tight")
    return ParetoSpectrum(pairs=pairs, min_value=pairs[0].value, exact=True)


def _dedupe(pairs, value_tol: float = 1e-9, vector_tol: float = 1e-7):
    kept = []
    for p in pairs:
        dup = any(
            abs(p.value - q.value) <= value_tol
            and float(np.linalg.norm(p.vector - q.vector)) <= vector_tol
            for q in kept
        )
        if not dup:
            kept.append(p)
    return kept


def is_copositive(
    A: SymMatrix,
    max_exact_dim: int = DEFAULT_MAX_EXACT_DIM,
    tol: float = _SLACK_TOL,
) -> bool:
    """True iff the minimum of <Ax, x> over the unit orthant patch is >= -tol.

    That minimum equals the least Pareto eigenvalue, so this is exact up to
    the enumeration dimension cap.
    """
    return pareto_spectrum(A, max_exact_dim=max_exact_dim).min_value >= -tol


def check_kz_property(A: SymMatrix, pairs) -> bool:
    """Check <Ax, y> <= 0 for the supplied complementary orthant pairs.

    Each pair must satisfy x >= 0, y >= 0 and <x, y> = 0 (within slack).
    With the canonical pairs {(e_i, e_j): i != j} this equals the Z-pattern
    test.
    """
    A = as_sym_matrix(A)
    for x, y in pairs:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if float(x.min()) < -_NONNEG_TOL or float(y.min()) < -_NONNEG_TOL:
            raise ValueError("pair members must lie in the nonnegative orthant")
        if abs(float(x @ y)) > _NONNEG_TOL:
            raise ValueError("pair members must be orthogonal")
        if float(x @ A.a @ y) > _SLACK_TOL:
            return False
    return True
