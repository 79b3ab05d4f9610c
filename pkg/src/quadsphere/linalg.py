"""Dense symmetric linear algebra with deterministic, tolerance-driven behavior.

The eigensolver is a cyclic Jacobi iteration rather than a LAPACK call so that
identical input bits always produce identical output bits, which the rest of
the package relies on for reproducible certificates and reports.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ConvergenceError",
    "SymMatrix",
    "EigenSystem",
    "EigenStructure",
    "eigen_decompose",
    "cluster_eigenvalues",
    "is_diagonal",
    "permute_similarity",
]


class ConvergenceError(RuntimeError):
    """An iterative routine hit its iteration cap without converging."""


class SymMatrix:
    """Dense symmetric n-by-n real matrix.

    Entries are symmetrized as (A + A^T)/2 on construction; asymmetry beyond
    ``rtol`` relative to the Frobenius norm is rejected as an input error.
    The stored array is read-only.
    """

    __slots__ = ("a",)

    def __init__(self, entries, rtol: float = 1e-9):
        a = np.array(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        scale = max(1.0, float(np.linalg.norm(a)))
        skew = float(np.abs(a - a.T).max()) if a.size else 0.0
        if skew > rtol * scale:
            raise ValueError(
                f"matrix is not symmetric (max |a_ij - a_ji| = {skew:g})"
            )
        sym = (a + a.T) / 2.0
        sym.setflags(write=False)
        object.__setattr__(self, "a", sym)

    def __setattr__(self, name, value):
        raise AttributeError("SymMatrix is immutable")

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def norm_fro(self) -> float:
        return float(np.linalg.norm(self.a))

    def quad(self, x: np.ndarray) -> float:
        """The quadratic form <Ax, x>."""
        x = np.asarray(x, dtype=float)
        return float(x @ self.a @ x)

    def __repr__(self):
        return f"SymMatrix({self.a.tolist()!r})"

    def __eq__(self, other):
        return isinstance(other, SymMatrix) and np.array_equal(self.a, other.a)

    def __hash__(self):
        return hash(self.a.tobytes())


def as_sym_matrix(a) -> SymMatrix:
    """Coerce an array-like or SymMatrix to SymMatrix."""
    if isinstance(a, SymMatrix):
        return a
    return SymMatrix(a)


@dataclass(frozen=True)
class EigenSystem:
    """Ascending eigenvalues with an orthonormal, sign-normalized basis.

    ``vectors[:, i]`` is the unit eigenvector for ``eigenvalues[i]``; in each
    column the entry of largest magnitude is nonnegative.  ``residual`` is
    the Frobenius norm of A - V diag(w) V^T.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray
    residual: float

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]

    def scale(self) -> float:
        """Frobenius norm of the decomposed matrix."""
        return float(np.linalg.norm(self.eigenvalues))


@dataclass(frozen=True)
class EigenStructure:
    """Eigenvalues grouped into clusters by a merging tolerance."""

    clusters: list  # list of (value, multiplicity), values strictly increasing
    distinct_count: int
    smallest_simple: bool


_JACOBI_SWEEP_CAP = 100


def eigen_decompose(A: SymMatrix) -> EigenSystem:
    """Full eigendecomposition by cyclic Jacobi rotations.

    Sweeps run until every off-diagonal magnitude is at most
    1e-12 * ||A||_F, capped at 100 sweeps.
    """
    A = as_sym_matrix(A)
    n = A.n
    a = A.a.copy()
    v = np.eye(n)
    fro = A.norm_fro()
    off_tol = 1e-12 * fro

    if n > 1:
        converged = False
        for _ in range(_JACOBI_SWEEP_CAP):
            off = _max_offdiag(a)
            if off <= off_tol:
                converged = True
                break
            # rotations below this threshold cannot help convergence this sweep
            skip = off_tol / max(1, n)
            for p in range(n - 1):
                for q in range(p + 1, n):
                    if abs(a[p, q]) <= skip:
                        continue
                    _jacobi_rotate(a, v, p, q)
        else:
            converged = False
        if not converged and _max_offdiag(a) > off_tol:
            raise ConvergenceError(
                "Jacobi iteration did not converge in "
                f"{_JACOBI_SWEEP_CAP} sweeps; input may be ill-conditioned"
            )

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]

    # deterministic sign: largest-magnitude entry of each column is >= 0
    for j in range(n):
        k = int(np.argmax(np.abs(v[:, j])))
        if v[k, j] < 0.0:
            v[:, j] = -v[:, j]

    residual = float(np.linalg.norm(A.a - (v * w) @ v.T))
    w.setflags(write=False)
    v.setflags(write=False)
    return EigenSystem(eigenvalues=w, vectors=v, residual=residual)


def _max_offdiag(a: np.ndarray) -> float:
    n = a.shape[0]
    if n < 2:
        return 0.0
    mask = ~np.eye(n, dtype=bool)
    return float(np.abs(a[mask]).max())


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """One symmetric Jacobi rotation annihilating a[p, q], in place."""
    apq = a[p, q]
    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
    t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
    if theta == 0.0:
        t = 1.0
    c = 1.0 / np.hypot(t, 1.0)
    s = t * c

    app, aqq = a[p, p], a[q, q]
    a[p, p] = c * c * app - 2.0 * s * c * apq + s * s * aqq
    a[q, q] = s * s * app + 2.0 * s * c * apq + c * c * aqq
    a[p, q] = a[q, p] = 0.0

    rows = [i for i in range(a.shape[0]) if i != p and i != q]
    aip = a[rows, p].copy()
    aiq = a[rows, q].copy()
    a[rows, p] = c * aip - s * aiq
    a[p, rows] = a[rows, p]
    a[rows, q] = s * aip + c * aiq
    a[q, rows] = a[rows, q]

    vp = v[:, p].copy()
    vq = v[:, q].copy()
    v[:, p] = c * vp - s * vq
    v[:, q] = s * vp + c * vq


def cluster_eigenvalues(E: EigenSystem, tol: float | None = None) -> EigenStructure:
    """Merge consecutive eigenvalues within ``tol`` into clusters.

    Merging is transitive: a chain of gaps each below ``tol`` forms a single
    cluster.  Default tolerance is 1e-8 * max(1, ||A||_F).
    """
    if tol is None:
        tol = 1e-8 * max(1.0, E.scale())
    if tol <= 0:
        raise ValueError("clustering tolerance must be positive")
    w = E.eigenvalues
    clusters = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[i - 1] > tol:
            members = w[start:i]
            clusters.append((float(members.mean()), int(len(members))))
            start = i
    return EigenStructure(
        clusters=clusters,
        distinct_count=len(clusters),
        smallest_simple=clusters[0][1] == 1,
    )


def is_diagonal(A: SymMatrix, tol: float | None = None) -> bool:
    """True iff every off-diagonal magnitude is at most ``tol``."""
    A = as_sym_matrix(A)
    if tol is None:
        tol = 1e-12 * max(1.0, A.norm_fro())
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    return _max_offdiag(A.a) <= tol


def permute_similarity(A: SymMatrix, perm) -> SymMatrix:
    """Return P^T A P for the permutation ``perm`` (0-based image list)."""
    A = as_sym_matrix(A)
    p = np.asarray(perm, dtype=int)
    if p.shape != (A.n,) or sorted(p.tolist()) != list(range(A.n)):
        raise ValueError(f"not a permutation of 0..{A.n - 1}: {perm!r}")
    return SymMatrix(A.a[np.ix_(p, p)])
