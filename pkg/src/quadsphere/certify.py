"""The decision procedure for spherical quasi-convexity of q_A(x) = <Ax, x>
on the nonnegative orthant patch of the sphere.

Cheap necessary conditions run first, then full characterizations for the
structured classes (diagonal, two-eigenvalue), then the copositivity-based
sufficient condition, then obstruction constructions, and finally seeded
falsification.  Yes-verdicts always carry a re-checkable certificate,
No-verdicts a witness whose defining inequalities re-verify by direct
arithmetic; anything undecided is an honest Unknown.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .config import Config, DEFAULT
from .cones import is_copositive, pareto_spectrum
from .linalg import (
    SymMatrix,
    as_sym_matrix,
    cluster_eigenvalues,
    eigen_decompose,
    is_diagonal,
)

__all__ = [
    "Rule",
    "WitnessKind",
    "Status",
    "Certificate",
    "Witness",
    "Verdict",
    "certify",
    "construct_diag_witness",
    "construct_threevec_witness",
    "pair_violation_margin",
    "verify_witness",
]


class Rule(enum.Enum):
    CONSTANT_FORM = "ConstantForm"
    DIAGONAL_CHARACTERIZATION = "DiagonalCharacterization"
    TWO_EIGENVALUE_CHARACTERIZATION = "TwoEigenvalueCharacterization"
    COPOSITIVE_SUFFICIENCY = "CopositiveSufficiency"
    Z_MATRIX_FAST_PATH_V = "ZMatrixFastPathV"
    Z_MATRIX_FAST_PATH_VI = "ZMatrixFastPathVI"
    NEGATIVE_POSITIVE_MATRIX = "NegativePositiveMatrix"


class WitnessKind(enum.Enum):
    PAIR_VIOLATION = "PairViolation"
    CONE_NONCONVEXITY = "ConeNonconvexity"
    Z_VIOLATION = "ZViolation"
    THREE_NONNEG_EIGENVECTORS = "ThreeNonnegEigenvectors"


class Status(enum.Enum):
    CERTIFIED_QUASICONVEX = "CertifiedQuasiconvex"
    CERTIFIED_NOT_QUASICONVEX = "CertifiedNotQuasiconvex"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Certificate:
    """Machine-checkable evidence for a Yes verdict."""

    rule: Rule
    data: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Witness:
    """Concrete violation data refuting quasi-convexity.

    PairViolation: data has unit orthant vectors ``x``, ``y`` with
        <Ax, y> - <x, y> max{q(x), q(y)} = margin > 0.
    ConeNonconvexity: data has ``c``, ``x``, ``y`` in the orthant with
        q(x) - c||x||^2 <= 0, q(y) - c||y||^2 <= 0 but
        q(x + y) - c||x + y||^2 = margin > 0.
    """

    kind: WitnessKind
    data: dict
    margin: float


@dataclass(frozen=True)
class Verdict:
    status: Status
    certificate: Certificate | None = None
    witness: Witness | None = None
    probe_summary: dict | None = None


def pair_violation_margin(A: SymMatrix, x, y) -> float:
    """Margin of the two-point inequality <Ax, y> <= <x, y> max{q(x), q(y)}.

    Both points must lie on the sphere inside the closed orthant; a positive
    margin beyond tolerance refutes quasi-convexity.
    """
    A = as_sym_matrix(A)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    for p in (x, y):
        if float(p.min()) < -1e-12:
            raise ValueError("points must lie in the closed orthant")
        if abs(float(np.linalg.norm(p)) - 1.0) > 1e-9:
            raise ValueError("points must lie on the unit sphere")
    ax = A.a @ x
    qx = float(ax @ x)
    qy = float(y @ A.a @ y)
    return float(ax @ y) - float(x @ y) * max(qx, qy)


def verify_witness(A: SymMatrix, w: Witness, config: Config = DEFAULT) -> bool:
    """Re-check a witness's defining inequalities by direct arithmetic."""
    A = as_sym_matrix(A)
    if w.kind is WitnessKind.PAIR_VIOLATION:
        try:
            margin = pair_violation_margin(A, w.data["x"], w.data["y"])
        except ValueError:
            return False
        return margin > config.tol_margin
    if w.kind is WitnessKind.CONE_NONCONVEXITY:
        c = float(w.data["c"])
        x = np.asarray(w.data["x"], dtype=float)
        y = np.asarray(w.data["y"], dtype=float)
        if float(x.min()) < -1e-12 or float(y.min()) < -1e-12:
            return False
        ac = A.a - c * np.eye(A.n)
        if float(x @ ac @ x) > 1e-10 or float(y @ ac @ y) > 1e-10:
            return False
        s = x + y
        return float(s @ ac @ s) > config.tol_margin
    return False


def construct_diag_witness(diag_entries) -> Witness:
    """Sublevel-cone nonconvexity witness for a diagonal matrix that is not
    quasi-convex (more than two distinct values, or a repeated smallest one).

    With a shift c between the right pair of distinct values, the two
    canonical-direction combinations x = e_i + t_i e_k and y = e_j + t_j e_k
    sit on the boundary of the shifted sublevel cone while x + y leaves it.
    """
    d = np.asarray(diag_entries, dtype=float)
    if d.ndim != 1 or d.shape[0] < 3:
        raise ValueError("need at least three diagonal entries")
    scale = max(1.0, float(np.linalg.norm(d)))
    tol = 1e-8 * scale
    order = np.argsort(d, kind="stable")
    distinct = []  # (value, [indices])
    for idx in order:
        if distinct and d[idx] - distinct[-1][0] <= tol:
            distinct[-1][1].append(int(idx))
        else:
            distinct.append((float(d[idx]), [int(idx)]))

    if len(distinct) < 2:
        raise ValueError("constant diagonal matrix is quasi-convex")
    if len(distinct[0][1]) >= 2:
        i, j = distinct[0][1][:2]
        k = distinct[1][1][0]
        c = (distinct[0][0] + distinct[1][0]) / 2.0
        nu = d[k]
    elif len(distinct) >= 3:
        i = distinct[0][1][0]
        j = distinct[1][1][0]
        k = distinct[2][1][0]
        c = (distinct[1][0] + distinct[2][0]) / 2.0
        nu = d[k]
    else:
        raise ValueError(
            "two distinct values with a simple smallest one: quasi-convex, "
            "no witness exists"
        )

    n = d.shape[0]
    ti = np.sqrt((c - d[i]) / (nu - c))
    tj = np.sqrt((c - d[j]) / (nu - c))
    x = np.zeros(n)
    y = np.zeros(n)
    x[i] = 1.0
    x[k] = ti
    y[j] = 1.0
    y[k] += tj
    margin = 2.0 * np.sqrt((c - d[i]) * (c - d[j]))
    return Witness(
        kind=WitnessKind.CONE_NONCONVEXITY,
        data={"c": float(c), "x": x, "y": y},
        margin=float(margin),
    )


def construct_threevec_witness(v1, v2, v3, l1: float, l2: float, l3: float) -> Witness:
    """Sublevel-cone nonconvexity witness from three orthonormal nonnegative
    eigenvectors spanning at least two distinct eigenvalues.

    The construction is decisive when the two largest of the three eigenvalues
    differ; in the degenerate case (l1 < l2 = l3) the combination collapses to
    a zero margin and the returned witness will fail verification.
    """
    vs = [np.asarray(v, dtype=float) for v in (v1, v2, v3)]
    ls = [float(l) for l in (l1, l2, l3)]
    order = np.argsort(ls, kind="stable")
    vs = [vs[i] for i in order]
    ls = [ls[i] for i in order]
    for v in vs:
        if float(v.min()) < -1e-9:
            raise ValueError("eigenvectors must be nonnegative")
        if abs(float(np.linalg.norm(v)) - 1.0) > 1e-9:
            raise ValueError("eigenvectors must be unit vectors")
    for a in range(3):
        for b in range(a + 1, 3):
            if abs(float(vs[a] @ vs[b])) > 1e-9:
                raise ValueError("eigenvectors must be pairwise orthogonal")

    scale = max(1.0, max(abs(l) for l in ls))
    tol = 1e-12 * scale
    if ls[2] - ls[0] <= tol:
        raise ValueError("at least two distinct eigenvalues required")

    if ls[2] - ls[1] > tol:
        c = (ls[1] + ls[2]) / 2.0
        t1 = np.sqrt((c - ls[0]) / (ls[2] - c))
        t2 = np.sqrt((c - ls[1]) / (ls[2] - c))
        w1 = vs[0] + t1 * vs[2]
        w2 = vs[1] + t2 * vs[2]
        margin = 2.0 * np.sqrt((c - ls[0]) * (c - ls[1]))
    else:
        # degenerate branch l1 < l2 = l3: follow the analogous combination,
        # which cancels to zero margin; callers must verify before use
        c = (ls[0] + ls[1]) / 2.0
        t1 = np.sqrt((ls[1] - c) / (c - ls[0]))
        t2 = np.sqrt((ls[2] - c) / (c - ls[0]))
        w1 = t1 * vs[0] + vs[2]
        w2 = t2 * vs[0] + vs[2]
        s = w1 + w2
        margin = (
            (ls[0] - c) * float((s @ vs[0])) ** 2
            + (ls[1] - c) * float((s @ vs[1])) ** 2
            + (ls[2] - c) * float((s @ vs[2])) ** 2
        )
    return Witness(
        kind=WitnessKind.CONE_NONCONVEXITY,
        data={"c": float(c), "x": w1, "y": w2},
        margin=float(margin),
    )


def certify(A: SymMatrix, config: Config = DEFAULT) -> Verdict:
    """Decide spherical quasi-convexity of q_A on the orthant patch.

    Returns at the first decisive step; see the module docstring for the
    ordering rationale.
    """
    A = as_sym_matrix(A)
    if A.n < 2:
        raise ValueError("dimension must be at least 2")
    a = A.a
    n = A.n
    E = eigen_decompose(A)
    S = cluster_eigenvalues(E)

    # 1. constant form: a single eigenvalue makes q_A constant on the sphere
    if S.distinct_count == 1:
        return Verdict(
            status=Status.CERTIFIED_QUASICONVEX,
            certificate=Certificate(
                Rule.CONSTANT_FORM, {"eigenvalue": S.clusters[0][0]}
            ),
        )

    # 2. Z-pattern necessity: a positive off-diagonal entry a_ij gives the
    # direct violation pair (e_i, e_j).  The No threshold is tol_margin so the
    # emitted witness always re-verifies.
    off = a - np.diag(np.diag(a))
    i, j = np.unravel_index(np.argmax(off), off.shape)
    if off[i, j] > config.tol_margin:
        x = np.zeros(n)
        y = np.zeros(n)
        x[i] = 1.0
        y[j] = 1.0
        witness = Witness(
            kind=WitnessKind.PAIR_VIOLATION,
            data={"x": x, "y": y, "entry": (int(i), int(j))},
            margin=float(off[i, j]),
        )
        return Verdict(status=Status.CERTIFIED_NOT_QUASICONVEX, witness=witness)

    # 3. diagonal matrices are fully characterized: exactly two distinct
    # values with a simple smallest one
    if is_diagonal(A):
        if S.distinct_count == 2 and S.smallest_simple:
            return Verdict(
                status=Status.CERTIFIED_QUASICONVEX,
                certificate=Certificate(
                    Rule.DIAGONAL_CHARACTERIZATION,
                    {"clusters": S.clusters, "eigenvector": E.vectors[:, 0].copy()},
                ),
            )
        witness = construct_diag_witness(np.diag(a))
        if verify_witness(A, witness, config):
            return Verdict(status=Status.CERTIFIED_NOT_QUASICONVEX, witness=witness)
        # tolerance edge (values distinct only marginally): fall through

    # 4. two eigenvalue clusters with a simple smallest: decided by whether
    # the smallest eigenvector fits in the orthant (either sign)
    if S.distinct_count == 2 and S.smallest_simple:
        v1 = _orthant_representative(E.vectors[:, 0], config.tol_sign)
        if v1 is not None:
            return Verdict(
                status=Status.CERTIFIED_QUASICONVEX,
                certificate=Certificate(
                    Rule.TWO_EIGENVALUE_CHARACTERIZATION,
                    {"clusters": S.clusters, "eigenvector": v1},
                ),
            )
        return _falsify_verdict(A, config)

    # 5. copositivity sufficiency: a nonnegative smallest eigenvector plus
    # copositivity of (second smallest eigenvalue) I - A.  The second smallest
    # eigenvalue is counted with multiplicity; using the next cluster value
    # instead would be unsound when the smallest eigenvalue repeats.
    if n <= config.max_exact_dim:
        cand = _lambda1_orthant_vector(E, S, config.tol_sign)
        if cand is not None:
            lam2 = float(E.eigenvalues[1])
            shifted = SymMatrix(lam2 * np.eye(n) - a)
            spectrum = pareto_spectrum(shifted, max_exact_dim=config.max_exact_dim)
            if spectrum.min_value >= -config.tol_slack:
                return Verdict(
                    status=Status.CERTIFIED_QUASICONVEX,
                    certificate=Certificate(
                        Rule.COPOSITIVE_SUFFICIENCY,
                        {
                            "eigenvector": cand,
                            "lambda2": lam2,
                            "pareto_min": spectrum.min_value,
                        },
                    ),
                )

    # 6. three pairwise-orthogonal nonnegative eigenvectors across at least
    # two distinct clusters obstruct quasi-convexity
    witness = _threevec_search(A, E, config)
    if witness is not None:
        return Verdict(status=Status.CERTIFIED_NOT_QUASICONVEX, witness=witness)

    # 7. fall back to seeded falsification
    return _falsify_verdict(A, config)


def _orthant_representative(v: np.ndarray, tol: float) -> np.ndarray | None:
    """Return v or -v if one of them is entrywise >= -tol, else None."""
    for cand in (v, -v):
        if float(cand.min()) >= -tol:
            return cand.copy()
    return None


def _lambda1_orthant_vector(E, S, tol: float) -> np.ndarray | None:
    """Search the smallest-eigenvalue eigenspace for a nonnegative vector.

    For a simple eigenvalue only the two signs are checked.  For a repeated
    one, the basis columns and the projection of the all-ones direction are
    tried; this heuristic can miss, which degrades Yes to Unknown but never
    produces a wrong verdict.
    """
    mult = S.clusters[0][1]
    for k in range(mult):
        cand = _orthant_representative(E.vectors[:, k], tol)
        if cand is not None:
            return cand
    if mult > 1:
        basis = E.vectors[:, :mult]
        proj = basis @ (basis.T @ np.ones(E.n))
        nrm = float(np.linalg.norm(proj))
        if nrm > 1e-12:
            return _orthant_representative(proj / nrm, tol)
    return None


def _threevec_search(A: SymMatrix, E, config: Config) -> Witness | None:
    from itertools import combinations

    cands = []
    for k in range(E.n):
        rep = _orthant_representative(E.vectors[:, k], 1e-9)
        if rep is not None:
            cands.append((float(E.eigenvalues[k]), rep))
    if len(cands) < 3:
        return None
    scale = max(1.0, E.scale())
    ctol = 1e-8 * scale

    def distinct_count(triple):
        vals = sorted(t[0] for t in triple)
        count = 1
        for a, b in zip(vals, vals[1:]):
            if b - a > ctol:
                count += 1
        return count

    triples = list(combinations(cands, 3))[:200]
    # prefer triples whose top two eigenvalues differ; the degenerate case
    # cannot yield a positive margin
    def top_gap(triple):
        vals = sorted(t[0] for t in triple)
        return vals[2] - vals[1] > ctol

    for preferred in (True, False):
        for triple in triples:
            if distinct_count(triple) < 2 or top_gap(triple) is not preferred:
                continue
            try:
                w = construct_threevec_witness(
                    triple[0][1], triple[1][1], triple[2][1],
                    triple[0][0], triple[1][0], triple[2][0],
                )
            except ValueError:
                continue
            if verify_witness(A, w, config):
                return w
    return None


def _falsify_verdict(A: SymMatrix, config: Config) -> Verdict:
    from .probe import falsify

    report = falsify(A, config.samples, config.seed, tol_margin=config.tol_margin)
    summary = {
        "samples": report.samples_used,
        "best_margin": report.best_margin,
        "seed": report.seed,
    }
    if report.witness is not None and verify_witness(A, report.witness, config):
        return Verdict(
            status=Status.CERTIFIED_NOT_QUASICONVEX,
            witness=report.witness,
            probe_summary=summary,
        )
    return Verdict(status=Status.UNKNOWN, probe_summary=summary)
