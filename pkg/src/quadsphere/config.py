"""Shared tolerance and sampling knobs."""

from __future__ import annotations

from dataclasses import dataclass, asdict


@dataclass(frozen=True)
class Config:
    """Tolerances and budgets used across the certifier and probes.

    tol_margin   -- a violation counts only beyond this margin
    tol_sign     -- slack for sign tests (orthant membership, Z-pattern)
    tol_slack    -- complementarity slack for Pareto eigenpairs
    max_exact_dim -- largest dimension for exhaustive support enumeration
    samples      -- sampling budget for the falsifier
    seed         -- master seed for all randomized search
    """

    tol_margin: float = 1e-8
    tol_sign: float = 1e-10
    tol_slack: float = 1e-9
    max_exact_dim: int = 16
    samples: int = 100_000
    seed: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT = Config()
