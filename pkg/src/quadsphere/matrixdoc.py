"""The single interchange format: a JSON document with fields ``n``, ``rows``
and an optional ``name``.  Floats are serialized with full precision so a
write/read round trip reproduces entries bit-exactly.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .linalg import SymMatrix

__all__ = ["MatrixDocument", "loads", "load_path", "dumps"]


@dataclass(frozen=True)
class MatrixDocument:
    matrix: SymMatrix
    name: str | None = None

    def digest(self) -> str:
        """Stable hash of the document content."""
        payload = json.dumps(
            {"n": self.matrix.n, "rows": self.matrix.a.tolist()},
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


def loads(text: str) -> MatrixDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed matrix document: {exc}") from exc
    if not isinstance(doc, dict) or "rows" not in doc:
        raise ValueError("matrix document must be an object with a 'rows' field")
    rows = doc["rows"]
    n = doc.get("n", len(rows))
    arr = np.array(rows, dtype=float)
    if arr.ndim != 2 or arr.shape != (n, n):
        raise ValueError(f"'rows' must be an {n}x{n} array, got shape {arr.shape}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ValueError("'name' must be a string")
    return MatrixDocument(matrix=SymMatrix(arr), name=name)


def load_path(path) -> MatrixDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(A: SymMatrix, name: str | None = None) -> str:
    doc = {"n": A.n, "rows": A.a.tolist()}
    if name is not None:
        doc["name"] = name
    return json.dumps(doc, indent=2) + "\n"
