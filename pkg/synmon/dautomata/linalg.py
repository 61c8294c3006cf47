"""Exact linear algebra over the prime field F_p on numpy integer arrays."""
from typing import List, Optional, Sequence, Tuple

import numpy as np


def as_matrix(rows: Sequence[Sequence[int]], p: int, width: Optional[int] = None) -> np.ndarray:
    if len(rows) == 0:
        return np.zeros((0, width or 0), dtype=np.int64)
    return np.asarray(rows, dtype=np.int64) % p


def to_rows(matrix: np.ndarray) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in matrix)


def rref(matrix: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form mod p and the pivot columns."""
    reduced = np.array(matrix, dtype=np.int64) % p
    rows, cols = reduced.shape
    pivots: List[int] = []
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        candidates = np.nonzero(reduced[row:, col])[0]
        if candidates.size == 0:
            continue
        pivot = row + int(candidates[0])
        if pivot != row:
            reduced[[row, pivot]] = reduced[[pivot, row]]
        inverse = pow(int(reduced[row, col]), -1, p)
        reduced[row] = (reduced[row] * inverse) % p
        for other in range(rows):
            if other != row and reduced[other, col]:
                reduced[other] = (reduced[other] - reduced[other, col] * reduced[row]) % p
        pivots.append(col)
        row += 1
    return reduced, pivots


def rank(matrix: np.ndarray, p: int) -> int:
    if matrix.size == 0:
        return 0
    return len(rref(matrix, p)[1])


def solve_left(basis: np.ndarray, vector: np.ndarray, p: int) -> Optional[np.ndarray]:
    """Coefficients x with x @ basis == vector (mod p), or None outside the span.

    `basis` rows must be linearly independent.
    """
    k = basis.shape[0]
    if k == 0:
        return np.zeros(0, dtype=np.int64) if not np.any(vector % p) else None
    augmented = np.concatenate([basis.T, np.asarray(vector, dtype=np.int64).reshape(-1, 1)], axis=1)
    reduced, pivots = rref(augmented, p)
    if k in pivots:
        return None
    solution = np.zeros(k, dtype=np.int64)
    for r, col in enumerate(pivots):
        solution[col] = reduced[r, k]
    return solution


class SpanBuilder:
    """Incrementally collects linearly independent vectors in insertion order."""

    def __init__(self, width: int, p: int):
        self.width = width
        self.p = p
        self.vectors: List[np.ndarray] = []

    @property
    def basis(self) -> np.ndarray:
        if not self.vectors:
            return np.zeros((0, self.width), dtype=np.int64)
        return np.stack(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def coordinates(self, vector: np.ndarray) -> Optional[np.ndarray]:
        return solve_left(self.basis, vector, self.p)

    def add(self, vector: np.ndarray) -> bool:
        """Add `vector` if it is outside the current span; report whether it was added."""
        vector = np.asarray(vector, dtype=np.int64) % self.p
        if not np.any(vector) or self.coordinates(vector) is not None:
            return False
        self.vectors.append(vector)
        return True
