"""GF(2) linear algebra on int bitmasks."""

from __future__ import annotations

from typing import Iterable


class Basis:
    """Incremental row basis; vectors keep distinct leading bits."""

    def __init__(self, rows: Iterable[int] = ()):
        self.vectors: list[int] = []
        for row in rows:
            self.add(row)

    def reduce(self, vec: int) -> int:
        for b in self.vectors:
            vec = min(vec, vec ^ b)
        return vec

    def add(self, row: int) -> bool:
        """Insert if independent; returns True when the rank grew."""
        row = self.reduce(row)
        if not row:
            return False
        self.vectors.append(row)
        self.vectors.sort(reverse=True)
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0

    @property
    def rank(self) -> int:
        return len(self.vectors)


def rank(rows: Iterable[int]) -> int:
    return Basis(rows).rank


def in_span(vec: int, rows: Iterable[int]) -> bool:
    return Basis(rows).contains(vec)
