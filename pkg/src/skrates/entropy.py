"""Entropy oracle for hypergraphical sources.

Edge variables are independent, so joint entropies are sums of edge
entropies: H(Z_B) counts every edge meeting B, H(Z_B | Z_{V\\B}) every edge
inside B. All results are exact rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import DomainError
from .source import HypergraphSource

MEMO_MAX_VERTICES = 24


class EntropyOracle:
    """Memoizing H(Z_B) evaluator; keys are vertex bitmasks."""

    def __init__(self, source: HypergraphSource):
        if source.m > MEMO_MAX_VERTICES:
            raise DomainError(f"entropy memoization capped at m <= {MEMO_MAX_VERTICES}")
        self.source = source
        self._edge_masks = [
            (sum(1 << source.index(v) for v in e.on), e.h) for e in source.edges
        ]
        self._memo: dict[int, Fraction] = {0: Fraction(0)}

    def _mask(self, B: Iterable[str]) -> int:
        return sum(1 << self.source.index(v) for v in frozenset(B))

    def entropy_mask(self, mask: int) -> Fraction:
        cached = self._memo.get(mask)
        if cached is None:
            cached = sum(
                (h for em, h in self._edge_masks if em & mask), Fraction(0)
            )
            self._memo[mask] = cached
        return cached

    def entropy(self, B: Iterable[str]) -> Fraction:
        return self.entropy_mask(self._mask(B))

    def cond_entropy(self, B: Iterable[str]) -> Fraction:
        """H(Z_B | Z_{V\\B}): total entropy of edges contained in B."""
        mask = self._mask(B)
        return sum(
            (h for em, h in self._edge_masks if em & mask == em), Fraction(0)
        )


def entropy(source: HypergraphSource, B: Iterable[str]) -> Fraction:
    return EntropyOracle(source).entropy(B)


def cond_entropy(source: HypergraphSource, B: Iterable[str]) -> Fraction:
    return EntropyOracle(source).cond_entropy(B)
