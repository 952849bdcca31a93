"""Exact rank over the rationals for sparse vectors keyed by hashable labels."""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping

__all__ = ["Echelon", "rank"]


class Echelon:
    """Incrementally maintained row echelon form.

    Each stored row is keyed by its pivot, the smallest label of the row
    under ``order``; every other label of the row sorts after the pivot.
    Reduction therefore walks labels in increasing order and never revisits
    a label once it has been passed.
    """

    def __init__(self, order: Callable[[Hashable], tuple]):
        self.order = order
        self.rows: dict[Hashable, dict[Hashable, Fraction]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping[Hashable, Fraction]) -> dict[Hashable, Fraction]:
        v = {k: Fraction(c) for k, c in vec.items() if c}
        order = self.order
        heap = [(order(k), i, k) for i, k in enumerate(v) if k in self.rows]
        heapq.heapify(heap)
        tie = len(heap)
        while heap:
            _, _, k = heapq.heappop(heap)
            c = v.get(k)
            if not c:
                continue
            for key, a in self.rows[k].items():
                nv = v.get(key, 0) - c * a
                if nv:
                    if key not in v and key in self.rows:
                        tie += 1
                        heapq.heappush(heap, (order(key), tie, key))
                    v[key] = nv
                else:
                    v.pop(key, None)
        return v

    def add(self, vec: Mapping[Hashable, Fraction]) -> dict[Hashable, Fraction] | None:
        """Insert ``vec``; return its reduced form if it was independent."""
        v = self.reduce(vec)
        if not v:
            return None
        pivot = min(v, key=self.order)
        lead = v[pivot]
        row = {k: c / lead for k, c in v.items()}
        self.rows[pivot] = row
        return row


def rank(vectors: Iterable[Mapping[Hashable, Fraction]], order: Callable[[Hashable], tuple] | None = None) -> int:
    """Rank of a family of sparse vectors.

    ``order`` must be a total order on the labels; the default compares
    ``repr`` strings, which is enough for labels with distinct reprs.
    """
    ech = Echelon(order or (lambda k: (repr(k),)))
    for vec in vectors:
        ech.add(vec)
    return len(ech)
