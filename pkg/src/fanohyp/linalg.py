"""Exact rank and span membership over the rationals.

Rows are sparse ``{column: value}`` mappings with ``int`` or ``Fraction``
values.  Elimination is fraction-free: every stored row is a primitive
integer vector, so ranks are bit-identical on every run.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

SparseRow = Mapping[object, "int | Fraction"]


def _integral(row: SparseRow) -> dict:
    items = {c: v for c, v in row.items() if v}
    dens = [v.denominator for v in items.values() if isinstance(v, Fraction)]
    scale = lcm(*dens) if dens else 1
    out = {c: int(v * scale) for c, v in items.items()}
    return _primitive(out)


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


class EchelonBasis:
    """Incrementally maintained row-echelon basis of a subspace.

    Columns must be mutually comparable; the smallest column of a row is
    its pivot.
    """

    def __init__(self, rows: Iterable[SparseRow] = ()):
        self._pivots: dict = {}
        for r in rows:
            self.add(r)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def __len__(self) -> int:
        return len(self._pivots)

    def _reduce(self, row: dict) -> dict:
        while row:
            c = min(row)
            pivot = self._pivots.get(c)
            if pivot is None:
                return row
            a, b = pivot[c], row[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {col: v * fa for col, v in row.items()}
            for col, v in pivot.items():
                nv = new.get(col, 0) - fb * v
                if nv:
                    new[col] = nv
                else:
                    new.pop(col, None)
            row = _primitive(new)
        return row

    def add(self, row: SparseRow) -> bool:
        """Insert ``row``; returns True when it enlarged the span."""
        reduced = self._reduce(_integral(row))
        if not reduced:
            return False
        self._pivots[min(reduced)] = reduced
        return True

    def contains(self, row: SparseRow) -> bool:
        return not self._reduce(_integral(row))


def exact_rank(rows: Iterable[SparseRow]) -> int:
    return EchelonBasis(rows).rank


def dense_rows(matrix: Iterable[Iterable]) -> list[dict]:
    """Convert a dense matrix (list of rows) into sparse rows keyed by column index."""
    return [{j: v for j, v in enumerate(row) if v} for row in matrix]
