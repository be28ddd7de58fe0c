"""Partitions, integer weights and the dotted Weyl-group action.

Everything here is exact integer arithmetic on immutable tuples.  The
dotted action of the symmetric group on ``Z^n`` is ``w . a = w(a + rho) - rho``
with ``rho = (n-1, ..., 1, 0)``; :func:`normalize` computes the unique
dominant representative (or detects that none exists) by sorting.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing sequence of nonnegative integers.

    Trailing zeros are dropped, so ``Partition((2, 1, 0)) == Partition((2, 1))``.
    """

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"partition has a negative part: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition is not weakly decreasing: {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __bool__(self) -> bool:
        return bool(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self.parts) > n:
            raise ValueError(f"{self.parts} has more than {n} rows")
        return self.parts + (0,) * (n - len(self.parts))

    def conjugate(self) -> Partition:
        return conjugate(self)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class Weight:
    """A fixed-length integer vector; entries may be negative and unordered."""

    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def is_dominant(self) -> bool:
        e = self.entries
        return all(e[i] >= e[i + 1] for i in range(len(e) - 1))

    def shifted(self, c: int) -> Weight:
        return Weight(tuple(x + c for x in self.entries))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"


@dataclass(frozen=True)
class DottedNormalization:
    """Outcome of moving a weight into the dominant chamber by the dotted action.

    ``regular`` is False exactly when ``a + rho`` has a repeated entry; then
    ``length`` and ``dominant`` are None.
    """

    regular: bool
    length: int | None = None
    dominant: Weight | None = None

    @property
    def singular(self) -> bool:
        return not self.regular


def as_weight(alpha) -> Weight:
    return alpha if isinstance(alpha, Weight) else Weight(tuple(alpha))


def rho(n: int) -> tuple[int, ...]:
    return tuple(range(n - 1, -1, -1))


def conjugate(lam: Partition | Sequence[int]) -> Partition:
    parts = tuple(lam.parts if isinstance(lam, Partition) else Partition(tuple(lam)).parts)
    if not parts:
        return Partition(())
    return Partition(tuple(sum(1 for p in parts if p >= i) for i in range(1, parts[0] + 1)))


def dotted_step(alpha, i: int) -> Weight:
    """Apply the simple transposition ``(i, i+1)`` (1-based) in the dotted action."""
    a = list(as_weight(alpha).entries)
    if not 1 <= i < len(a):
        raise IndexError(f"transposition index {i} out of range for length {len(a)}")
    a[i - 1], a[i] = a[i] - 1, a[i - 1] + 1
    return Weight(tuple(a))


def count_inversions(seq: Sequence[int]) -> int:
    """Number of pairs ``i < j`` with ``seq[i] < seq[j]`` (merge count).

    With this orientation a strictly decreasing sequence has no inversions,
    matching the length of the permutation that sorts ``a + rho`` downwards.
    """

    def sort_count(xs):
        if len(xs) <= 1:
            return list(xs), 0
        mid = len(xs) // 2
        left, cl = sort_count(xs[:mid])
        right, cr = sort_count(xs[mid:])
        merged = []
        count = cl + cr
        i = j = 0
        # descending merge; an element taken from the right jumps over
        # every strictly smaller element still waiting on the left
        while i < len(left) and j < len(right):
            if right[j] > left[i]:
                merged.append(right[j])
                count += len(left) - i
                j += 1
            else:
                merged.append(left[i])
                i += 1
        merged.extend(left[i:])
        merged.extend(right[j:])
        return merged, count

    return sort_count(list(seq))[1]


def normalize(alpha) -> DottedNormalization:
    a = as_weight(alpha).entries
    n = len(a)
    shifted = [x + r for x, r in zip(a, rho(n))]
    if len(set(shifted)) < n:
        return DottedNormalization(regular=False)
    dominant = tuple(x - r for x, r in zip(sorted(shifted, reverse=True), rho(n)))
    return DottedNormalization(True, count_inversions(shifted), Weight(dominant))


@lru_cache(maxsize=None)
def _weyl_dim(lam: tuple[int, ...]) -> int:
    n = len(lam)
    num = den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den


def weyl_dim(lam, n: int) -> int:
    """Dimension of the Weyl module ``K_lam E`` for ``dim E = n``.

    ``lam`` must be weakly decreasing.  Shorter inputs are zero-padded; a
    partition with more than ``n`` nonzero rows gives 0.
    """
    entries = tuple(as_weight(lam).entries) if not isinstance(lam, Partition) else lam.parts
    if any(entries[i] < entries[i + 1] for i in range(len(entries) - 1)):
        raise ValueError(f"weight {entries} is not weakly decreasing")
    if n <= 0:
        raise ValueError("n must be positive")
    if len(entries) > n:
        if entries[-1] < 0:
            raise ValueError(f"weight {entries} is longer than {n} and not a partition")
        if any(entries[n:]):
            return 0
        entries = entries[:n]
    if len(entries) < n:
        if entries and entries[-1] < 0:
            raise ValueError(f"cannot zero-pad weight {entries} with negative tail")
        entries = entries + (0,) * (n - len(entries))
    return _weyl_dim(entries)


def semistandard_tableaux(shape: Partition | Sequence[int], n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All semistandard tableaux of ``shape`` with entries in ``1..n``.

    Rows weakly increase, columns strictly increase.  Filled row by row.
    """
    shape = tuple(shape.parts if isinstance(shape, Partition) else Partition(tuple(shape)).parts)
    if len(shape) > n:
        return

    def rows_from(r, above):
        if r == len(shape):
            yield ()
            return
        for row in _row_fillings(shape[r], n, above):
            for rest in rows_from(r + 1, row):
                yield (row,) + rest

    yield from rows_from(0, None)


def _row_fillings(length: int, n: int, above) -> Iterator[tuple[int, ...]]:
    def build(pos, prev, acc):
        if pos == length:
            yield tuple(acc)
            return
        low = prev
        if above is not None:
            low = max(low, above[pos] + 1)
        for v in range(low, n + 1):
            acc.append(v)
            yield from build(pos + 1, v, acc)
            acc.pop()

    yield from build(0, 1, [])


@lru_cache(maxsize=None)
def character(lam: tuple[int, ...], n: int) -> Counter:
    """Weight multiset of ``K_lam E`` (``dim E = n``) as a Counter of content vectors.

    ``lam`` is a weakly decreasing integer tuple of length ``n``; negative
    entries are handled by shifting to a partition and shifting back.
    """
    if len(lam) != n:
        raise ValueError("character needs a full-length weight")
    low = min(lam) if lam else 0
    shifted = tuple(x - low for x in lam)
    weights: Counter = Counter()
    for tab in semistandard_tableaux(shifted, n):
        content = [low] * n
        for row in tab:
            for v in row:
                content[v - 1] += 1
        weights[tuple(content)] += 1
    return weights


def partitions_of(total: int, max_rows: int | None = None, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``total`` (in reverse-lex order), optionally boxed."""
    max_part = total if max_part is None else max_part

    def rec(remaining, cap, rows):
        if remaining == 0:
            yield ()
            return
        if max_rows is not None and rows == max_rows:
            return
        for p in range(min(cap, remaining), 0, -1):
            for rest in rec(remaining - p, p, rows + 1):
                yield (p,) + rest

    for parts in rec(total, max_part, 0):
        yield Partition(parts)


def decreasing_sequences(length: int, top: int, last: int = 0) -> Iterable[tuple[int, ...]]:
    """Sequences ``top >= s_1 >= ... >= s_length = last``; the final entry is pinned."""
    if length <= 0:
        return

    def rec(prefix, remaining, cap):
        if remaining == 1:
            if cap >= last:
                yield prefix + (last,)
            return
        for v in range(cap, last - 1, -1):
            yield from rec(prefix + (v,), remaining - 1, v)

    yield from rec((), length, top)
