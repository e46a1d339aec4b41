"""Partitions, conjugation, modified Frobenius coordinates and hook shapes."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive integers.

    Indexing past the last stored part returns 0, so ``lam[i]`` is
    always meaningful; indices are 0-based like ordinary tuples.
    """

    parts: tuple[int, ...] = ()

    def __init__(self, parts: Iterable[int] = ()) -> None:
        cleaned = tuple(int(p) for p in parts)
        while cleaned and cleaned[-1] == 0:
            cleaned = cleaned[:-1]
        if any(p <= 0 for p in cleaned):
            raise ValueError(f"partition parts must be positive: {cleaned}")
        if any(a < b for a, b in zip(cleaned, cleaned[1:])):
            raise ValueError(f"partition parts must weakly decrease: {cleaned}")
        object.__setattr__(self, "parts", cleaned)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self.parts):
            return self.parts[i]
        if i < 0:
            raise IndexError("negative partition index")
        return 0

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> Partition:
        return conjugate(self)

    def cells(self) -> Iterator[tuple[int, int]]:
        """Cells (row, column), both 1-based."""
        for i, row in enumerate(self.parts, start=1):
            for j in range(1, row + 1):
                yield (i, j)

    def contains(self, other: Partition) -> bool:
        return all(self[i] >= other[i] for i in range(len(other)))

    def diagonal(self) -> int:
        """Number of diagonal cells (the Durfee square side)."""
        return sum(1 for i, p in enumerate(self.parts, start=1) if p >= i)


def as_partition(lam: Partition | Sequence[int]) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(lam)


def conjugate(lam: Partition | Sequence[int]) -> Partition:
    lam = as_partition(lam)
    if not lam.parts:
        return Partition()
    return Partition(sum(1 for p in lam.parts if p >= j) for j in range(1, lam.parts[0] + 1))


def theta(mu: Partition | Sequence[int]) -> dict[int, int]:
    """Modified Frobenius coordinates, keyed by doubled index 2r.

    Half-integer slots r = i - 1/2 carry max(mu'_i - i + 1, 0) and integer
    slots r = i carry max(mu_i - i, 0). Only nonzero entries are kept.
    """
    mu = as_partition(mu)
    conj = mu.conjugate()
    out: dict[int, int] = {}
    for i in range(1, len(mu) + 1):
        half = max(conj[i - 1] - i + 1, 0)
        whole = max(mu[i - 1] - i, 0)
        if half:
            out[2 * i - 1] = half
        if whole:
            out[2 * i] = whole
    return out


def from_theta(entries: dict[int, int]) -> Partition:
    """Inverse of :func:`theta`."""
    d = sum(1 for key, v in entries.items() if key % 2 and v)
    rows = [entries.get(2 * i, 0) + i for i in range(1, d + 1)]
    cols = [entries.get(2 * i - 1, 0) + i - 1 for i in range(1, d + 1)]
    depth = max(cols, default=0)
    parts = rows + [sum(1 for c in cols if c >= i) for i in range(d + 1, depth + 1)]
    try:
        result = Partition(parts)
    except ValueError as exc:
        raise DomainError("bad-theta", f"{entries} are not modified Frobenius coordinates") from exc
    if theta(result) != {key: v for key, v in entries.items() if v}:
        raise DomainError("bad-theta", f"{entries} are not modified Frobenius coordinates")
    return result


def is_hook(lam: Partition | Sequence[int], n: int, m: int) -> bool:
    """True iff lam_{n+1} <= m, the (n|m)-hook condition."""
    return as_partition(lam)[n] <= m


def sharp(lam: Partition | Sequence[int], n: int, m: int) -> tuple[int, ...]:
    """(lam_1..lam_n, nu_1..nu_m) with nu the conjugate of the rows below n."""
    lam = as_partition(lam)
    if not is_hook(lam, n, m):
        raise DomainError("not-hook", f"{list(lam.parts)} is not an ({n}|{m})-hook partition")
    nu = conjugate(lam.parts[n:])
    return tuple(lam[i] for i in range(n)) + tuple(nu[j] for j in range(m))


def unsharp(seq: Sequence[int], n: int, m: int) -> Partition:
    """Inverse of :func:`sharp`."""
    if len(seq) != n + m:
        raise ValueError("sequence length must be n + m")
    try:
        lam = Partition(tuple(seq[:n]) + conjugate(seq[n:]).parts)
    except ValueError as exc:
        raise DomainError("bad-sharp", f"{list(seq)} is not of the form lambda^#") from exc
    if sharp(lam, n, m) != tuple(seq):
        raise DomainError("bad-sharp", f"{list(seq)} is not of the form lambda^#")
    return lam


def partitions_of(total: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``total`` in reverse lexicographic order."""
    if max_part is None:
        max_part = total

    def rec(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    for parts in rec(total, max_part):
        yield Partition(parts)


def partitions_up_to(total: int) -> Iterator[Partition]:
    for k in range(total + 1):
        yield from partitions_of(k)
