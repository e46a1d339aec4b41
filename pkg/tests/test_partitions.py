from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from superdual.errors import DomainError
from superdual.partitions import (Partition, conjugate, from_theta, is_hook, partitions_of,
                                  partitions_up_to, sharp, theta, unsharp)


def test_conjugate_example():
    assert conjugate((3, 1)) == Partition((2, 1, 1))


def test_conjugate_of_large_example():
    assert conjugate((14, 11, 8, 8, 7, 4, 3, 2)).parts[:4] == (8, 8, 7, 6)


def test_theta_example():
    assert theta((3, 1)) == {1: 2, 2: 2}


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    assert Partition((2, 1, 0, 0)).parts == (2, 1)
    assert Partition((2,))[5] == 0


def test_partition_counts():
    assert [sum(1 for _ in partitions_of(k)) for k in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


@pytest.mark.parametrize("lam", list(partitions_up_to(12)))
def test_conjugation_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert conjugate(lam).size == lam.size


@pytest.mark.parametrize("lam", list(partitions_up_to(12)))
def test_theta_size_identity_and_inverse(lam):
    th = theta(lam)
    # diagonal cells sit in the half-integer slots, so nothing is lost
    assert sum(th.values()) == lam.size
    for parity in (0, 1):
        run = [th[k] for k in sorted(th) if k % 2 == parity]
        assert all(a > b for a, b in zip(run, run[1:]))
    assert from_theta(th) == lam


def test_is_hook_examples():
    assert is_hook((14, 11, 8, 8, 7, 4, 3, 2), 5, 4)
    assert not is_hook((2, 2), 1, 1)
    assert is_hook((9, 5, 1), 3, 0)


def test_sharp_examples():
    assert sharp((3, 2, 1), 1, 2) == (3, 2, 1)
    assert sharp((4, 2), 3, 2) == (4, 2, 0, 0, 0)
    # the tail (4, 3, 2) below row 5 conjugates to (3, 3, 2, 1)
    assert sharp((14, 11, 8, 8, 7, 4, 3, 2), 5, 4) == (14, 11, 8, 8, 7, 3, 3, 2, 1)


def test_sharp_rejects_non_hook():
    with pytest.raises(DomainError):
        sharp((2, 2), 1, 1)


@pytest.mark.parametrize("n,m", [(1, 1), (1, 3), (2, 2), (3, 1), (4, 4)])
def test_unsharp_round_trip(n, m):
    for lam in partitions_up_to(12):
        if not is_hook(lam, n, m):
            continue
        s = sharp(lam, n, m)
        assert len(s) == n + m
        tail = s[n:]
        assert all(a >= b for a, b in zip(tail, tail[1:]))
        assert unsharp(s, n, m) == lam


@given(st.lists(st.integers(1, 9), max_size=8))
def test_conjugate_property(parts):
    lam = Partition(sorted(parts, reverse=True))
    assert conjugate(conjugate(lam)) == lam
