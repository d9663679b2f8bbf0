from __future__ import annotations

from typing import Iterator


def multiplicities(j: int, k: int, parts: int | None = None) -> Iterator[tuple]:
    """Vectors (k_1, ..., k_l) of nonnegative ints with sum k_i = k and sum i*k_i = j.

    l defaults to j - k + 1, the largest part that can occur.
    """
    l = j - k + 1 if parts is None else parts
    if l < 1:
        if j == 0 and k == 0:
            yield ()
        return

    def rec(i, rem_j, rem_k):
        if i > l:
            if rem_j == 0 and rem_k == 0:
                yield ()
            return
        for ki in range(min(rem_k, rem_j // i) + 1):
            for tail in rec(i + 1, rem_j - i * ki, rem_k - ki):
                yield (ki,) + tail

    yield from rec(1, j, k)


def compositions_into(n: int, parts: int) -> Iterator[tuple]:
    """Ordered compositions of n into exactly `parts` positive summands."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(1, n - parts + 2):
        for rest in compositions_into(n - first, parts - 1):
            yield (first,) + rest
