"""Integer bitmask point sets and lexicographic pair indexing.

A set of points {0, .., n-1} is an int with bit p set for each member p.
Unordered point pairs are numbered lexicographically: (0,1) -> 0, (0,2) -> 1,
..., (n-2,n-1) -> C(n,2)-1.  This is the bit layout of label codes and the
row order of every per-pair table in the package.
"""

from __future__ import annotations

from typing import Iterator

# Bitmask fast paths are guaranteed up to one machine word of points.
MAX_BITSET_POINTS = 64


def full_mask(n: int) -> int:
    """Mask with all n points present."""
    return (1 << n) - 1


def mask_of(points) -> int:
    """Mask from an iterable of point indices."""
    m = 0
    for p in points:
        m |= 1 << p
    return m


def iter_points(mask: int) -> Iterator[int]:
    """Yield the members of a mask in ascending order."""
    p = 0
    while mask:
        if mask & 1:
            yield p
        mask >>= 1
        p += 1


def mask_to_points(mask: int) -> list[int]:
    """Sorted list of the members of a mask."""
    return list(iter_points(mask))


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(i: int, j: int, n: int) -> int:
    """Lexicographic index of the unordered pair {i, j} among C(n,2) pairs."""
    if i > j:
        i, j = j, i
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def pair_from_index(k: int, n: int) -> tuple[int, int]:
    """Inverse of pair_index: the k-th pair (i, j) with i < j."""
    if not 0 <= k < pair_count(n):
        raise ValueError(f"pair index {k} out of range for n={n}")
    i = 0
    row = n - 1
    while k >= row:
        k -= row
        i += 1
        row -= 1
    return i, i + 1 + k


def iter_pairs(n: int) -> Iterator[tuple[int, int]]:
    """All unordered pairs (i, j), i < j, in lexicographic order."""
    for i in range(n):
        for j in range(i + 1, n):
            yield i, j
