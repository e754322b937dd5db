"""Subsets of a small carrier stored as integer bitmasks.

Element i is in the set iff bit i is set.  Carriers are capped at 64
elements so every subset fits comfortably in one int.
"""

from collections.abc import Iterable, Iterator


def bits(mask: int) -> Iterator[int]:
    """Iterate the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def size(mask: int) -> int:
    return mask.bit_count()


def is_subset(a: int, b: int) -> bool:
    """True iff every element of a is in b."""
    return a & ~b == 0


def subsets_of(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, the empty set first and ``mask`` last."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def sort_key(mask: int) -> tuple[int, int]:
    """Canonical order: by cardinality, then by mask value."""
    return (mask.bit_count(), mask)
