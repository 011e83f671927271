"""
Bitmask helpers for subsets of [n].
"""

from typing import Iterable, Iterator, List


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for i in elements:
        mask |= 1 << (i - 1)
    return mask


def elements_of(mask: int) -> List[int]:
    """Ascending elements of a subset."""
    result = []
    i = 1
    while mask:
        if mask & 1:
            result.append(i)
        mask >>= 1
        i += 1
    return result


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def contains(mask: int, i: int) -> bool:
    return bool(mask >> (i - 1) & 1)


def min_element(mask: int) -> int:
    return (mask & -mask).bit_length()


def max_element(mask: int) -> int:
    return mask.bit_length()


def submasks(mask: int) -> Iterator[int]:
    """All subsets of mask, including mask itself and the empty set."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def nonempty_subsets(n: int) -> Iterator[int]:
    return iter(range(1, 1 << n))


def format_subset(mask: int) -> str:
    return "{" + ",".join(str(i) for i in elements_of(mask)) + "}"
