"""Bit-exact codecs for pairs, finite sets and finite sequences of naturals.

Every other module encodes its structured objects through these three
functions, so the formulas here are normative:

* pairs use the Cantor pairing ``<a, b> = (a + b)(a + b + 1) / 2 + b``;
* finite sets are bitmasks, ``code(F) = sum(2**n for n in F)``;
* sequences are ``code(()) = 0`` and ``code((x, *rest)) = <x, code(rest)> + 1``.
"""

from __future__ import annotations

from math import isqrt
from typing import Iterable, Iterator, Sequence


def _check_natural(*values: int) -> None:
    for v in values:
        if v < 0:
            raise ValueError(f"expected a natural number, got {v}")


def pair_encode(a: int, b: int) -> int:
    _check_natural(a, b)
    s = a + b
    return s * (s + 1) // 2 + b


def pair_decode(n: int) -> tuple[int, int]:
    _check_natural(n)
    # largest w with w(w+1)/2 <= n
    w = (isqrt(8 * n + 1) - 1) // 2
    b = n - w * (w + 1) // 2
    return w - b, b


def triple_encode(n: int, m: int, k: int) -> int:
    """Encode ``<n, m, k>`` as ``<n, <m, k>>``."""
    return pair_encode(n, pair_encode(m, k))


def triple_decode(code: int) -> tuple[int, int, int]:
    n, rest = pair_decode(code)
    m, k = pair_decode(rest)
    return n, m, k


def finset_encode(elements: Iterable[int]) -> int:
    code = 0
    for n in elements:
        _check_natural(n)
        code |= 1 << n
    return code


def finset_members(code: int) -> Iterator[int]:
    """Yield the elements of the encoded set in increasing order."""
    _check_natural(code)
    while code:
        low = code & -code
        yield low.bit_length() - 1
        code ^= low


def finset_decode(code: int) -> frozenset[int]:
    return frozenset(finset_members(code))


def finset_contains(code: int, n: int) -> bool:
    return (code >> n) & 1 == 1


def finset_subset(small: int, big: int) -> bool:
    return small & ~big == 0


def finset_size(code: int) -> int:
    return bin(code).count("1")


def finset_subsets(code: int) -> Iterator[int]:
    """All subsets of the encoded set, as codes (standard submask walk)."""
    sub = code
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & code


def seq_encode(seq: Sequence[int]) -> int:
    code = 0
    for x in reversed(seq):
        code = pair_encode(x, code) + 1
    return code


def seq_decode(code: int) -> tuple[int, ...]:
    _check_natural(code)
    out = []
    while code:
        head, code = pair_decode(code - 1)
        out.append(head)
    return tuple(out)
