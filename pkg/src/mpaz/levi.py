"""Standard Levi subgroups of Sp(2n) and of SO(2n'+1) x SO(2n''+1).

A standard Levi of Sp(2n) (or SO(2n+1)) is GL(n_1) x ... x GL(n_k) x Sp(2m)
with n_1 + ... + n_k + m = n, and it is stored as exactly that data.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator


def _check_parts(parts, m, n, what):
    if any((not isinstance(p, int)) or p < 1 for p in parts):
        raise ValueError(f"{what}: GL parts must be positive integers, got {parts}")
    if m < 0:
        raise ValueError(f"{what}: negative tail rank {m}")
    if sum(parts) + m != n:
        raise ValueError(f"{what}: parts {parts} + tail {m} do not add up to {n}")


def compositions(k: int) -> Iterator[tuple[int, ...]]:
    """Ordered compositions of k into positive parts, lexicographic."""
    if k == 0:
        yield ()
        return
    for first in range(1, k + 1):
        for rest in compositions(k - first):
            yield (first,) + rest


def classical_levis(n: int) -> list[tuple[tuple[int, ...], int]]:
    """All (gl_parts, m) with sum(gl_parts) + m = n.

    Shared by types B and C, which have the same Levi shapes. Ordered by
    the size of the GL block, then lexicographically on the parts, so the
    whole group comes first.
    """
    if n < 0:
        raise ValueError("rank must be nonnegative")
    out = []
    for gl_size in range(n + 1):
        for parts in compositions(gl_size):
            out.append((parts, n - gl_size))
    return out


def gl_refinements(parts) -> Iterator[tuple[int, ...]]:
    """Standard Levis of GL(n_1) x ... x GL(n_k), flattened."""
    for pieces in product(*(list(compositions(p)) for p in parts)):
        yield tuple(x for piece in pieces for x in piece)


def sub_levis(parts, m) -> list[tuple[tuple[int, ...], int]]:
    """Standard Levis of GL(parts) x Sp(2m) (or x SO(2m+1))."""
    out = []
    for refined in gl_refinements(parts):
        for tail_parts, tail_m in classical_levis(m):
            out.append((refined + tail_parts, tail_m))
    return out


def split_refinement(parts, sub):
    """Cut ``sub`` into consecutive runs refining each entry of ``parts``.

    Returns (runs, leftover) where runs[i] sums to parts[i] and leftover is
    whatever remains of ``sub``, or None if ``sub`` does not refine ``parts``
    as a prefix.
    """
    runs = []
    pos = 0
    for p in parts:
        acc = 0
        start = pos
        while acc < p and pos < len(sub):
            acc += sub[pos]
            pos += 1
        if acc != p:
            return None
        runs.append(tuple(sub[start:pos]))
    return runs, tuple(sub[pos:])


def is_sub_levi(parts, m, sub_parts, sub_m) -> bool:
    """True iff GL(sub_parts) x Sp(2 sub_m) is a standard Levi of GL(parts) x Sp(2m)."""
    cut = split_refinement(parts, sub_parts)
    if cut is None:
        return False
    _, leftover = cut
    return sub_m >= 0 and sum(leftover) + sub_m == m


def ss_rank(parts, m) -> int:
    return sum(p - 1 for p in parts) + m


@dataclass(frozen=True)
class LeviSp:
    """GL(n_1) x ... x GL(n_k) x Sp(2m) inside Sp(2n)."""

    gl_parts: tuple[int, ...]
    m: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "gl_parts", tuple(self.gl_parts))
        _check_parts(self.gl_parts, self.m, self.n, "LeviSp")

    @classmethod
    def whole(cls, n: int) -> "LeviSp":
        return cls((), n, n)

    @property
    def k(self) -> int:
        return len(self.gl_parts)

    def is_whole(self) -> bool:
        return not self.gl_parts

    def __str__(self):
        gl = "".join(f"GL({p})x" for p in self.gl_parts)
        return f"{gl}Sp({2 * self.m})"


@dataclass(frozen=True)
class LeviSOPair:
    """A standard Levi of SO(2n'+1) x SO(2n''+1), one GL-product and tail per factor."""

    gl_parts_p: tuple[int, ...]
    m_p: int
    n_p: int
    gl_parts_pp: tuple[int, ...]
    m_pp: int
    n_pp: int

    def __post_init__(self):
        object.__setattr__(self, "gl_parts_p", tuple(self.gl_parts_p))
        object.__setattr__(self, "gl_parts_pp", tuple(self.gl_parts_pp))
        _check_parts(self.gl_parts_p, self.m_p, self.n_p, "LeviSOPair (first factor)")
        _check_parts(self.gl_parts_pp, self.m_pp, self.n_pp, "LeviSOPair (second factor)")

    @classmethod
    def whole(cls, n_p: int, n_pp: int) -> "LeviSOPair":
        return cls((), n_p, n_p, (), n_pp, n_pp)

    @property
    def k_p(self) -> int:
        return len(self.gl_parts_p)

    @property
    def k_pp(self) -> int:
        return len(self.gl_parts_pp)

    @property
    def n(self) -> int:
        return self.n_p + self.n_pp

    def is_whole(self) -> bool:
        return not self.gl_parts_p and not self.gl_parts_pp

    def __str__(self):
        a = "".join(f"GL({p})x" for p in self.gl_parts_p)
        b = "".join(f"GL({p})x" for p in self.gl_parts_pp)
        return f"({a}SO({2 * self.m_p + 1}))x({b}SO({2 * self.m_pp + 1}))"


def enumerate_levis_sp(n: int) -> list[LeviSp]:
    """Every standard Levi of Sp(2n), whole group first. There are 2**n."""
    return [LeviSp(parts, m, n) for parts, m in classical_levis(n)]


def enumerate_levis_so_pair(n_p: int, n_pp: int) -> list[LeviSOPair]:
    return [
        LeviSOPair(a, ma, n_p, b, mb, n_pp)
        for (a, ma), (b, mb) in product(classical_levis(n_p), classical_levis(n_pp))
    ]


def semisimple_rank_sp(M: LeviSp) -> int:
    return ss_rank(M.gl_parts, M.m)


def semisimple_rank_so_pair(L: LeviSOPair) -> int:
    return (L.n_p - L.k_p) + (L.n_pp - L.k_pp)
