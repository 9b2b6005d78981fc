"""Elliptic endoscopic data of the metaplectic group and the Levi
combinatorics attached to them.

For a standard Levi M = GL(n_1) x ... x GL(n_k) x Sp(2m) and a datum
(n', n''), a split sequence s distributes each n_i as n_i' + n_i''. It
determines the endoscopic Levi M_s^! of SO(2n'+1) x SO(2n''+1) and the
order-two central element z_s acting by -1 on its second-factor GL blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .levi import (
    LeviSOPair,
    LeviSp,
    enumerate_levis_sp,
    semisimple_rank_so_pair,
    semisimple_rank_sp,
)


@dataclass(frozen=True, order=True)
class EndoDatum:
    """(n', n''): G^! = SO(2n'+1) x SO(2n''+1). Order matters."""

    n_p: int
    n_pp: int

    def __post_init__(self):
        if self.n_p < 0 or self.n_pp < 0:
            raise ValueError(f"endoscopic datum needs nonnegative ranks, got {self}")

    @property
    def n(self) -> int:
        return self.n_p + self.n_pp

    def group(self) -> LeviSOPair:
        return LeviSOPair.whole(self.n_p, self.n_pp)

    def __str__(self):
        return f"({self.n_p},{self.n_pp})"


@dataclass(frozen=True, order=True)
class SplitSeq:
    """Pairs (n_i', n_i''), aligned with the GL parts of a Levi of Sp(2n)."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        if any(a < 0 or b < 0 for a, b in pairs):
            raise ValueError(f"split sequence entries must be nonnegative: {pairs}")
        object.__setattr__(self, "pairs", pairs)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(a + b for a, b in self.pairs)

    @property
    def primed(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.pairs if a)

    @property
    def double_primed(self) -> tuple[int, ...]:
        return tuple(b for _, b in self.pairs if b)

    def __str__(self):
        if not self.pairs:
            return "()"
        return ",".join(f"({a},{b})" for a, b in self.pairs)


@dataclass(frozen=True)
class ZTwist:
    """Signs of z_s on the GL factors of M_s^!: first-factor blocks, then second."""

    signs: tuple[int, ...]

    @classmethod
    def for_levi(cls, L: LeviSOPair) -> "ZTwist":
        return cls((1,) * L.k_p + (-1,) * L.k_pp)

    def is_trivial(self) -> bool:
        return all(s == 1 for s in self.signs)

    def apply(self, blocks, p: int):
        """Multiply the eigenvalues of each GL block by its sign, mod p."""
        if len(blocks) != len(self.signs):
            raise ValueError("twist and eigenvalue data have different block counts")
        return tuple(
            tuple(sorted((sign * x) % p for x in block))
            for sign, block in zip(self.signs, blocks)
        )


@dataclass(frozen=True)
class SplitLevi:
    """M_s = prod GL(n_i') x prod GL(n_i'') x Sp(2m), a standard Levi of M."""

    gl_parts_p: tuple[int, ...]
    gl_parts_pp: tuple[int, ...]
    m: int
    n: int

    def as_levi(self) -> LeviSp:
        return LeviSp(self.gl_parts_p + self.gl_parts_pp, self.m, self.n)


@dataclass(frozen=True)
class LeviTriple:
    """(k, Ibar', Ibar''): interleaving of the GL parts of L into k columns."""

    k: int
    Ibar_p: tuple[int, ...]
    Ibar_pp: tuple[int, ...]

    def __post_init__(self):
        if len(self.Ibar_p) != self.k or len(self.Ibar_pp) != self.k:
            raise ValueError("triple rows must have length k")
        for a, b in zip(self.Ibar_p, self.Ibar_pp):
            if a < 0 or b < 0 or (a == 0 and b == 0):
                raise ValueError(f"bad triple column ({a},{b})")

    @property
    def I_p(self) -> tuple[int, ...]:
        return tuple(x for x in self.Ibar_p if x)

    @property
    def I_pp(self) -> tuple[int, ...]:
        return tuple(x for x in self.Ibar_pp if x)


def elliptic_data(n: int) -> list[EndoDatum]:
    if n < 0:
        raise ValueError("rank must be nonnegative")
    return [EndoDatum(a, n - a) for a in range(n + 1)]


def _check_ambient(M: LeviSp, d: EndoDatum):
    if M.n != d.n:
        raise ValueError(f"Levi {M} has rank {M.n} but datum {d} has rank {d.n}")


def split_sequences(M: LeviSp, d: EndoDatum) -> list[SplitSeq]:
    """E(M, G^!): splits of every GL part with column sums bounded by n', n''.

    Within each part the first-factor share is tried largest first.
    """
    _check_ambient(M, d)
    choices = [[(a, p - a) for a in range(p, -1, -1)] for p in M.gl_parts]
    out = []
    for combo in product(*choices):
        if sum(a for a, _ in combo) <= d.n_p and sum(b for _, b in combo) <= d.n_pp:
            out.append(SplitSeq(combo))
    return out


def is_split_sequence(M: LeviSp, s: SplitSeq, d: EndoDatum) -> bool:
    return (
        M.n == d.n
        and s.parts == M.gl_parts
        and sum(a for a, _ in s) <= d.n_p
        and sum(b for _, b in s) <= d.n_pp
    )


def endoscopic_levi(M: LeviSp, s: SplitSeq, d: EndoDatum):
    """Return (M_s, M_s^!, z_s) for s in E(M, G^!)."""
    if s.parts != M.gl_parts:
        raise ValueError(f"split sequence {s} is not aligned with {M}")
    if not is_split_sequence(M, s, d):
        raise ValueError(f"{s} is not in E({M}, {d})")
    primed, dprimed = s.primed, s.double_primed
    m_p = d.n_p - sum(primed)
    m_pp = d.n_pp - sum(dprimed)
    M_s = SplitLevi(primed, dprimed, M.m, M.n)
    M_bang = LeviSOPair(primed, m_p, d.n_p, dprimed, m_pp, d.n_pp)
    return M_s, M_bang, ZTwist.for_levi(M_bang)


# -- preimages M(L) ---------------------------------------------------------


@lru_cache(maxsize=None)
def abstract_triples(k_p: int, k_pp: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """M(k', k'') with 0/1 markers in place of part sizes.

    k runs over max(k', k'') .. k' + k''; every column carries a marker.
    """
    out = []
    for k in range(max(k_p, k_pp), k_p + k_pp + 1):
        cols = range(k)
        for pos_p in combinations(cols, k_p):
            # second row covers every column the first misses, plus some shared ones
            missing = [i for i in cols if i not in pos_p]
            for shared in combinations(pos_p, k_pp - len(missing)):
                pos_pp = set(missing) | set(shared)
                row_p = tuple(1 if i in pos_p else 0 for i in cols)
                row_pp = tuple(1 if i in pos_pp else 0 for i in cols)
                out.append((row_p, row_pp))
    return tuple(out)


def _fill(row, parts):
    it = iter(parts)
    return tuple(next(it) if flag else 0 for flag in row)


def triple_to_preimage(t: LeviTriple, d: EndoDatum, m_tail: int) -> tuple[LeviSp, SplitSeq]:
    """(k, Ibar', Ibar'') -> (M, s) with M = prod GL(nbar_i' + nbar_i'') x Sp(2m)."""
    parts = tuple(a + b for a, b in zip(t.Ibar_p, t.Ibar_pp))
    return LeviSp(parts, m_tail, d.n), SplitSeq(tuple(zip(t.Ibar_p, t.Ibar_pp)))


def preimage_to_triple(M: LeviSp, s: SplitSeq) -> LeviTriple:
    return LeviTriple(len(s), tuple(a for a, _ in s), tuple(b for _, b in s))


def levi_preimages(L: LeviSOPair, d: EndoDatum):
    """M(L) = {(M, s) : s in E(M, G^!), M_s^! = L}, and the matching triples.

    Returns two aligned lists: [(M, s), ...] and [LeviTriple, ...].
    """
    if (L.n_p, L.n_pp) != (d.n_p, d.n_pp):
        raise ValueError(f"{L} is not a standard Levi of the endoscopic group of {d}")
    m_tail = L.m_p + L.m_pp
    pairs, triples = [], []
    for row_p, row_pp in abstract_triples(L.k_p, L.k_pp):
        t = LeviTriple(len(row_p), _fill(row_p, L.gl_parts_p), _fill(row_pp, L.gl_parts_pp))
        triples.append(t)
        pairs.append(triple_to_preimage(t, d, m_tail))
    return pairs, triples


def levi_preimages_brute(L: LeviSOPair, d: EndoDatum) -> list[tuple[LeviSp, SplitSeq]]:
    """M(L) by scanning every standard Levi of Sp(2n) and every split."""
    out = []
    for M in enumerate_levis_sp(d.n):
        for s in split_sequences(M, d):
            if endoscopic_levi(M, s, d)[1] == L:
                out.append((M, s))
    return out


def preimage_sign_sum(L: LeviSOPair, d: EndoDatum) -> tuple[int, int]:
    """(sum over M(L) of (-1)^r(M), (-1)^r(L))."""
    pairs, _ = levi_preimages(L, d)
    lhs = sum((-1) ** semisimple_rank_sp(M) for M, _ in pairs)
    return lhs, (-1) ** semisimple_rank_so_pair(L)


# -- f(k', k'') -------------------------------------------------------------


def sign_sum(k_p: int, k_pp: int) -> int:
    """f(k', k'') = sum of (-1)^k over M(k', k''), by direct enumeration."""
    if k_p < 0 or k_pp < 0:
        raise ValueError("k', k'' must be nonnegative")
    return sum((-1) ** len(row) for row, _ in abstract_triples(k_p, k_pp))


@lru_cache(maxsize=None)
def sign_sum_recursive(k_p: int, k_pp: int) -> int:
    """f via deletion of the first column: f = -f(k'-1,k'') - f(k',k''-1) - f(k'-1,k''-1)."""
    if k_p < 0 or k_pp < 0:
        return 0
    if k_p == 0 and k_pp == 0:
        return 1
    return (
        -sign_sum_recursive(k_p - 1, k_pp)
        - sign_sum_recursive(k_p, k_pp - 1)
        - sign_sum_recursive(k_p - 1, k_pp - 1)
    )


def sign_sum_closed(k_p: int, k_pp: int) -> int:
    return (-1) ** (k_p + k_pp)
