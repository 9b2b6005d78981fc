"""Regular semisimple classes as eigenvalue multisets in F_p^x.

A class of Sp(2n) is a multiset of n inverse pairs {a, a^-1}; a class of
SO(2n'+1) is n' such pairs plus the implicit eigenvalue 1. The norm
correspondence keeps the pairs of the first SO factor and negates those of
the second.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from math import comb

from .endoscopy import EndoDatum, SplitSeq, endoscopic_levi, split_sequences
from .levi import LeviSOPair, LeviSp

MAX_DRAWS = 100_000


class NotRegularError(ValueError):
    pass


class GenerationError(RuntimeError):
    pass


def check_prime(p: int) -> int:
    if p < 7 or p % 2 == 0 or any(p % q == 0 for q in range(3, int(p**0.5) + 1, 2)):
        raise ValueError(f"need an odd prime p >= 7, got {p}")
    return p


def inv(a: int, p: int) -> int:
    return pow(a, -1, p)


@dataclass(frozen=True, order=True)
class EigPair:
    """The inverse pair {a, a^-1} mod p, stored by its smaller residue."""

    a: int
    p: int

    def __post_init__(self):
        a = self.a % self.p
        if a in (0, 1, self.p - 1):
            raise ValueError(f"degenerate eigenvalue pair for a={self.a} mod {self.p}")
        object.__setattr__(self, "a", min(a, inv(a, self.p)))

    @property
    def eigenvalues(self) -> tuple[int, int]:
        return self.a, inv(self.a, self.p)

    def negate(self) -> "EigPair":
        return EigPair(-self.a, self.p)

    def __repr__(self):
        return f"{{{self.a},{inv(self.a, self.p)}}}"


def all_pairs(p: int) -> list[EigPair]:
    return sorted({EigPair(a, p) for a in range(2, p - 1)})


class _PairClass:
    """Sorted multiset of inverse pairs; shared by SpClass and SOClass."""

    pairs: tuple[EigPair, ...]
    p: int

    def _normalize(self):
        pairs = tuple(sorted(x if isinstance(x, EigPair) else EigPair(x, self.p) for x in self.pairs))
        if any(x.p != self.p for x in pairs):
            raise ValueError("mixed moduli in one class")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def of(cls, reps, p):
        return cls(tuple(EigPair(a, p) for a in reps), p)

    @property
    def rank(self) -> int:
        return len(self.pairs)

    def eigenvalues(self) -> list[int]:
        return [x for pair in self.pairs for x in pair.eigenvalues]

    def is_regular(self) -> bool:
        # Distinct canonical pairs are disjoint, and a != +-1 is built in.
        return len(set(self.pairs)) == len(self.pairs)


@dataclass(frozen=True, order=True)
class SpClass(_PairClass):
    pairs: tuple[EigPair, ...]
    p: int

    def __post_init__(self):
        self._normalize()


@dataclass(frozen=True, order=True)
class SOClass(_PairClass):
    """Nontrivial eigenvalue pairs of an SO(2n'+1) class; SO(1) is empty."""

    pairs: tuple[EigPair, ...]
    p: int

    def __post_init__(self):
        self._normalize()


@dataclass(frozen=True)
class LeviClass:
    """A class of GL(n_1) x ... x GL(n_k) x Sp(2m)."""

    gl_evs: tuple[tuple[int, ...], ...]
    sp_part: SpClass
    p: int

    def __post_init__(self):
        blocks = tuple(tuple(sorted(x % self.p for x in b)) for b in self.gl_evs)
        if any(x == 0 for b in blocks for x in b):
            raise ValueError("GL eigenvalues must be invertible")
        if any(len(b) == 0 for b in blocks):
            raise ValueError("GL(0) blocks are not allowed")
        object.__setattr__(self, "gl_evs", blocks)

    @property
    def levi(self) -> LeviSp:
        parts = tuple(len(b) for b in self.gl_evs)
        return LeviSp(parts, self.sp_part.rank, sum(parts) + self.sp_part.rank)

    def eigenvalues(self) -> list[int]:
        """All 2n eigenvalues in Sp(2n)."""
        out = [x for b in self.gl_evs for lam in b for x in (lam, inv(lam, self.p))]
        return out + self.sp_part.eigenvalues()

    def is_G_regular(self) -> bool:
        evs = self.eigenvalues()
        return len(set(evs)) == len(evs) and not ({1, self.p - 1} & set(evs))

    def induced(self) -> SpClass:
        """The class of Sp(2n) containing this Levi class."""
        gl_pairs = [EigPair(lam, self.p) for b in self.gl_evs for lam in b]
        return SpClass(tuple(gl_pairs) + self.sp_part.pairs, self.p)

    @classmethod
    def from_sp(cls, gamma: SpClass) -> "LeviClass":
        return cls((), gamma, gamma.p)


@dataclass(frozen=True)
class EndoLeviClass:
    """A class of M_s^! = (prod GL(n_i') x SO(2m'+1)) x (prod GL(n_i'') x SO(2m''+1))."""

    gl_p: tuple[tuple[int, ...], ...]
    so_p: SOClass
    gl_pp: tuple[tuple[int, ...], ...]
    so_pp: SOClass
    p: int

    def __post_init__(self):
        for name in ("gl_p", "gl_pp"):
            blocks = tuple(tuple(sorted(x % self.p for x in b)) for b in getattr(self, name))
            object.__setattr__(self, name, blocks)

    def levi(self, d: EndoDatum) -> LeviSOPair:
        return LeviSOPair(
            tuple(len(b) for b in self.gl_p), self.so_p.rank, d.n_p,
            tuple(len(b) for b in self.gl_pp), self.so_pp.rank, d.n_pp,
        )

    def twisted(self) -> "EndoLeviClass":
        """delta_s * z_s: second-factor GL eigenvalues times -1."""
        neg = tuple(tuple(sorted((-x) % self.p for x in b)) for b in self.gl_pp)
        return EndoLeviClass(self.gl_p, self.so_p, neg, self.so_pp, self.p)

    def _side_eigenvalues(self, blocks, so):
        out = [x for b in blocks for lam in b for x in (lam, inv(lam, self.p))]
        return out + so.eigenvalues()

    def is_strongly_regular(self) -> bool:
        for blocks, so in ((self.gl_p, self.so_p), (self.gl_pp, self.so_pp)):
            evs = self._side_eigenvalues(blocks, so)
            if len(set(evs)) != len(evs) or 1 in evs:
                return False
        return True


# -- the norm correspondence -----------------------------------------------


def _check_shapes(delta, d: EndoDatum):
    dp, dpp = delta
    if dp.rank != d.n_p or dpp.rank != d.n_pp:
        raise ValueError(f"class ranks ({dp.rank},{dpp.rank}) do not match datum {d}")
    if dp.p != dpp.p:
        raise ValueError("mixed moduli")


def psi(delta: tuple[SOClass, SOClass], d: EndoDatum) -> SpClass:
    """Keep the first factor's pairs, negate the second factor's."""
    _check_shapes(delta, d)
    dp, dpp = delta
    return SpClass(dp.pairs + tuple(x.negate() for x in dpp.pairs), dp.p)


def is_G_regular(delta: tuple[SOClass, SOClass], d: EndoDatum) -> bool:
    return psi(delta, d).is_regular()


def _require_regular(gamma: LeviClass):
    if not gamma.is_G_regular():
        raise NotRegularError(f"class {gamma} is not G-regular")


def _sp_fiber(pairs: tuple[EigPair, ...], d: EndoDatum, p: int):
    out = set()
    for chosen in combinations(range(len(pairs)), d.n_p):
        first = tuple(pairs[i] for i in chosen)
        rest = tuple(pairs[i].negate() for i in range(len(pairs)) if i not in chosen)
        out.add((SOClass(first, p), SOClass(rest, p)))
    return sorted(out)


def fiber(gamma: LeviClass, d: EndoDatum) -> list[tuple[SOClass, SOClass]]:
    """All delta in Sigma_reg(G^!) with psi(delta) equal to the class induced by gamma."""
    _require_regular(gamma)
    target = gamma.induced()
    if target.rank != d.n:
        raise ValueError(f"class of rank {target.rank} against datum {d}")
    return _sp_fiber(target.pairs, d, gamma.p)


def fiber_brute(gamma: LeviClass, d: EndoDatum) -> list[tuple[SOClass, SOClass]]:
    """Reference fiber: scan every pair of SO classes of the right ranks."""
    p = gamma.p
    target = gamma.induced()
    pool = all_pairs(p)
    from itertools import combinations_with_replacement as cwr

    out = []
    for a in cwr(pool, d.n_p):
        for b in cwr(pool, d.n_pp):
            delta = (SOClass(a, p), SOClass(b, p))
            if delta[0].is_regular() and delta[1].is_regular() and psi(delta, d) == target:
                out.append(delta)
    return sorted(out)


def levi_fiber_pairs(gamma: LeviClass, d: EndoDatum) -> list[tuple[SplitSeq, EndoLeviClass]]:
    """All (s, delta_s) with s in E(M, G^!) and Psi(delta_s * z_s) = gamma."""
    _require_regular(gamma)
    p = gamma.p
    M = gamma.levi
    out = []
    for s in split_sequences(M, d):
        _, L, _ = endoscopic_levi(M, s, d)
        per_block = []
        for (a, _b), block in zip(s, gamma.gl_evs):
            opts = []
            for chosen in combinations(range(len(block)), a):
                first = tuple(block[i] for i in chosen)
                # delta_i'' * (-1) must give the rest of gamma_i
                second = tuple((-block[i]) % p for i in range(len(block)) if i not in chosen)
                opts.append((first, second))
            per_block.append(sorted(set(opts)))
        tails = _sp_fiber(gamma.sp_part.pairs, EndoDatum(L.m_p, L.m_pp), p)
        for choice in product(*per_block):
            gl_p = tuple(f for (f, _), (a, _b) in zip(choice, s) if a)
            gl_pp = tuple(g for (_, g), (_a, b) in zip(choice, s) if b)
            for so_p, so_pp in tails:
                out.append((s, EndoLeviClass(gl_p, so_p, gl_pp, so_pp, p)))
    return out


def psi_levi(s: SplitSeq, delta_s: EndoLeviClass, d: EndoDatum, M: LeviSp) -> LeviClass:
    """Psi_{M_s^!, M}: GL blocks merge back into GL(n_i); SO tails go through psi."""
    p = delta_s.p
    it_p, it_pp = iter(delta_s.gl_p), iter(delta_s.gl_pp)
    blocks = []
    for a, b in s:
        block = (next(it_p) if a else ()) + (next(it_pp) if b else ())
        blocks.append(block)
    tail = psi((delta_s.so_p, delta_s.so_pp), EndoDatum(delta_s.so_p.rank, delta_s.so_pp.rank))
    return LeviClass(tuple(blocks), tail, p)


def levi_fiber_pairs_brute(gamma: LeviClass, d: EndoDatum) -> list[tuple[SplitSeq, EndoLeviClass]]:
    """Reference for levi_fiber_pairs: every s and every delta_s over F_p, filtered."""
    from itertools import combinations_with_replacement as cwr

    p = gamma.p
    M = gamma.levi
    units = range(1, p)
    pool = all_pairs(p)
    out = []
    for s in split_sequences(M, d):
        _, L, _ = endoscopic_levi(M, s, d)
        gl_opts = [list(cwr(units, size)) for size in L.gl_parts_p + L.gl_parts_pp]
        for blocks in product(*gl_opts):
            gl_p, gl_pp = blocks[: L.k_p], blocks[L.k_p:]
            for a in cwr(pool, L.m_p):
                for b in cwr(pool, L.m_pp):
                    ds = EndoLeviClass(gl_p, SOClass(a, p), gl_pp, SOClass(b, p), p)
                    if not ds.is_strongly_regular():
                        continue
                    if psi_levi(s, ds.twisted(), d, M) == gamma:
                        out.append((s, ds))
    return out


# -- the bijection from the proof -----------------------------------------


@dataclass
class FiberBijectionReport:
    gamma: LeviClass
    datum: EndoDatum
    regular: bool
    fiber_size: int = 0
    levi_side_size: int = 0
    well_defined: bool = False
    injective: bool = False
    surjective: bool = False
    binomial_ok: bool | None = None
    counterexample: object = None

    @property
    def bijective(self) -> bool:
        return self.regular and self.well_defined and self.injective and self.surjective


def descend(delta: tuple[SOClass, SOClass], gamma: LeviClass) -> tuple[SplitSeq, EndoLeviClass]:
    """delta -> (s, delta_s) by counting eigenvalues shared with gamma_i and -gamma_i.

    Each GL(n_i) block contributes lam^{+-1} for lam in gamma_i to the
    class in Sp(2n); 2 n_i' counts eigenvalues of delta' among them and
    2 n_i'' those of delta'' among their negatives.
    """
    p = gamma.p
    dp, dpp = delta
    ev_p, ev_pp = set(dp.eigenvalues()), set(dpp.eigenvalues())
    used_p, used_pp = set(), set()
    pairs, gl_p, gl_pp = [], [], []
    for block in gamma.gl_evs:
        spread = {x for lam in block for x in (lam, inv(lam, p))}
        neg_spread = {(-x) % p for x in spread}
        hit_p = spread & ev_p
        hit_pp = neg_spread & ev_pp
        if len(hit_p) % 2 or len(hit_pp) % 2:
            raise ValueError("odd eigenvalue count; gamma is not regular")
        n_i_p, n_i_pp = len(hit_p) // 2, len(hit_pp) // 2
        pairs.append((n_i_p, n_i_pp))
        used_p |= hit_p
        used_pp |= hit_pp
        if n_i_p:
            gl_p.append(tuple(lam for lam in block if lam in ev_p))
        if n_i_pp:
            gl_pp.append(tuple((-lam) % p for lam in block if (-lam) % p in ev_pp))
    tail_p = tuple(x for x in dp.pairs if x.a not in used_p)
    tail_pp = tuple(x for x in dpp.pairs if x.a not in used_pp)
    ds = EndoLeviClass(tuple(gl_p), SOClass(tail_p, p), tuple(gl_pp), SOClass(tail_pp, p), p)
    return SplitSeq(tuple(pairs)), ds


def check_fiber_bijection(gamma: LeviClass, d: EndoDatum) -> FiberBijectionReport:
    rep = FiberBijectionReport(gamma, d, regular=gamma.is_G_regular())
    if not rep.regular:
        rep.counterexample = {"reason": "gamma is not G-regular"}
        return rep
    M = gamma.levi
    left = fiber(gamma, d)
    right = levi_fiber_pairs(gamma, d)
    rep.fiber_size, rep.levi_side_size = len(left), len(right)
    right_set = set(right)
    images = []
    for delta in left:
        img = descend(delta, gamma)
        s, ds = img
        if (
            s.parts != M.gl_parts
            or img not in right_set
            or psi_levi(s, ds.twisted(), d, M) != gamma
            or not ds.is_strongly_regular()
        ):
            rep.counterexample = {"delta": repr(delta), "image": repr(img)}
            return rep
        images.append(img)
    rep.well_defined = True
    rep.injective = len(set(images)) == len(images)
    rep.surjective = set(images) == right_set and len(right_set) == len(right)
    if not (rep.injective and rep.surjective):
        missing = sorted(right_set - set(images), key=repr)
        rep.counterexample = {"unmatched": repr(missing[:1]) if missing else "collision"}
    if M.is_whole():
        rep.binomial_ok = len(left) == comb(d.n, d.n_p)
        if not rep.binomial_ok and rep.counterexample is None:
            rep.counterexample = {"fiber_size": len(left), "expected": comb(d.n, d.n_p)}
    return rep


# -- random classes --------------------------------------------------------


def regular_classes_exist(n: int, p: int) -> bool:
    """A regular class of Sp(2n) over F_p needs n disjoint pairs avoiding +-1."""
    return n <= (p - 3) // 2


def random_levi_class(M: LeviSp, p: int, rng: random.Random) -> LeviClass:
    pool = all_pairs(p)
    blocks = tuple(tuple(rng.randrange(1, p) for _ in range(size)) for size in M.gl_parts)
    sp = SpClass(tuple(rng.choice(pool) for _ in range(M.m)), p)
    return LeviClass(blocks, sp, p)


def random_regular_levi_class(
    M: LeviSp, p: int, rng: random.Random, max_draws: int = MAX_DRAWS
) -> LeviClass:
    """Rejection-sample a G-regular class of M."""
    for _ in range(max_draws):
        gamma = random_levi_class(M, p, rng)
        if gamma.is_G_regular():
            return gamma
    raise GenerationError(f"no G-regular class of {M} mod {p} in {max_draws} draws")
