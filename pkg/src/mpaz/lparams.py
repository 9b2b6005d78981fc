"""Discrete L-parameters of SO(2n+1) as sets of Jordan blocks (rho, a).

rho is an abstract label carrying only its dimension, its duality and the
sign omega_rho(-1). A block rho x S_a is symplectic when rho is symplectic
and a is odd, or rho is orthogonal and a is even.

Text format, one block per line::

    # comment
    n = 2                      (optional; otherwise half the total dimension)
    rho r1 dim=1 duality=orth omega=+1 ; a=2
    rho r2 dim=2 duality=sympl omega=-1 ; a=1
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .endoscopy import EndoDatum
from .levi import LeviSOPair

ORTH, SYMPL = "orthogonal", "symplectic"
_DUALITY = {"orth": ORTH, "orthogonal": ORTH, "sympl": SYMPL, "symplectic": SYMPL}


@dataclass(frozen=True, order=True)
class RhoLabel:
    id: str
    dim: int
    duality: str
    omega_m1: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"rho {self.id}: dimension must be positive")
        if self.duality not in (ORTH, SYMPL):
            raise ValueError(f"rho {self.id}: unknown duality {self.duality!r}")
        if self.duality == SYMPL and self.dim % 2:
            raise ValueError(f"rho {self.id}: symplectic representations have even dimension")
        if self.omega_m1 not in (1, -1):
            raise ValueError(f"rho {self.id}: omega(-1) must be +1 or -1")


Block = tuple  # (RhoLabel, a)


def block_dim(block: Block) -> int:
    rho, a = block
    return rho.dim * a


def is_symplectic_block(block: Block) -> bool:
    rho, a = block
    return (rho.duality == SYMPL) == (a % 2 == 1)


@dataclass(frozen=True)
class LParameter:
    """Jordan blocks and rank. Not validated on construction; see validate_discrete."""

    blocks: tuple[Block, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))

    @classmethod
    def from_blocks(cls, blocks) -> "LParameter":
        blocks = tuple(blocks)
        return cls(blocks, sum(map(block_dim, blocks)) // 2)

    @property
    def jord(self) -> frozenset:
        return frozenset(self.blocks)

    def __str__(self):
        return " + ".join(f"{rho.id}[{a}]" for rho, a in self.blocks) or "0"


def validate_discrete(phi: LParameter) -> list[str]:
    """Empty list iff phi is discrete; otherwise one message per violation."""
    errors = []
    seen = set()
    for rho, a in phi.blocks:
        if a < 1:
            errors.append(f"block ({rho.id},{a}): a must be positive")
        if (rho, a) in seen:
            errors.append(f"multiplicity: block ({rho.id},{a}) occurs more than once")
        seen.add((rho, a))
        if not is_symplectic_block((rho, a)):
            errors.append(f"non-symplectic block ({rho.id},{a}): {rho.duality} rho with a={a}")
    total = sum(map(block_dim, phi.blocks))
    if total != 2 * phi.n:
        errors.append(f"dimension: blocks add up to {total}, expected 2n = {2 * phi.n}")
    return errors


def is_discrete(phi: LParameter) -> bool:
    return not validate_discrete(phi)


def factorizations(phi: LParameter, d: EndoDatum) -> list[tuple[LParameter, LParameter]]:
    """All ways to send each block to SO(2n'+1) or SO(2n''+1) with the right dimensions."""
    if d.n != phi.n:
        raise ValueError(f"datum {d} does not match rank {phi.n}")
    out = []
    for sides in product((0, 1), repeat=len(phi.blocks)):
        first = tuple(b for b, side in zip(phi.blocks, sides) if side == 0)
        second = tuple(b for b, side in zip(phi.blocks, sides) if side == 1)
        if sum(map(block_dim, first)) == 2 * d.n_p and sum(map(block_dim, second)) == 2 * d.n_pp:
            out.append((LParameter(first, d.n_p), LParameter(second, d.n_pp)))
    return out


@dataclass(frozen=True)
class CorollaryData:
    levi_choice: tuple[int, int]
    M_bang: LeviSOPair | None
    x: Fraction
    alpha: int
    m: int


def corollary_data(phi_p: LParameter, phi_pp: LParameter, block: Block) -> CorollaryData:
    """Levi of SO x SO selected by a Jordan block, with x = (a-1)/2 and the sign alpha.

    M_bang is None when GL(d) does not fit in the factor the block lives in
    (d > n' or d > n'').
    """
    rho, a = block
    in_p, in_pp = block in phi_p.jord, block in phi_pp.jord
    if in_p == in_pp:
        where = "both factors" if in_p else "neither factor"
        raise ValueError(f"block ({rho.id},{a}) lies in {where}")
    d = rho.dim
    n_p, n_pp = phi_p.n, phi_pp.n
    if in_p:
        choice, alpha = (d, 0), 1
        M_bang = LeviSOPair((d,), n_p - d, n_p, (), n_pp, n_pp) if d <= n_p else None
    else:
        choice, alpha = (0, d), rho.omega_m1
        M_bang = LeviSOPair((), n_p, n_p, (d,), n_pp - d, n_pp) if d <= n_pp else None
    return CorollaryData(choice, M_bang, Fraction(a - 1, 2), alpha, n_p + n_pp - d)


# -- text format --------------------------------------------------------------

_LINE = re.compile(
    r"^rho\s+(?P<id>\S+)\s+dim=(?P<dim>\d+)\s+duality=(?P<dual>\w+)\s+"
    r"omega=(?P<omega>[+-]?1)\s*;\s*a=(?P<a>\d+)\s*$"
)


def parse_lparam(text: str) -> LParameter:
    rhos: dict[str, RhoLabel] = {}
    blocks = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n"):
            m = re.fullmatch(r"n\s*=\s*(\d+)", line)
            if not m:
                raise ValueError(f"line {lineno}: bad rank line {raw!r}")
            n = int(m.group(1))
            continue
        m = _LINE.match(line)
        if not m:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
        dual = _DUALITY.get(m["dual"])
        if dual is None:
            raise ValueError(f"line {lineno}: duality must be orth or sympl")
        rho = RhoLabel(m["id"], int(m["dim"]), dual, int(m["omega"]))
        if rhos.setdefault(rho.id, rho) != rho:
            raise ValueError(f"line {lineno}: rho {rho.id} redeclared with different attributes")
        blocks.append((rho, int(m["a"])))
    if n is None:
        return LParameter.from_blocks(blocks)
    return LParameter(tuple(blocks), n)


def format_lparam(phi: LParameter) -> str:
    lines = [f"n = {phi.n}"]
    for rho, a in phi.blocks:
        dual = "orth" if rho.duality == ORTH else "sympl"
        lines.append(f"rho {rho.id} dim={rho.dim} duality={dual} omega={rho.omega_m1:+d} ; a={a}")
    return "\n".join(lines) + "\n"


def random_discrete(n: int, rng, max_dim: int = 4) -> LParameter:
    """A random discrete parameter of SO(2n+1): fill dimension 2n with distinct blocks."""
    remaining = 2 * n
    blocks = []
    serial = 0
    while remaining:
        options = []
        for dim in range(1, min(max_dim, remaining) + 1):
            for a in range(1, remaining // dim + 1):
                if dim * a > remaining:
                    continue
                dual = SYMPL if a % 2 else ORTH
                if dual == SYMPL and dim % 2:
                    continue
                options.append((dim, a, dual))
        dim, a, dual = rng.choice(options)
        # a few reused labels so that (rho, a) and (rho, a') both occur
        if blocks and rng.random() < 0.3:
            rho = rng.choice([b[0] for b in blocks])
            if rho.dim * a <= remaining and (rho.duality == SYMPL) == (a % 2 == 1) and (rho, a) not in blocks:
                blocks.append((rho, a))
                remaining -= rho.dim * a
                continue
        rho = RhoLabel(f"r{serial}", dim, dual, rng.choice((1, -1)))
        serial += 1
        blocks.append((rho, a))
        remaining -= dim * a
    return LParameter(tuple(blocks), n)
