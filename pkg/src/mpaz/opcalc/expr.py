"""Typed operator atoms and integer-linear combinations of operator words.

A word ``(a_1, ..., a_k)`` means a_1 o ... o a_k, applied right to left.
The empty word is the identity.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property

from ..endoscopy import EndoDatum, SplitSeq, endoscopic_levi, is_split_sequence
from ..levi import LeviSOPair, LeviSp
from .groups import Mp, SOPair


class OpTypeError(ValueError):
    """Ill-typed atom or composition."""


@dataclass(frozen=True)
class Ind:
    """Normalized parabolic induction from ``levi`` up to ``parent``."""

    parent: object
    levi: object

    def __post_init__(self):
        if not self.parent.has_levi(self.levi):
            raise OpTypeError(f"{self.levi} is not a standard Levi of {self.parent}")

    @property
    def domain(self):
        return self.levi

    @property
    def codomain(self):
        return self.parent

    def is_unit(self) -> bool:
        return self.parent == self.levi

    def __str__(self):
        return f"I[{self.parent} <- {self.levi}]"


@dataclass(frozen=True)
class Res:
    """Normalized Jacquet module from ``parent`` down to ``levi``."""

    parent: object
    levi: object

    def __post_init__(self):
        if not self.parent.has_levi(self.levi):
            raise OpTypeError(f"{self.levi} is not a standard Levi of {self.parent}")

    @property
    def domain(self):
        return self.parent

    @property
    def codomain(self):
        return self.levi

    def is_unit(self) -> bool:
        return self.parent == self.levi

    def __str__(self):
        return f"R[{self.parent} -> {self.levi}]"


def _z_matches(obj: SOPair, s: SplitSeq) -> bool:
    L = obj.levi
    return L.gl_parts_p == s.primed and L.gl_parts_pp == s.double_primed


@dataclass(frozen=True)
class Z:
    """[z_s]: translation by the central element -1 on second-factor GL blocks."""

    obj: SOPair
    split: SplitSeq

    def __post_init__(self):
        if not isinstance(self.obj, SOPair) or not _z_matches(self.obj, self.split):
            raise OpTypeError(f"Z[{self.split}] does not act on {self.obj}")

    @property
    def domain(self):
        return self.obj

    codomain = domain

    def is_unit(self) -> bool:
        return not self.obj.levi.gl_parts_pp

    def __str__(self):
        return f"Z[{self.split} : {self.obj}]"


@dataclass(frozen=True)
class T:
    """Transfer GL(inert) x N_s^! -> GL(inert) x N~, for N a Levi of Sp(2 d.n).

    ``tail`` is N, ``split`` an element of E(N, datum). With N the whole
    Sp(2 d.n) this is the elliptic transfer (tensored with the identity on
    the inert GL factors).
    """

    inert: tuple[int, ...]
    tail: LeviSp
    datum: EndoDatum
    split: SplitSeq

    def __post_init__(self):
        object.__setattr__(self, "inert", tuple(self.inert))
        if not is_split_sequence(self.tail, self.split, self.datum):
            raise OpTypeError(f"{self.split} is not in E({self.tail}, {self.datum})")

    @classmethod
    def elliptic(cls, d: EndoDatum, inert=()) -> "T":
        return cls(tuple(inert), LeviSp.whole(d.n), d, SplitSeq(()))

    def is_elliptic(self) -> bool:
        return self.tail.is_whole()

    @cached_property
    def domain(self) -> SOPair:
        _, L, _ = endoscopic_levi(self.tail, self.split, self.datum)
        return SOPair(L, self.inert)

    @cached_property
    def codomain(self) -> Mp:
        return Mp(self.inert + self.tail.gl_parts, self.tail.m)

    def is_unit(self) -> bool:
        return False

    def __str__(self):
        at = f" @ {self.split}" if self.split.pairs else ""
        return f"T[{self.domain} -> {self.codomain}{at}]"


@dataclass(frozen=True)
class D:
    """Aubert-Zelevinsky involution of ``group``, kept unexpanded."""

    group: object

    @property
    def domain(self):
        return self.group

    codomain = domain

    def is_unit(self) -> bool:
        return False

    def __str__(self):
        return f"D[{self.group}]"


def canonical_word(word) -> tuple:
    """Drop identity atoms and check that adjacent atoms compose."""
    word = tuple(a for a in word if not a.is_unit())
    for left, right in zip(word, word[1:]):
        if left.domain != right.codomain:
            raise OpTypeError(f"cannot compose {left} with {right}: {right.codomain} != {left.domain}")
    return word


def word_str(word) -> str:
    return " . ".join(map(str, word)) if word else "Id"


def _word_key(word):
    return (len(word), word_str(word))


class OpExpr:
    """Finite Z-linear combination of operator words."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        acc = defaultdict(int)
        for word, coef in dict(terms or {}).items():
            acc[canonical_word(word)] += int(coef)
        self._terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def atom(cls, a) -> "OpExpr":
        return cls({(a,): 1})

    @classmethod
    def identity(cls) -> "OpExpr":
        return cls({(): 1})

    @classmethod
    def word(cls, *atoms, coef: int = 1) -> "OpExpr":
        return cls({tuple(atoms): coef})

    def items(self):
        return sorted(self._terms.items(), key=lambda wc: _word_key(wc[0]))

    def words(self):
        return [w for w, _ in self.items()]

    def coefficient(self, word) -> int:
        return self._terms.get(canonical_word(word), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return isinstance(other, OpExpr) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "OpExpr") -> "OpExpr":
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, 0) + c
        return OpExpr(acc)

    def __neg__(self):
        return OpExpr({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return OpExpr({w: k * c for w, c in self._terms.items()})

    __mul__ = __rmul__

    def __matmul__(self, other: "OpExpr") -> "OpExpr":
        acc = defaultdict(int)
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                acc[w1 + w2] += c1 * c2
        return OpExpr(acc)

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for i, (w, c) in enumerate(self.items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = word_str(w) if mag == 1 else f"{mag} * {word_str(w)}"
            if i == 0:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f"{sign} {body}")
        return " ".join(out)

    def __repr__(self):
        return f"OpExpr({str(self)!r})"


def so_group(d: EndoDatum, inert=()) -> SOPair:
    return SOPair(LeviSOPair.whole(d.n_p, d.n_pp), tuple(inert))
