"""Group objects the operators act between.

``Mp(gl, m)`` is GL(gl_1) x ... x Mp(2m), a group of metaplectic type.
``SOPair(levi, inert)`` is GL(inert) x (a standard Levi of SO x SO); the
``inert`` GL factors are the ones endoscopic transfer acts on as the
identity (non-elliptic data).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..levi import LeviSOPair, is_sub_levi, ss_rank, sub_levis, split_refinement, gl_refinements


def _fmt_gl(parts):
    return f"GL({','.join(map(str, parts))})x" if parts else ""


@dataclass(frozen=True, order=True)
class Mp:
    gl: tuple[int, ...]
    m: int

    def __post_init__(self):
        object.__setattr__(self, "gl", tuple(self.gl))
        if any(p < 1 for p in self.gl) or self.m < 0:
            raise ValueError(f"bad metaplectic-type group {self.gl}, {self.m}")

    @property
    def n(self) -> int:
        return sum(self.gl) + self.m

    def rank(self) -> int:
        return ss_rank(self.gl, self.m)

    def levis(self) -> list["Mp"]:
        return [Mp(parts, m) for parts, m in sub_levis(self.gl, self.m)]

    def has_levi(self, other) -> bool:
        return isinstance(other, Mp) and is_sub_levi(self.gl, self.m, other.gl, other.m)

    def __str__(self):
        return f"{_fmt_gl(self.gl)}MSp({self.m})"


def MetaplecticSp(n: int) -> Mp:
    return Mp((), n)


def MetaplecticType(gl_parts, m: int) -> Mp:
    return Mp(tuple(gl_parts), m)


@dataclass(frozen=True, order=True)
class SOPair:
    levi: LeviSOPair
    inert: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "inert", tuple(self.inert))
        if any(p < 1 for p in self.inert):
            raise ValueError("GL parts must be positive")

    def rank(self) -> int:
        L = self.levi
        return ss_rank(self.inert, 0) + ss_rank(L.gl_parts_p, L.m_p) + ss_rank(L.gl_parts_pp, L.m_pp)

    def levis(self) -> list["SOPair"]:
        L = self.levi
        out = []
        for inert in gl_refinements(self.inert):
            for a, ma in sub_levis(L.gl_parts_p, L.m_p):
                for b, mb in sub_levis(L.gl_parts_pp, L.m_pp):
                    out.append(SOPair(LeviSOPair(a, ma, L.n_p, b, mb, L.n_pp), inert))
        return out

    def has_levi(self, other) -> bool:
        if not isinstance(other, SOPair):
            return False
        A, B = self.levi, other.levi
        cut = split_refinement(self.inert, other.inert)
        return (
            cut is not None
            and not cut[1]
            and (A.n_p, A.n_pp) == (B.n_p, B.n_pp)
            and is_sub_levi(A.gl_parts_p, A.m_p, B.gl_parts_p, B.m_p)
            and is_sub_levi(A.gl_parts_pp, A.m_pp, B.gl_parts_pp, B.m_pp)
        )

    def __str__(self):
        L = self.levi
        core = (
            f"{_fmt_gl(L.gl_parts_p)}SO({2 * L.m_p + 1})x"
            f"{_fmt_gl(L.gl_parts_pp)}SO({2 * L.m_pp + 1})"
        )
        return f"{_fmt_gl(self.inert)[:-1]}|{core}" if self.inert else core
