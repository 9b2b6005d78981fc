"""Text syntax for operator expressions.

    expr  := term (('+' | '-') term)*
    term  := [int '*'] word
    word  := atom ('.' atom)*
    atom  := 'Id' | 'I[' group '<-' group ']' | 'R[' group '->' group ']'
           | 'T[' group '->' group ['@' split] ']' | 'Z[' split [':' group] ']'
           | 'D[' group ']'
    group := 'MSp(n)' | 'GL(a,b,..)xMSp(m)'
           | [GL(..)x]SO(a)x[GL(..)x]SO(b)  with an optional 'GL(..)|' inert prefix
    split := '()' | '(a,b)' (',' '(a,b)')*

MSp takes the rank, SO the (odd) matrix size. Parentheses around a single
number may be dropped: MSp2, SO3, GL1. A GL-only group on the small side
of I[..] or R[..] inherits the metaplectic tail of the big side.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..endoscopy import EndoDatum, SplitSeq, endoscopic_levi, split_sequences
from ..levi import LeviSOPair, LeviSp
from .expr import D, Ind, OpExpr, OpTypeError, Res, T, Z
from .groups import Mp, SOPair


class DSLSyntaxError(ValueError):
    def __init__(self, msg, pos, text=""):
        self.pos = pos
        super().__init__(f"{msg} at position {pos}" + (f": {text[pos:pos + 20]!r}" if text else ""))


_TOKEN = re.compile(
    r"\s*(?:(?P<arrow>->|<-)|(?P<int>\d+)|(?P<name>Id|MSp|GL|SO|I|R|Z|T|D)"
    r"|(?P<x>x)|(?P<punct>[\[\](),.+\-*|@:]))"
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise DSLSyntaxError("unexpected character", bad, text)
        kind = m.lastgroup
        out.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(_Tok("eof", "", len(text)))
    return out


@dataclass(frozen=True)
class _GLOnly:
    parts: tuple[int, ...]


@dataclass
class _ZStub:
    split: SplitSeq
    pos: int


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    # -- token helpers --
    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg):
        raise DSLSyntaxError(msg, self.tok.pos, self.text)

    def accept(self, text):
        if self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            self.error(f"expected {text!r}")

    def integer(self):
        if self.tok.kind != "int":
            self.error("expected an integer")
        v = int(self.tok.text)
        self.i += 1
        return v

    # -- grammar --
    def parse(self) -> OpExpr:
        if self.tok.text == "0" and self.toks[self.i + 1].kind == "eof":
            return OpExpr()
        total = OpExpr()
        sign = -1 if self.accept("-") else 1
        while True:
            total = total + sign * self.term()
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break
        if self.tok.kind != "eof":
            self.error("unexpected trailing input")
        return total

    def term(self) -> OpExpr:
        coef = 1
        if self.tok.kind == "int" and self.toks[self.i + 1].text == "*":
            coef = self.integer()
            self.expect("*")
        atoms = [self.atom()]
        while self.accept("."):
            atoms.append(self.atom())
        return coef * OpExpr.word(*self.resolve_z(atoms))

    def resolve_z(self, atoms):
        out = list(atoms)
        for i, a in enumerate(out):
            if not isinstance(a, _ZStub):
                continue
            obj = None
            if i + 1 < len(out) and not isinstance(out[i + 1], _ZStub):
                obj = out[i + 1].codomain
            elif i > 0 and not isinstance(out[i - 1], _ZStub):
                obj = out[i - 1].domain
            if obj is None:
                s = a.split
                obj = SOPair(LeviSOPair(s.primed, 0, sum(s.primed), s.double_primed, 0, sum(s.double_primed)))
            out[i] = Z(obj, a.split)
        return out

    def atom(self):
        tok = self.tok
        if tok.kind != "name" or tok.text in ("GL", "MSp", "SO"):
            self.error("expected an operator atom")
        self.i += 1
        kind = tok.text
        if kind == "Id":
            return _Id()
        self.expect("[")
        if kind == "D":
            g = self.group()
            self.expect("]")
            return D(_complete(g, None))
        if kind == "Z":
            s = self.split()
            obj = self.group() if self.accept(":") else None
            self.expect("]")
            if obj is None:
                return _ZStub(s, tok.pos)
            return Z(_complete(obj, None), s)
        left = self.group()
        arrow = self.tok
        if arrow.kind != "arrow":
            self.error("expected '->' or '<-'")
        self.i += 1
        right = self.group()
        s = self.split() if kind == "T" and self.accept("@") else None
        self.expect("]")
        want = "<-" if kind == "I" else "->"
        if arrow.text != want:
            raise OpTypeError(
                f"{kind}[...] at position {tok.pos} must be written with '{want}' "
                f"({_USAGE[kind]})"
            )
        if kind in ("I", "R"):
            parent = _complete(left, None)
            levi = _complete(right, parent)
            return Ind(parent, levi) if kind == "I" else Res(parent, levi)
        return _transfer(_complete(left, None), _complete(right, None), s)

    def factors(self):
        out = [self.factor()]
        while True:
            if self.accept("x"):
                out.append(self.factor())
            elif self.accept("|"):
                out.append("|")
                out.append(self.factor())
            else:
                return out

    def factor(self):
        tok = self.tok
        if tok.text not in ("GL", "MSp", "SO"):
            self.error("expected GL, MSp or SO")
        self.i += 1
        if self.accept("("):
            nums = [self.integer()]
            while self.accept(","):
                nums.append(self.integer())
            self.expect(")")
        else:
            nums = [self.integer()]
        if tok.text != "GL" and len(nums) != 1:
            raise DSLSyntaxError(f"{tok.text} takes one number", tok.pos, self.text)
        if tok.text == "SO" and nums[0] % 2 == 0:
            raise DSLSyntaxError("SO(a) needs odd a", tok.pos, self.text)
        if tok.text == "GL" and 0 in nums:
            raise DSLSyntaxError("GL(0) is not allowed", tok.pos, self.text)
        return (tok.text, tuple(nums), tok.pos)

    def group(self):
        start = self.tok.pos
        fs = self.factors()
        inert = ()
        if "|" in fs:
            bar = fs.index("|")
            head, fs = fs[:bar], fs[bar + 1:]
            if any(f[0] != "GL" for f in head) or "|" in fs:
                raise DSLSyntaxError("only GL factors may precede '|'", start, self.text)
            inert = tuple(x for f in head for x in f[1])
        names = [f[0] for f in fs]
        if "MSp" in names:
            if inert or names.count("MSp") != 1 or names[-1] != "MSp" or "SO" in names:
                raise DSLSyntaxError("metaplectic group must be GL(..)x...xMSp(m)", start, self.text)
            return Mp(tuple(x for f in fs[:-1] for x in f[1]), fs[-1][1][0])
        if "SO" in names:
            if names.count("SO") != 2 or names[-1] != "SO":
                raise DSLSyntaxError("expected two SO factors", start, self.text)
            cut = names.index("SO")
            a, b = fs[: cut + 1], fs[cut + 1:]
            return SOPair(_so_side(a, b), inert)
        if inert:
            raise DSLSyntaxError("'|' needs an SO pair after it", start, self.text)
        return _GLOnly(tuple(x for f in fs for x in f[1]))

    def split(self) -> SplitSeq:
        self.expect("(")
        if self.accept(")"):
            return SplitSeq(())
        pairs = [self._pair_tail()]
        while self.accept(","):
            self.expect("(")
            pairs.append(self._pair_tail())
        return SplitSeq(tuple(pairs))

    def _pair_tail(self):
        a = self.integer()
        self.expect(",")
        b = self.integer()
        self.expect(")")
        return (a, b)


_USAGE = {"I": "I[parent <- levi]", "R": "R[parent -> levi]", "T": "T[source -> target]"}


class _Id:
    def is_unit(self):
        return True

    domain = codomain = None


def _so_side(a, b) -> LeviSOPair:
    def side(fs):
        parts = tuple(x for f in fs[:-1] for x in f[1])
        m = (fs[-1][1][0] - 1) // 2
        return parts, m, sum(parts) + m

    pa, ma, na = side(a)
    pb, mb, nb = side(b)
    return LeviSOPair(pa, ma, na, pb, mb, nb)


def _complete(g, parent):
    if not isinstance(g, _GLOnly):
        return g
    if isinstance(parent, Mp):
        return Mp(g.parts, parent.n - sum(g.parts))
    if parent is None:
        return Mp(g.parts, 0)
    raise OpTypeError(f"GL-only group GL{g.parts} is ambiguous inside {parent}")


def _transfer(src, tgt, s) -> T:
    if not isinstance(src, SOPair) or not isinstance(tgt, Mp):
        raise OpTypeError(f"T needs an SO-pair source and metaplectic target, got {src} -> {tgt}")
    L = src.levi
    d = EndoDatum(L.n_p, L.n_pp)
    c = src.inert
    if tgt.gl[: len(c)] != c or tgt.m + sum(tgt.gl[len(c):]) != d.n:
        raise OpTypeError(f"no transfer {src} -> {tgt}")
    N = LeviSp(tgt.gl[len(c):], tgt.m, d.n)
    if s is None:
        cands = [x for x in split_sequences(N, d) if endoscopic_levi(N, x, d)[1] == L]
        if len(cands) != 1:
            what = "no" if not cands else "ambiguous"
            raise OpTypeError(f"{what} transfer {src} -> {tgt}; add '@ split'")
        s = cands[0]
    t = T(c, N, d, s)
    if t.domain != src:
        raise OpTypeError(f"split {s} sends {tgt} to {t.domain}, not {src}")
    return t


def parse(text: str) -> OpExpr:
    """Parse and type-check an operator expression."""
    return _Parser(text).parse()
