"""The rule language: two-level rules with regular-expression contexts.

A rule file holds rules of the shape::

    "Deletion of the ending -a-"
    a:0 <=> _ [ ^N1: | ^1P1: | ^2P1: ] ;
            _ t: [ ^N2: | ^N4: ] ;

i.e. a quoted name, a center pair, one of the operators <=> => <= /<=, and one
or more contexts ``LEFT _ RIGHT ;``.  Contexts are regular expressions over
symbol pairs:

* ``a:b`` a concrete pair, ``a:`` any feasible pair with lexical a, ``:b``
  any feasible pair with surface b, bare ``a`` the identity pair a:a;
* ``Name:`` any pair whose lexical side is in the named set, ``:Name`` any
  pair whose surface side is in it, bare ``Name`` the identity pairs of its
  members (set names win over symbol readings);
* ``[ x | y ]`` grouping/union, ``( x )`` optionality, postfix ``*``
  repetition, ``#`` the word boundary;
* ``!`` starts a comment.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from .alphabet import MARKER_RE, ZERO, _LETTER_SET, _canonical_marker, normalize_text
from .errors import RuleError

OPERATORS = ("<=>", "=>", "<=", "/<=")


@dataclass(frozen=True)
class Pair:
    """Pair atom; a side of None is unconstrained."""

    lex: Optional[str]
    surf: Optional[str]


@dataclass(frozen=True)
class SetAtom:
    """Set atom; side is 'lex', 'surf', or 'identity'."""

    name: str
    side: str


@dataclass(frozen=True)
class Boundary:
    """The word-boundary symbol #."""


@dataclass(frozen=True)
class Seq:
    items: Tuple


@dataclass(frozen=True)
class Alt:
    items: Tuple


@dataclass(frozen=True)
class Opt:
    item: object


@dataclass(frozen=True)
class Star:
    item: object


@dataclass(frozen=True)
class TwoLevelRule:
    name: str
    center: Tuple[str, str]
    operator: str
    contexts: Tuple  # of (left, right) Seq pairs

    def __str__(self):
        return f'"{self.name}" {self.center[0]}:{self.center[1]} {self.operator}'


_PUNCT = set("[]()|*_#;")
_OP_CHARS = set("<=>/")
_WORD_BREAK = _PUNCT | _OP_CHARS | set(' \t\r"!')


def _tokens(text):
    for line_no, raw in enumerate(normalize_text(text).splitlines(), start=1):
        i = 0
        n = len(raw)
        while i < n:
            ch = raw[i]
            if ch in " \t\r":
                i += 1
                continue
            if ch == "!":
                break
            col = i + 1
            if ch == '"':
                j = raw.find('"', i + 1)
                if j < 0:
                    raise RuleError("unterminated rule name", line_no, col)
                yield ("quoted", raw[i + 1 : j], line_no, col)
                i = j + 1
                continue
            if raw.startswith("/<=", i):
                yield ("op", "/<=", line_no, col)
                i += 3
                continue
            if raw.startswith("<=>", i):
                yield ("op", "<=>", line_no, col)
                i += 3
                continue
            if raw.startswith("<=", i):
                yield ("op", "<=", line_no, col)
                i += 2
                continue
            if raw.startswith("=>", i):
                yield ("op", "=>", line_no, col)
                i += 2
                continue
            if ch in _PUNCT:
                yield ("punct", ch, line_no, col)
                i += 1
                continue
            if ch in _OP_CHARS:
                raise RuleError(f"unexpected character {ch!r}", line_no, col)
            j = i
            while j < n and raw[j] not in _WORD_BREAK:
                j += 1
            yield ("word", raw[i:j], line_no, col)
            i = j


def _resolve_symbol(part, a, line, col):
    if part == ZERO:
        return ZERO
    if part.startswith("^"):
        if not MARKER_RE.fullmatch(part):
            raise RuleError(f"bad marker spelling {part!r}", line, col)
        sym = _canonical_marker(part)
        if sym not in a.markers:
            raise RuleError(f"undeclared marker {part!r}", line, col)
        return sym
    folded = part.casefold()
    if len(folded) == 1 and folded in _LETTER_SET:
        return folded
    raise RuleError(f"unknown symbol or set {part!r}", line, col)


def _atom_from_word(word, a, line, col):
    if ":" in word:
        parts = word.split(":")
        if len(parts) != 2:
            raise RuleError(f"malformed atom {word!r}", line, col)
        left, right = parts
        if not left and not right:
            raise RuleError("':' needs at least one side", line, col)
        if left in a.sets:
            if right:
                raise RuleError(
                    f"set atom {left!r} cannot take a partner symbol", line, col
                )
            return SetAtom(left, "lex")
        if right in a.sets:
            if left:
                raise RuleError(
                    f"set atom {right!r} cannot take a partner symbol", line, col
                )
            return SetAtom(right, "surf")
        lex = _resolve_symbol(left, a, line, col) if left else None
        surf = _resolve_symbol(right, a, line, col) if right else None
        return Pair(lex, surf)
    if word in a.sets:
        return SetAtom(word, "identity")
    sym = _resolve_symbol(word, a, line, col)
    return Pair(sym, sym)


class _Parser:
    def __init__(self, tokens, a):
        self.tokens = tokens
        self.a = a
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self, expected):
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else ("", "", 1, 1)
            raise RuleError(f"unexpected end of rules, expected {expected}", last[2], last[3])
        self.pos += 1
        return tok

    def expect_punct(self, val):
        kind, v, line, col = self.next(f"'{val}'")
        if kind != "punct" or v != val:
            raise RuleError(f"expected '{val}', found {v!r}", line, col)

    def parse_seq(self, stops):
        """Parse a concatenation until one of the stop punctuation tokens."""
        items = []
        while True:
            tok = self.peek()
            if tok is None:
                last = self.tokens[-1] if self.tokens else ("", "", 1, 1)
                raise RuleError(
                    f"unexpected end of rules inside a context (need one of {sorted(stops)})",
                    last[2],
                    last[3],
                )
            kind, val, line, col = tok
            if kind == "punct" and val in stops:
                return Seq(tuple(items))
            items.append(self._parse_term())

    def _parse_term(self):
        item = self._parse_atom()
        while True:
            tok = self.peek()
            if tok and tok[0] == "punct" and tok[1] == "*":
                self.pos += 1
                item = Star(item)
            else:
                return item

    def _parse_atom(self):
        kind, val, line, col = self.next("an atom")
        if kind == "word":
            return _atom_from_word(val, self.a, line, col)
        if kind == "punct" and val == "#":
            return Boundary()
        if kind == "punct" and val == "[":
            alts = [self.parse_seq({"|", "]"})]
            while True:
                tok = self.peek()
                if tok and tok[0] == "punct" and tok[1] == "|":
                    self.pos += 1
                    alts.append(self.parse_seq({"|", "]"}))
                else:
                    break
            self.expect_punct("]")
            return alts[0] if len(alts) == 1 else Alt(tuple(alts))
        if kind == "punct" and val == "(":
            inner = self.parse_seq({")"})
            self.expect_punct(")")
            return Opt(inner)
        raise RuleError(f"unexpected {val!r} in a context expression", line, col)


def parse_rules(text, a):
    """Parse rule source against an alphabet; returns rules in file order."""
    tokens = list(_tokens(text))
    p = _Parser(tokens, a)
    rules = []
    while True:
        tok = p.peek()
        if tok is None:
            break
        kind, val, line, col = tok
        if kind != "quoted":
            raise RuleError(f"expected a quoted rule name, found {val!r}", line, col)
        p.pos += 1
        name = val

        kind, val, cline, ccol = p.next("a center pair")
        if kind != "word" or ":" not in val:
            raise RuleError(
                f"expected an explicit center pair like a:0, found {val!r}", cline, ccol
            )
        parts = val.split(":")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise RuleError(f"center pair must name both sides: {val!r}", cline, ccol)
        lex = _resolve_symbol(parts[0], a, cline, ccol)
        surf = _resolve_symbol(parts[1], a, cline, ccol)
        if not a.feasible(lex, surf):
            raise RuleError(f"infeasible center pair {lex}:{surf}", cline, ccol)
        center = (lex, surf)

        kind, op, oline, ocol = p.next("an operator")
        if kind != "op":
            raise RuleError(f"expected an operator, found {op!r}", oline, ocol)

        contexts = []
        while True:
            left = p.parse_seq({"_"})
            p.expect_punct("_")
            right = p.parse_seq({";"})
            p.expect_punct(";")
            contexts.append((left, right))
            nxt = p.peek()
            if nxt is None or nxt[0] == "quoted":
                break
        rules.append(TwoLevelRule(name, center, op, tuple(contexts)))
    return rules
