"""Symbol universe for two-level rules.

A symbol is one lowercase Czech letter, one marker token such as ``^2P1``, or
the zero symbol ``0``.  An Alphabet fixes which lexical:surface symbol pairs
are feasible and names the symbol sets that rule contexts quantify over.
"""

import re
import unicodedata

from .errors import AlphabetError

ZERO = "0"
BOUNDARY = "#"

# The letter inventory.  "ch" is deliberately not a symbol: it is always the
# two letters c, h.  Foreign letters (f, q, w, x) are out of scope.
CONSONANTS = tuple("b c č d ď g h j k l m n ň p r ř s š t ť v z ž".split())
VOWELS = tuple("a á e é ě i í o ó u ú ů y ý".split())
LETTERS = CONSONANTS + VOWELS

HARD_CONSONANTS = tuple("d g h k n r t".split())
SOFT_CONSONANTS = tuple("c č ď j ň ř š ť ž".split())
NEUTRAL_CONSONANTS = tuple("b l m p s v z".split())
HARD_VOWELS = tuple("a á e é o ó u ú ů y ý".split())
SOFT_VOWELS = tuple("ě i í".split())

# Letters that occur in deletable one-letter base-form endings.
END_LETTERS = tuple("a e ě i í o u y ý".split())

BUILTIN_SETS = {
    "Cons": frozenset(CONSONANTS),
    "Vowel": frozenset(VOWELS),
    "HardCons": frozenset(HARD_CONSONANTS),
    "SoftCons": frozenset(SOFT_CONSONANTS),
    "NeutralCons": frozenset(NEUTRAL_CONSONANTS),
    "HardVowel": frozenset(HARD_VOWELS),
    "SoftVowel": frozenset(SOFT_VOWELS),
    "NonCČS": frozenset(s for s in LETTERS if s not in ("c", "č", "s")),
    "End": frozenset(END_LETTERS),
}

# Marker spelling: ^ + kind + digit for the counted kinds, ^E1/^E2/^IK for the
# uncounted ones.  Matching is case-insensitive; the canonical form is upper.
MARKER_RE = re.compile(r"\^(?:[12][pP][0-4]|[aAnN][0-4]|[eE][12]|[iI][kK])")

_LETTER_SET = frozenset(LETTERS)


def marker_kind(marker):
    """Return (kind, strip_count) for a marker symbol.

    Kinds are P1, P2, A, N (with a strip count 0-4) and E1, E2, IK (count
    None).
    """
    m = MARKER_RE.fullmatch(marker)
    if not m:
        raise AlphabetError(f"not a marker symbol: {marker!r}")
    body = marker[1:].upper()
    if body in ("E1", "E2", "IK"):
        return body, None
    if body[0] in "12":
        return "P" + body[0], int(body[2])
    return body[0], int(body[1])


def _canonical_marker(token):
    return token.upper()


class Alphabet:
    """Immutable symbol universe: letters, markers, feasible pairs, sets."""

    def __init__(self, markers, extra_pairs, extra_sets):
        self.letters = _LETTER_SET
        self.markers = frozenset(markers)
        self.symbols = frozenset(self.letters | self.markers | {ZERO})
        pairs = {(s, s) for s in LETTERS}
        pairs.update(extra_pairs)
        self.pairs = tuple(sorted(pairs))
        self.pair_index = {p: i for i, p in enumerate(self.pairs)}
        sets = dict(BUILTIN_SETS)
        sets.update(extra_sets)
        self.sets = sets
        by_lex = {}
        for lex, surf in self.pairs:
            by_lex.setdefault(lex, []).append(surf)
        self._surfaces = {lex: tuple(v) for lex, v in by_lex.items()}

    def feasible(self, lex, surf):
        return (lex, surf) in self.pair_index

    def surfaces_for(self, lex):
        """All declared surface realizations of a lexical symbol."""
        return self._surfaces.get(lex, ())

    def insertion_pairs(self):
        """Feasible pairs with a zero lexical side (surface insertions)."""
        return tuple((ZERO, s) for s in self._surfaces.get(ZERO, ()))

    def classify(self, s):
        if s == ZERO:
            return "zero"
        if s in self.markers:
            return "marker"
        if s in _LETTER_SET:
            if s in BUILTIN_SETS["HardCons"]:
                return "hard-cons"
            if s in BUILTIN_SETS["SoftCons"]:
                return "soft-cons"
            if s in BUILTIN_SETS["NeutralCons"]:
                return "neutral-cons"
            if s in BUILTIN_SETS["HardVowel"]:
                return "hard-vowel"
            return "soft-vowel"
        if s in self.symbols:
            return "other"
        raise AlphabetError(f"unknown symbol: {s!r}")

    def member(self, set_name, s):
        try:
            members = self.sets[set_name]
        except KeyError:
            raise AlphabetError(f"unknown set name: {set_name!r}") from None
        return s in members

    def __eq__(self, other):
        if not isinstance(other, Alphabet):
            return NotImplemented
        return (
            self.markers == other.markers
            and self.pairs == other.pairs
            and self.sets == other.sets
        )

    def __hash__(self):
        return hash((self.markers, self.pairs))

    def __repr__(self):
        return (
            f"<Alphabet {len(self.letters)} letters, {len(self.markers)} markers, "
            f"{len(self.pairs)} pairs, {len(self.sets)} sets>"
        )


def classify(a, s):
    """Category of a symbol: hard-cons, soft-cons, neutral-cons, hard-vowel,
    soft-vowel, marker, zero, or other."""
    return a.classify(s)


def member(a, set_name, s):
    """True iff symbol s belongs to the named set."""
    return a.member(set_name, s)


def normalize_text(text):
    """Canonical composed form (NFC); combining sequences collapse."""
    return unicodedata.normalize("NFC", text)


def _parse_symbol(token, markers_seen, line, col, declare_markers):
    """Resolve one side of an alphabet item to a symbol."""
    if token == ZERO:
        return ZERO
    if token.startswith("^"):
        if not MARKER_RE.fullmatch(token):
            raise AlphabetError(f"bad marker spelling {token!r}", line, col)
        sym = _canonical_marker(token)
        if declare_markers:
            markers_seen.add(sym)
        elif sym not in markers_seen:
            raise AlphabetError(f"undeclared marker {token!r}", line, col)
        return sym
    folded = token.casefold()
    if len(folded) == 1 and folded in _LETTER_SET:
        return folded
    raise AlphabetError(f"unknown symbol {token!r}", line, col)


def _iter_tokens(text):
    """Yield (token, line_no, col) over comment-stripped source text."""
    for line_no, raw in enumerate(normalize_text(text).splitlines(), start=1):
        line = raw.split("!", 1)[0]
        for m in re.finditer(r"\S+", line):
            yield m.group(0), line_no, m.start() + 1


def parse_alphabet(text):
    """Parse an alphabet declaration.

    Grammar: a section headed ``Alphabet`` lists whitespace-separated items,
    each either ``sym`` (identity pair feasible) or ``lex:surf``; an optional
    section headed ``Sets`` holds statements ``Name = sym sym ... ;``.
    Comments run from ``!`` to end of line.  All built-in letters carry
    identity pairs whether or not the text mentions them; markers exist only
    if declared, and always with surface zero.
    """
    markers = set()
    extra_pairs = set()
    extra_sets = {}

    tokens = list(_iter_tokens(text))
    i = 0
    section = None
    while i < len(tokens):
        tok, line, col = tokens[i]
        if tok in ("Alphabet", "Sets"):
            section = tok
            i += 1
            continue
        if section is None:
            raise AlphabetError(
                f"item {tok!r} before any section header", line, col
            )
        if section == "Alphabet":
            if ":" in tok:
                parts = tok.split(":")
                if len(parts) != 2 or not parts[0] or not parts[1]:
                    raise AlphabetError(f"malformed pair {tok!r}", line, col)
                lex = _parse_symbol(parts[0], markers, line, col, True)
                surf = _parse_symbol(parts[1], markers, line, col, True)
                if lex == ZERO and surf == ZERO:
                    raise AlphabetError("pair 0:0 is not allowed", line, col)
                if lex in markers and surf != ZERO:
                    raise AlphabetError(
                        f"marker {lex} may only surface as zero", line, col
                    )
                if surf in markers:
                    raise AlphabetError(
                        f"marker {surf} cannot be a surface symbol", line, col
                    )
                extra_pairs.add((lex, surf))
            else:
                if tok.startswith("^"):
                    raise AlphabetError(
                        f"marker {tok!r} must be declared as {tok}:0", line, col
                    )
                sym = _parse_symbol(tok, markers, line, col, False)
                if sym == ZERO:
                    raise AlphabetError("0 needs a partner symbol", line, col)
                extra_pairs.add((sym, sym))
            i += 1
        else:
            name = tok
            if ":" in name or name in ("=", ";"):
                raise AlphabetError(f"bad set name {name!r}", line, col)
            if name in BUILTIN_SETS or name in extra_sets:
                raise AlphabetError(f"duplicate set name {name!r}", line, col)
            i += 1
            if i >= len(tokens) or tokens[i][0] != "=":
                raise AlphabetError(f"expected '=' after set name {name!r}", line, col)
            i += 1
            members = set()
            closed = False
            while i < len(tokens):
                tok2, line2, col2 = tokens[i]
                if tok2 == ";":
                    closed = True
                    i += 1
                    break
                members.add(_parse_symbol(tok2, markers, line2, col2, False))
                i += 1
            if not closed:
                raise AlphabetError(f"set {name!r} not closed with ';'", line, col)
            extra_sets[name] = frozenset(members)

    return Alphabet(markers, extra_pairs, extra_sets)


def tokenize(a, text):
    """Split a lexical or surface string into alphabet symbols.

    Input is NFC-normalized; letters are case-folded; ``^``-markers are
    recognized as single symbols.  Unknown characters raise AlphabetError.
    """
    text = normalize_text(text)
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "^":
            m = MARKER_RE.match(text, i)
            if not m:
                raise AlphabetError(
                    f"bad marker at offset {i}: {text[i:i + 5]!r}"
                )
            sym = _canonical_marker(m.group(0))
            if sym not in a.markers:
                raise AlphabetError(f"undeclared marker {sym!r}")
            out.append(sym)
            i = m.end()
            continue
        folded = ch.casefold()
        if folded in _LETTER_SET:
            out.append(folded)
        else:
            raise AlphabetError(f"unknown character {ch!r} at offset {i}")
        i += 1
    return out
