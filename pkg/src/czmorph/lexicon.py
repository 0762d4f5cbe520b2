"""Lexicon files: paradigms built from ending sets, plus entries.

The format is line oriented; ! starts a comment.

    ENDINGS name        opens a block of ending rows, one per line:
                          TAG [@slot] [^MARKER] [ending]
    PARADIGM name = endings-name [endings-name ...]
    ENTRY lemma paradigm base [Tag=literal ...]
    ENTRY lemma paradigm slot=stem [slot=stem ...] [Tag=literal ...]

A row names the form's tag, the stem slot it attaches to (entries for
slotless paradigms supply one base form), an optional marker inserted
between stem and ending, and the ending itself.  Endings and stems may
embed markers directly (in^2P0ých).  Tag=literal pairs on an ENTRY are
exceptions: the literal is the surface form for that tag and overrides
whatever the rows would produce.
"""

from dataclasses import dataclass, field
import unicodedata

from .alphabet import MARKER_RE
from .errors import LexiconError

RESERVED_SLOTS = (
    "infinitive",
    "present",
    "imperative",
    "past-participle",
    "transgressive",
    "passive-participle",
)

_KEYWORDS = ("ENDINGS", "PARADIGM", "ENTRY")


@dataclass(frozen=True)
class EndingRow:
    tag: str
    slot: str = None
    marker: str = None
    ending: str = ""


@dataclass(frozen=True)
class Entry:
    lemma: str
    paradigm: str
    base: str = None
    stems: tuple = ()
    exceptions: tuple = ()
    line: int = 0

    def stem_map(self):
        return dict(self.stems)

    def exception_map(self):
        return dict(self.exceptions)


@dataclass(frozen=True)
class ExpandedForm:
    """One cell of an entry's paradigm.

    lexical is the full lexical string for the rules; exception is the
    pregiven surface form when the entry overrides this tag, else None.
    """

    tag: str
    lexical: str
    exception: str = None


def build_lexical_string(stem, marker, ending):
    """Concatenate stem, marker, and ending into one lexical string."""
    parts = [stem]
    if marker:
        parts.append(marker)
    if ending:
        parts.append(ending)
    return "".join(parts)


class Lexicon:
    def __init__(self, endings, paradigms, entries):
        self.endings = endings
        self.paradigms = paradigms
        self.entries = tuple(entries)
        self.by_lemma = {}
        for entry in self.entries:
            self.by_lemma.setdefault(entry.lemma, []).append(entry)

    def paradigm_rows(self, name):
        return [row for block in self.paradigms[name] for row in self.endings[block]]

    def expand(self, entry):
        """All (tag, lexical string) cells of an entry, row order."""
        exceptions = entry.exception_map()
        stems = entry.stem_map()
        forms = []
        for row in self.paradigm_rows(entry.paradigm):
            stem = entry.base if row.slot is None else stems[row.slot]
            lexical = build_lexical_string(stem, row.marker, row.ending)
            forms.append(ExpandedForm(row.tag, lexical, exceptions.get(row.tag)))
        return forms

    def expand_all(self):
        for entry in self.entries:
            for form in self.expand(entry):
                yield entry, form


def _row_fields(tokens, line):
    tag = tokens[0]
    slot = marker = None
    ending = ""
    i = 1
    if i < len(tokens) and tokens[i].startswith("@"):
        slot = tokens[i][1:]
        if slot not in RESERVED_SLOTS:
            raise LexiconError(f"unknown stem slot @{slot}", line)
        i += 1
    if i < len(tokens) and MARKER_RE.fullmatch(tokens[i]):
        marker = "^" + tokens[i][1:].upper()
        i += 1
    if i < len(tokens):
        ending = tokens[i]
        i += 1
    if i < len(tokens):
        raise LexiconError(f"too many fields in ending row for {tag!r}", line)
    return EndingRow(tag, slot, marker, ending)


def parse_lexicon(text):
    text = unicodedata.normalize("NFC", text)
    endings = {}
    paradigms = {}
    entries = []
    seen_entries = set()
    current = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("!", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]

        if head == "ENDINGS":
            if len(tokens) != 2:
                raise LexiconError("ENDINGS takes exactly one name", lineno)
            name = tokens[1]
            if name in endings:
                raise LexiconError(f"duplicate ENDINGS name {name!r}", lineno)
            endings[name] = []
            current = name

        elif head == "PARADIGM":
            if len(tokens) < 4 or tokens[2] != "=":
                raise LexiconError(
                    "expected: PARADIGM name = endings-name ...", lineno)
            name = tokens[1]
            if name in paradigms:
                raise LexiconError(f"duplicate PARADIGM name {name!r}", lineno)
            blocks = tuple(tokens[3:])
            for block in blocks:
                if block not in endings:
                    raise LexiconError(f"unknown ENDINGS name {block!r}", lineno)
            rows = [row for block in blocks for row in endings[block]]
            tags = [row.tag for row in rows]
            if len(tags) != len(set(tags)):
                dup = next(t for t in tags if tags.count(t) > 1)
                raise LexiconError(
                    f"paradigm {name!r} has duplicate tag {dup!r}", lineno)
            slotted = [row.slot is not None for row in rows]
            if any(slotted) and not all(slotted):
                raise LexiconError(
                    f"paradigm {name!r} mixes slotted and plain rows", lineno)
            paradigms[name] = blocks
            current = None

        elif head == "ENTRY":
            if len(tokens) < 3:
                raise LexiconError("expected: ENTRY lemma paradigm ...", lineno)
            lemma, paradigm = tokens[1], tokens[2]
            if paradigm not in paradigms:
                raise LexiconError(f"unknown paradigm {paradigm!r}", lineno)
            if (lemma, paradigm) in seen_entries:
                raise LexiconError(
                    f"duplicate entry {lemma!r} in paradigm {paradigm!r}", lineno)
            seen_entries.add((lemma, paradigm))
            rows = [row for block in paradigms[paradigm]
                    for row in endings[block]]
            tags = {row.tag for row in rows}
            slots = {row.slot for row in rows if row.slot is not None}
            base = None
            stems = {}
            exceptions = {}
            for tok in tokens[3:]:
                if "=" in tok:
                    key, _, value = tok.partition("=")
                    if key in RESERVED_SLOTS:
                        if not slots:
                            raise LexiconError(
                                f"paradigm {paradigm!r} takes a base form, "
                                f"not stem slots", lineno)
                        if key in stems:
                            raise LexiconError(f"duplicate stem {key!r}", lineno)
                        if not value:
                            raise LexiconError(f"empty stem {key!r}", lineno)
                        stems[key] = value
                    else:
                        if key not in tags:
                            raise LexiconError(
                                f"exception tag {key!r} not in paradigm "
                                f"{paradigm!r}", lineno)
                        if key in exceptions:
                            raise LexiconError(
                                f"duplicate exception {key!r}", lineno)
                        if not value:
                            raise LexiconError(f"empty exception {key!r}", lineno)
                        exceptions[key] = value
                else:
                    if base is not None:
                        raise LexiconError("more than one base form", lineno)
                    base = tok
            if slots:
                if base is not None:
                    raise LexiconError(
                        f"paradigm {paradigm!r} takes stem slots, not a "
                        f"base form", lineno)
                missing = slots - set(stems)
                if missing:
                    raise LexiconError(
                        f"missing stems: {', '.join(sorted(missing))}", lineno)
                unused = set(stems) - slots
                if unused:
                    raise LexiconError(
                        f"unused stems: {', '.join(sorted(unused))}", lineno)
            elif base is None:
                raise LexiconError("missing base form", lineno)
            entries.append(Entry(
                lemma, paradigm, base,
                tuple(sorted(stems.items())),
                tuple(sorted(exceptions.items())),
                lineno,
            ))
            current = None

        else:
            if current is None:
                raise LexiconError(
                    f"unexpected line outside an ENDINGS block: {line!r}", lineno)
            endings[current].append(_row_fields(tokens, lineno))

    for name, rows in endings.items():
        if not rows:
            raise LexiconError(f"ENDINGS block {name!r} has no rows")
    return Lexicon(endings, paradigms, entries)


@dataclass(frozen=True)
class ValidationProblem:
    lemma: str
    paradigm: str
    tag: str
    lexical: str
    surfaces: tuple
    error: str = None


@dataclass(frozen=True)
class ValidationReport:
    forms: int
    exceptions: int
    problems: tuple

    @property
    def ok(self):
        return not self.problems


def validate_lexicon(lexicon, rules):
    """Check that every expanded form realizes to exactly one surface.

    Exception forms are pregiven and skipped.  Returns a report with
    counts and one problem record per form whose realization is not a
    single surface string.
    """
    forms = 0
    exceptions = 0
    problems = []
    for entry, form in lexicon.expand_all():
        if form.exception is not None:
            exceptions += 1
            continue
        forms += 1
        try:
            surfaces = rules.generate_from_text(form.lexical)
        except Exception as exc:
            problems.append(ValidationProblem(
                entry.lemma, entry.paradigm, form.tag, form.lexical,
                (), str(exc)))
            continue
        if len(surfaces) != 1:
            problems.append(ValidationProblem(
                entry.lemma, entry.paradigm, form.tag, form.lexical,
                tuple(sorted(surfaces))))
    return ValidationReport(forms, exceptions, tuple(problems))
