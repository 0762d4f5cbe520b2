"""Analysis: a precomputed index over every form a lexicon generates.

The index maps each surface form to its analyses (lemma, paradigm, tag)
and each lemma and tag back to the surface forms, so lookups in both
directions are dictionary reads.  It records hashes of the rule and
lexicon texts it was built from, which lets a saved index be checked
for staleness before use.
"""

from collections import Counter
from dataclasses import dataclass
import hashlib
import re
import unicodedata

from .errors import AnalyzerError

INDEX_MAGIC = "czmorph-index 1"

_WORD_RE = re.compile(r"[^\W\d_]+")


def _fold(s):
    return unicodedata.normalize("NFC", s).casefold()


def text_hash(text):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True, order=True)
class Analysis:
    lemma: str
    paradigm: str
    tag: str
    via_exception: bool = False


class FormIndex:
    def __init__(self, rows, rules_hash="", lexicon_hash=""):
        self.rules_hash = rules_hash
        self.lexicon_hash = lexicon_hash
        self._rows = tuple(sorted(set(rows)))
        self._by_form = {}
        self._by_lemma_tag = {}
        self._lemmas = set()
        for form, lemma, paradigm, tag, via in self._rows:
            analysis = Analysis(lemma, paradigm, tag, via)
            self._by_form.setdefault(form, []).append(analysis)
            self._by_lemma_tag.setdefault((lemma, tag), set()).add(form)
            self._lemmas.add(lemma)
        for form in self._by_form:
            self._by_form[form] = tuple(sorted(self._by_form[form]))

    def __len__(self):
        return len(self._rows)

    @property
    def forms(self):
        return tuple(sorted(self._by_form))

    def analyze(self, form):
        """All analyses of a surface form, sorted by lemma, paradigm, tag."""
        return list(self._by_form.get(_fold(form), ()))

    def generate(self, lemma, tag):
        """Surface forms for a lemma and tag, across all its entries."""
        lemma = _fold(lemma)
        if lemma not in self._lemmas:
            raise AnalyzerError(f"unknown lemma {lemma!r}")
        forms = self._by_lemma_tag.get((lemma, tag))
        if forms is None:
            raise AnalyzerError(f"lemma {lemma!r} has no form tagged {tag!r}")
        return sorted(forms)

    def save(self, path):
        lines = [INDEX_MAGIC,
                 f"rules {self.rules_hash}",
                 f"lexicon {self.lexicon_hash}"]
        for form, lemma, paradigm, tag, via in self._rows:
            lines.append("\t".join(
                (form, lemma, paradigm, tag, "1" if via else "0")))
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
        if not lines or lines[0] != INDEX_MAGIC:
            raise AnalyzerError(f"{path}: not a czmorph index file")
        if len(lines) < 3 or not lines[1].startswith("rules ") \
                or not lines[2].startswith("lexicon "):
            raise AnalyzerError(f"{path}: malformed index header")
        rules_hash = lines[1].split(" ", 1)[1]
        lexicon_hash = lines[2].split(" ", 1)[1]
        rows = []
        for lineno, line in enumerate(lines[3:], 4):
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 5 or parts[4] not in ("0", "1"):
                raise AnalyzerError(f"{path}: bad index row at line {lineno}")
            rows.append((parts[0], parts[1], parts[2], parts[3],
                         parts[4] == "1"))
        return cls(rows, rules_hash, lexicon_hash)


def build_index(rules, lexicon, rules_text="", lexicon_text=""):
    """Index every form the lexicon generates under the given rules.

    Exception forms are indexed as written; all other cells are realized
    through the rules, and every admitted surface is indexed.
    """
    rows = []
    for entry, form in lexicon.expand_all():
        if form.exception is not None:
            rows.append((_fold(form.exception), entry.lemma, entry.paradigm,
                         form.tag, True))
            continue
        for surface in rules.generate_from_text(form.lexical):
            rows.append((surface, entry.lemma, entry.paradigm,
                         form.tag, False))
    return FormIndex(rows,
                     text_hash(rules_text) if rules_text else "",
                     text_hash(lexicon_text) if lexicon_text else "")


def tokenize_words(text):
    """Word tokens of a text, casefolded."""
    return [_fold(m.group()) for m in _WORD_RE.finditer(text)]


def coverage(index, words):
    """Coverage of an analyzer over a token list.

    Returns token and type counts with their analyzed ratios, the most
    frequent unknown forms, and a flag for the empty corpus.
    """
    unknown = Counter()
    known = set()
    analyzed = 0
    total = 0
    for word in words:
        total += 1
        if word in known:
            analyzed += 1
        elif word in unknown:
            unknown[word] += 1
        elif index.analyze(word):
            known.add(word)
            analyzed += 1
        else:
            unknown[word] += 1
    top = sorted(unknown.items(), key=lambda kv: (-kv[1], kv[0]))[:10]
    types = len(known) + len(unknown)
    return {
        "tokens": total,
        "analyzed": analyzed,
        "ratio": (analyzed / total) if total else 0.0,
        "types": types,
        "types_analyzed": len(known),
        "type_ratio": (len(known) / types) if types else 0.0,
        "top_unknown": top,
        "empty": total == 0,
    }
