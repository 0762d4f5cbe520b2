"""Bundled Czech rule program and alphabet.

The package ships a ready-to-use description of Czech surface phonology:
an alphabet with the marker inventory, a 35-rule program (deletions,
alternations, spelling adjustments, and one technical rule for the ch
digraph), and a table of the consonant alternations the program covers.
"""

from dataclasses import dataclass
from importlib import resources

from .alphabet import Alphabet, parse_alphabet
from .engine import RuleSet

RULE_COUNT = 35
DELETION_RULES = 10
ALTERNATION_RULES = 18
SPELLING_RULES = 6
TECHNICAL_RULES = 1

# Rules that only exist to keep a digraph consistent, not to describe a
# phonological process of their own.
_TECHNICAL_NAMES = frozenset({"Deletion of h in ch -> š"})

_cache = {}


def _data_text(name):
    return resources.files("czmorph").joinpath("data", name).read_text("utf-8")


def builtin_alphabet_text():
    return _data_text("czech.alphabet")


def builtin_rules_text():
    return _data_text("czech.rules")


def builtin_lexicon_text():
    return _data_text("czech.lexicon")


def builtin_alphabet():
    if "alphabet" not in _cache:
        _cache["alphabet"] = parse_alphabet(builtin_alphabet_text())
    return _cache["alphabet"]


def ruleset():
    """The compiled bundled rule program (cached)."""
    if "ruleset" not in _cache:
        _cache["ruleset"] = RuleSet.from_text(builtin_alphabet(), builtin_rules_text())
    return _cache["ruleset"]


def realize(lexical_text):
    """All surface strings the bundled program admits for a lexical string."""
    return ruleset().generate_from_text(lexical_text)


def rule_category(name):
    if name in _TECHNICAL_NAMES:
        return "technical"
    if name.startswith("Deletion of"):
        return "deletion"
    if name.startswith("Spelling"):
        return "spelling"
    return "alternation"


def census():
    """Rule counts by category for the bundled program."""
    counts = {"deletion": 0, "alternation": 0, "spelling": 0, "technical": 0}
    for rule in ruleset().rules:
        counts[rule_category(rule.name)] += 1
    return counts


@dataclass(frozen=True)
class AlternationEntry:
    """One row of the alternation table.

    cluster and result describe the alternation itself (lexical letters
    against surface letters); example_lexical is a full lexical string
    whose unique realization is example_surface.
    """

    cluster: str
    process: str
    result: str
    productive: bool
    lemma: str
    example_lexical: str
    example_surface: str


_TABLE = (
    # Second palatalization: k/h/g/ch/r before e-type and i-type endings.
    AlternationEntry("kě", "second palatalization", "ce", True,
                     "matka", "mat^E2ka^2P1ě", "matce"),
    AlternationEntry("ki", "second palatalization", "ci", True,
                     "žák", "žák^2P0i", "žáci"),
    AlternationEntry("hě", "second palatalization", "ze", True,
                     "praha", "praha^2P1ě", "praze"),
    AlternationEntry("hi", "second palatalization", "zi", True,
                     "bůh", "bůh^2P0i", "bozi"),
    AlternationEntry("gě", "second palatalization", "ze", True,
                     "olga", "olga^2P1ě", "olze"),
    AlternationEntry("chě", "second palatalization", "še", True,
                     "moucha", "moucha^2P1ě", "mouše"),
    AlternationEntry("chi", "second palatalization", "ši", True,
                     "hoch", "hoch^2P0i", "hoši"),
    AlternationEntry("rě", "second palatalization", "ře", True,
                     "sestra", "sest^E2ra^2P1ě", "sestře"),
    AlternationEntry("ri", "second palatalization", "ři", True,
                     "doktor", "doktor^2P0i", "doktoři"),
    # First palatalization: vocatives, possessives, comparatives.
    AlternationEntry("ke", "first palatalization", "če", True,
                     "člověk", "člověk^1P0e", "člověče"),
    AlternationEntry("ki", "first palatalization", "či", True,
                     "matka", "mat^E2ka^1P1in", "matčin"),
    AlternationEntry("ké", "first palatalization", "čé", True,
                     "hořký", "hořký^1P2ejší", "hořčejší"),
    AlternationEntry("he", "first palatalization", "že", True,
                     "bůh", "bůh^1P0e", "bože"),
    AlternationEntry("gi", "first palatalization", "ži", True,
                     "olga", "olga^1P1in", "olžin"),
    AlternationEntry("ce", "first palatalization", "če", True,
                     "chlapec", "chlap^E1ec^1P0e", "chlapče"),
    AlternationEntry("re", "first palatalization", "ře", True,
                     "bratr", "bratr^1P0e", "bratře"),
    # Cluster palatalization in adjectives.
    AlternationEntry("ský", "cluster palatalization", "ští", True,
                     "kamarádský", "kamarádský^2P3í", "kamarádští"),
    AlternationEntry("cký", "cluster palatalization", "čtí", True,
                     "čacký", "čacký^2P3í", "čačtí"),
    AlternationEntry("čký", "cluster hardening", "ccí", True,
                     "žluťoučký", "žluťoučký^2P3í", "žluťouccí"),
    AlternationEntry("čký", "cluster palatalization", "čtě", True,
                     "žluťoučký", "žluťoučký^1P2ejší", "žluťoučtější"),
    # Unproductive assimilations in -it verbal nouns, selected by the
    # assimilating marker rather than by the ending alone.
    AlternationEntry("dě", "assimilation", "ze", False,
                     "sladit", "sladit^A2ění", "slazení"),
    AlternationEntry("tě", "assimilation", "ce", False,
                     "platit", "platit^A2ění", "placení"),
    AlternationEntry("sě", "assimilation", "še", False,
                     "prosit", "prosit^A2ění", "prošení"),
    AlternationEntry("zě", "assimilation", "že", False,
                     "kazit", "kazit^A2ění", "kažení"),
    AlternationEntry("stě", "assimilation", "ště", False,
                     "čistit", "čistit^A2ění", "čištění"),
    AlternationEntry("slě", "assimilation", "šle", False,
                     "myslit", "myslit^A2ění", "myšlení"),
    # Stem vowel shortening.
    AlternationEntry("ů", "shortening", "o", True,
                     "bůh", "bůh^N1a", "boha"),
    AlternationEntry("á", "shortening", "a", True,
                     "mráz", "mráz^N2u", "mrazu"),
    # Epenthesis in word-final clusters.
    AlternationEntry("0", "epenthesis", "e", True,
                     "chodba", "chod^E2ba^N1", "chodeb"),
    # Spelling adjustments.
    AlternationEntry("ďi", "spelling", "di", True,
                     "loď", "loďi", "lodi"),
    AlternationEntry("ťi", "spelling", "ti", True,
                     "chuť", "chuťi", "chuti"),
    AlternationEntry("ňě", "spelling", "ně", True,
                     "kůň", "kůň^N1ě", "koně"),
    AlternationEntry("sě", "spelling", "se", True,
                     "vosa", "vosa^2P1ě", "vose"),
    AlternationEntry("zě", "spelling", "ze", True,
                     "koza", "koza^2P1ě", "koze"),
    AlternationEntry("lě", "spelling", "le", True,
                     "škola", "škola^2P1ě", "škole"),
    AlternationEntry("čy", "spelling", "či", True,
                     "čiča", "čiča^N1y", "čiči"),
    AlternationEntry("te", "spelling", "tě", True,
                     "žlutý", "žlutý^1P2ejší", "žlutější"),
    AlternationEntry("bě", "spelling", "be", True,
                     "zlobit", "zlobit^A2ění", "zlobení"),
)


def alternation_table():
    """The consonant alternations and adjustments the program covers."""
    return _TABLE
