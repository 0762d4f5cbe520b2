"""Two-level morphology toolkit with a bundled Czech rule program.

Parallel lexical/surface rules compile into finite automata that run in
both directions: generation (lexical string to surface forms) and
analysis (surface form to lemma and tag, through a precomputed index).
"""

from .alphabet import Alphabet, parse_alphabet, tokenize
from .analyzer import (
    Analysis,
    FormIndex,
    build_index,
    coverage,
    tokenize_words,
)
from .automata import Conflict, compile_rule, detect_conflicts, dfa_equivalent
from .czech import (
    AlternationEntry,
    alternation_table,
    builtin_alphabet,
    census,
    realize,
    ruleset,
)
from .engine import RuleSet, TraceEntry, surface_of
from .errors import (
    AlphabetError,
    AnalyzerError,
    CzmorphError,
    LexiconError,
    PairStringError,
    RuleError,
)
from .kernel import BACKEND
from .lexicon import (
    Entry,
    ExpandedForm,
    Lexicon,
    build_lexical_string,
    parse_lexicon,
    validate_lexicon,
)
from .rules import TwoLevelRule, parse_rules

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "AlphabetError",
    "AlternationEntry",
    "Analysis",
    "AnalyzerError",
    "BACKEND",
    "Conflict",
    "CzmorphError",
    "Entry",
    "ExpandedForm",
    "FormIndex",
    "Lexicon",
    "LexiconError",
    "PairStringError",
    "RuleError",
    "RuleSet",
    "TraceEntry",
    "TwoLevelRule",
    "alternation_table",
    "build_index",
    "build_lexical_string",
    "builtin_alphabet",
    "census",
    "compile_rule",
    "coverage",
    "detect_conflicts",
    "dfa_equivalent",
    "parse_alphabet",
    "parse_lexicon",
    "parse_rules",
    "realize",
    "ruleset",
    "surface_of",
    "tokenize",
    "tokenize_words",
    "validate_lexicon",
    "__version__",
]
