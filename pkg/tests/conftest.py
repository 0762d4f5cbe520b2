import pytest

from czmorph.analyzer import build_index
from czmorph.czech import builtin_lexicon_text, builtin_rules_text, ruleset
from czmorph.lexicon import parse_lexicon


@pytest.fixture(scope="session")
def czech_rules():
    return ruleset()


@pytest.fixture(scope="session")
def czech_lexicon():
    return parse_lexicon(builtin_lexicon_text())


@pytest.fixture(scope="session")
def czech_index(czech_rules, czech_lexicon):
    return build_index(
        czech_rules,
        czech_lexicon,
        rules_text=builtin_rules_text(),
        lexicon_text=builtin_lexicon_text(),
    )
