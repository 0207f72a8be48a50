from pathlib import Path

import pytest

from sisa import load_lexicon, load_rules, load_wordlists

FIXTURES = Path(__file__).parent / "fixtures"
REPO = Path(__file__).resolve().parent.parent
DEFAULT_RULES = REPO / "rules" / "sisa_default.rules"
LISTS_DIR = REPO / "lists"


@pytest.fixture(scope="session")
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def wordlists():
    return load_wordlists(LISTS_DIR)


@pytest.fixture(scope="session")
def fixture_lexicon():
    return load_lexicon(FIXTURES / "lexicon.tsv")


@pytest.fixture(scope="session")
def default_rules(wordlists):
    return load_rules(DEFAULT_RULES, wordlists)
