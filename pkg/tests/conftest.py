import pytest

from reqlens.chart import parse
from reqlens.ingest import make_document, tokenize
from reqlens.pipeline import PipelineConfig, load_config

GOLDEN_SENTENCE = "A system requires entry of patient's information."
GOLDEN_TREE = (
    '(S (NP (DET "A") (NOUN "system")) (VP (VERB "requires") '
    '(NP (NP (NOUN "entry")) (PP (OF "of") (NP (POSSADJ "patient\'s") (NOUN "information"))))))'
)

DUNEDIN_SENTENCE = (
    "Dunedin Podiatry requires an information system that allows entry and "
    "retrieval of patient's details and their medical histories."
)
DUNEDIN_TERM_VALUES = {
    "Dunedin Podiatry",
    "information system",
    "entry",
    "retrieval",
    "details",
    "histories",
}


@pytest.fixture(scope="session")
def config() -> PipelineConfig:
    return load_config()


def parse_sentence(config: PipelineConfig, text: str):
    """Tokenise and chart-parse the first sentence of ``text``."""
    document = make_document("doc", "test", text)
    tokens = tokenize(document.sentences[0], config.compounds)
    return tokens, parse(tokens, config.grammar, config.lexicon)
