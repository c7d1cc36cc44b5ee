import pytest

from reqlens.lexicon import (
    FEATURE_VALUES,
    LexiconError,
    feature_values,
    freeze_features,
    load_lexicon,
    normalise_surface,
)

SAMPLE = """\
# determiners
a\tDET\tnumber=sg
the\tDET\tnumber=any
system\tNOUN\tnumber=sg
details\tNOUN\tnumber=pl
staff members\tNOUN\tnumber=pl
of\tOF
park\tNOUN\tnumber=sg
park\tVERB\tnumber=pl
park\tVERB\tnumber=pl
"""


@pytest.fixture
def lexicon(tmp_path):
    path = tmp_path / "lexicon.tsv"
    path.write_text(SAMPLE)
    return load_lexicon(path)


def test_load_parses_entries_and_features(lexicon):
    (entry,) = lexicon.lookup("a")
    assert entry.pos == "DET"
    assert feature_values(entry.features, "number") == frozenset({"sg"})
    (entry,) = lexicon.lookup("details")
    assert feature_values(entry.features, "number") == frozenset({"pl"})


def test_any_and_missing_features_mean_the_full_set(lexicon):
    (the,) = lexicon.lookup("the")
    assert feature_values(the.features, "number") == FEATURE_VALUES["number"]
    (of,) = lexicon.lookup("of")
    assert feature_values(of.features, "number") == FEATURE_VALUES["number"]


def test_lookup_is_case_insensitive(lexicon):
    assert lexicon.lookup("System")[0].pos == "NOUN"
    assert lexicon.lookup("SYSTEM")[0].pos == "NOUN"


def test_homographs_are_all_returned_and_duplicates_collapse(lexicon):
    entries = lexicon.lookup("park")
    assert [e.pos for e in entries] == ["NOUN", "VERB"]
    assert lexicon.size == 8


def test_out_of_vocabulary_words_become_nouns(lexicon):
    (entry,) = lexicon.lookup("flux")
    assert entry.oov
    assert entry.pos == "NOUN"
    assert feature_values(entry.features, "number") == FEATURE_VALUES["number"]
    assert not lexicon.lookup("system")[0].oov


def test_compound_surfaces_survive_lookup(lexicon):
    (entry,) = lexicon.lookup("Staff  Members")
    assert entry.pos == "NOUN"
    assert not entry.oov


def test_normalise_surface_handles_curly_apostrophes():
    assert normalise_surface("Patient’s") == "patient's"
    assert normalise_surface("  two\n words ") == "two words"


def test_load_order_does_not_matter(tmp_path):
    forward = tmp_path / "f.tsv"
    backward = tmp_path / "b.tsv"
    lines = ["park\tNOUN\tnumber=sg", "park\tVERB\tnumber=pl"]
    forward.write_text("\n".join(lines) + "\n")
    backward.write_text("\n".join(reversed(lines)) + "\n")
    assert load_lexicon(forward).entries == load_lexicon(backward).entries


def test_comments_and_blank_lines_are_ignored(tmp_path):
    path = tmp_path / "lex.tsv"
    path.write_text("\n# full comment\nsystem\tNOUN\tnumber=sg  # trailing\n\n")
    assert load_lexicon(path).size == 1


@pytest.mark.parametrize(
    "line",
    [
        "justoneword",
        "word\t",
        "word\tNOUN\tnumber=sg\textra",
        "word\tNOUN\tgender=m",
        "word\tNOUN\tnumber=dual",
        "word\tNOUN\tnumber",
    ],
)
def test_malformed_lines_report_path_and_line(tmp_path, line):
    path = tmp_path / "lex.tsv"
    path.write_text("a\tDET\tnumber=sg\n" + line + "\n")
    with pytest.raises(LexiconError, match=r"lex\.tsv:2"):
        load_lexicon(path)


def test_freeze_features_sorts_names():
    frozen = freeze_features({"number": frozenset({"sg"})})
    assert frozen == (("number", frozenset({"sg"})),)
