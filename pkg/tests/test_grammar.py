import pytest

from reqlens.grammar import (
    AGREE,
    Constraint,
    GrammarError,
    build_grammar,
    check_constraint,
    load_grammar,
    satisfies_constraints,
)
from reqlens.lexicon import FEATURE_VALUES, freeze_features

SAMPLE = """\
# toy grammar
%terminals NOUN VERB DET
%terminals PREP

S -> NP VP : agree(number, 0, 1) : head 1
NP -> DET NOUN : agree(number, 0, 1) : head 1
NP -> NOUN
VP -> VERB NP : head 0
VP -> VERB PP : head 0
PP -> PREP NP
"""

SG = freeze_features({"number": frozenset({"sg"})})
PL = freeze_features({"number": frozenset({"pl"})})
ANY = freeze_features({"number": FEATURE_VALUES["number"]})
EMPTY = freeze_features({})


@pytest.fixture
def grammar(tmp_path):
    path = tmp_path / "grammar.cfg"
    path.write_text(SAMPLE)
    return load_grammar(path)


def test_load_collects_rules_terminals_and_nonterminals(grammar):
    assert len(grammar.rules) == 6
    assert grammar.start_symbol == "S"
    assert grammar.terminals == {"NOUN", "VERB", "DET", "PREP"}
    assert grammar.nonterminals == {"S", "NP", "VP", "PP"}


def test_rule_indexes_follow_file_order(grammar):
    assert [r.rule_index for r in grammar.rules] == list(range(6))
    assert grammar.rules[2].rhs == ("NOUN",)


def test_rules_for_groups_by_lhs(grammar):
    assert [str(r) for r in grammar.rules_for("VP")] == ["VP -> VERB NP", "VP -> VERB PP"]
    assert grammar.rules_for("NOPE") == ()


def test_head_defaults_to_rightmost_symbol(grammar):
    pp = grammar.rules_for("PP")[0]
    assert pp.head_index == 1
    s = grammar.rules_for("S")[0]
    assert s.head_index == 1


def test_constraints_are_parsed(grammar):
    s = grammar.rules_for("S")[0]
    assert s.constraints == (Constraint(kind=AGREE, feature="number", arg_positions=(0, 1)),)
    assert grammar.rules_for("NP")[1].constraints == ()


def test_check_constraint_is_value_set_intersection():
    constraint = Constraint(kind=AGREE, feature="number", arg_positions=(0, 1))
    assert not check_constraint(constraint, [SG, PL])
    assert check_constraint(constraint, [SG, SG])
    assert check_constraint(constraint, [SG, ANY])
    assert check_constraint(constraint, [ANY, PL])
    assert check_constraint(constraint, [EMPTY, PL])  # missing feature = any


def test_check_constraint_over_three_positions():
    constraint = Constraint(kind=AGREE, feature="number", arg_positions=(0, 1, 2))
    assert check_constraint(constraint, [SG, ANY, SG])
    assert not check_constraint(constraint, [SG, ANY, PL])


def test_satisfies_constraints_requires_all(grammar):
    rule = grammar.rules_for("S")[0]
    assert satisfies_constraints(rule, [SG, SG])
    assert not satisfies_constraints(rule, [SG, PL])


@pytest.mark.parametrize(
    "rule, message",
    [
        ("S NP VP", "malformed rule"),
        ("S -> ", "non-empty right-hand side"),
        ("S -> NP : agree(case, 0, 1)", "unknown feature"),
        ("S -> NP VP : agree(number, 0)", "at least two positions"),
        ("S -> NP VP : agree(number, 1, 1)", "distinct"),
        ("S -> NP VP : agree(number, 0, 2)", "out of range"),
        ("S -> NP VP : head 2", "head index 2 out of range"),
        ("S -> NP VP : top 1", "unrecognised clause"),
    ],
)
def test_malformed_rules_report_line(tmp_path, rule, message):
    path = tmp_path / "g.cfg"
    path.write_text("%terminals NOUN\nNP -> NOUN\nVP -> NOUN\n" + rule + "\n")
    with pytest.raises(GrammarError, match=message) as err:
        load_grammar(path)
    assert "g.cfg:4" in str(err.value)


def test_undefined_symbol_names_symbol_and_line(tmp_path):
    path = tmp_path / "g.cfg"
    path.write_text("%terminals NOUN\nS -> NOUN\nS -> NP NOUN\n")
    with pytest.raises(GrammarError, match=r"g\.cfg:3.*'NP'"):
        load_grammar(path)


def test_terminal_cannot_be_a_lhs(tmp_path):
    path = tmp_path / "g.cfg"
    path.write_text("%terminals NOUN S\nS -> NOUN\n")
    with pytest.raises(GrammarError, match="declared terminal"):
        load_grammar(path)


def test_missing_start_symbol_is_rejected(tmp_path):
    path = tmp_path / "g.cfg"
    path.write_text("%terminals NOUN\nNP -> NOUN\n")
    with pytest.raises(GrammarError, match="start symbol"):
        load_grammar(path)


def test_build_grammar_rejects_undefined_symbols():
    from reqlens.grammar import GrammarRule

    rules = [GrammarRule(lhs="S", rhs=("X",), constraints=(), head_index=0, rule_index=0)]
    with pytest.raises(GrammarError, match="undefined symbol 'X'"):
        build_grammar(rules, {"NOUN"})
