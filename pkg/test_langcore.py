# test_langcore.py
import pytest

from synmon.cli.corpus import load_corpus
from synmon.errors import AlphabetError, DfaFormatError, RegexSyntaxError
from synmon.langcore import (
    complement,
    compile_regex,
    dfa_from_json,
    dfa_to_dot,
    dfa_to_json,
    distinguishing_word,
    language_equal,
    language_included,
    left_derivative,
    minimize,
    parse_regex,
    reverse_language,
    right_derivative,
    words_up_to,
)
from synmon.langcore.automata import inclusion_counterexample, state_included
from synmon.langcore.models import Dfa

CORPUS = load_corpus()
CORPUS_IDS = [entry.name for entry in CORPUS]


def accepted(dfa, max_length=5):
    return [w for w in words_up_to(dfa.alphabet, max_length) if dfa.accepts(w)]


def test_words_up_to_is_length_lex():
    assert list(words_up_to("ab", 2)) == ["", "a", "b", "aa", "ab", "ba", "bb"]


@pytest.mark.parametrize("regex, states", [
    ("∅", 1),
    ("ε", 2),
    ("()", 2),
    ("(a|b)*", 1),
    ("(ab)*", 3),
    ("b*(ab*ab*)*", 2),
    ("(a|b)*abb", 4),
])
def test_minimal_state_counts(regex, states):
    assert compile_regex(regex, "ab").states == states


def test_ab_star_membership():
    dfa = compile_regex("(ab)*", "ab")
    assert accepted(dfa, 4) == ["", "ab", "abab"]
    assert dfa.initial == 0 and dfa.minimal


def test_whitespace_is_ignored():
    assert language_equal(compile_regex(" ( a b ) * ", "ab"), compile_regex("(ab)*", "ab"))


def test_syntax_error_carries_position():
    with pytest.raises(RegexSyntaxError) as error:
        parse_regex("((", "ab")
    assert error.value.position == 2
    assert error.value.exit_code == 2


@pytest.mark.parametrize("text", ["a|", "*a", "(a", "a)", ""])
def test_malformed_regexes(text):
    with pytest.raises(RegexSyntaxError):
        parse_regex(text, "ab")


def test_letter_outside_alphabet():
    with pytest.raises(AlphabetError):
        compile_regex("ac", "ab")


@pytest.mark.parametrize("alphabet", ["", "aa", "a*", ["ab"]])
def test_bad_alphabets(alphabet):
    with pytest.raises(AlphabetError):
        compile_regex("a", alphabet)


def test_minimize_is_canonical():
    # 4 states, two of them equivalent accepting sinks
    dfa = Dfa(alphabet="ab", states=4, initial=0, finals=[1, 2], trans=[[1, 2], [1, 1], [2, 2], [3, 3]])
    minimal = minimize(dfa)
    assert minimal.states == 2
    assert minimal.model_dump() == compile_regex("(a|b)(a|b)*", "ab").model_dump()


def test_derivatives():
    dfa = compile_regex("(ab)*", "ab")
    assert language_equal(left_derivative(dfa, "a"), compile_regex("b(ab)*", "ab"))
    assert language_equal(right_derivative(dfa, "b"), compile_regex("(ab)*a", "ab"))


def test_complement_and_reverse():
    dfa = compile_regex("ab", "ab")
    assert not complement(dfa).accepts("ab")
    assert complement(dfa).accepts("")
    assert accepted(reverse_language(dfa)) == ["ba"]
    assert language_equal(reverse_language(reverse_language(dfa)), dfa)


def test_distinguishing_word_is_shortest():
    assert distinguishing_word(compile_regex("a*", "ab"), compile_regex("(aa)*", "ab")) == "a"
    assert distinguishing_word(compile_regex("(ab)*", "ab"), compile_regex("(ab)*", "ab")) is None


def test_inclusion():
    contains_a = compile_regex("(a|b)*a(a|b)*", "ab")
    starts_a = compile_regex("a(a|b)*", "ab")
    assert language_included(starts_a, contains_a)
    assert not language_included(contains_a, starts_a)
    assert inclusion_counterexample(contains_a, starts_a) == "ba"


def test_state_inclusion_order():
    dfa = compile_regex("(a|b)*a(a|b)*", "ab")
    assert state_included(dfa, 0, 1)
    assert not state_included(dfa, 1, 0)


def test_alphabet_mismatch():
    with pytest.raises(AlphabetError):
        language_equal(compile_regex("a", "ab"), compile_regex("a", "ac"))


def test_json_round_trip_and_errors():
    dfa = compile_regex("(ab)*", "ab")
    assert language_equal(dfa_from_json(dfa_to_json(dfa)), dfa)
    with pytest.raises(DfaFormatError):
        dfa_from_json("{not json")
    with pytest.raises(DfaFormatError):
        dfa_from_json('{"alphabet": "ab", "states": 1, "initial": 0, "finals": [], "trans": [[0]]}')


def test_dot_export():
    dot = dfa_to_dot(compile_regex("a", "ab"))
    assert dot.startswith("digraph dfa {")
    assert "doublecircle" in dot


def corpus_dfa(entry):
    return compile_regex(entry.regex, entry.alphabet)


@pytest.mark.parametrize("entry", CORPUS, ids=CORPUS_IDS)
def test_minimize_is_idempotent(entry):
    dfa = corpus_dfa(entry)
    again = minimize(dfa.model_copy(update={"minimal": False}))
    assert again.model_dump() == dfa.model_dump()
    assert minimize(again).model_dump() == again.model_dump()
    # two interleaved copies of every state collapse back to the same canonical form
    n = dfa.states
    doubled = Dfa(
        alphabet=dfa.alphabet,
        states=2 * n,
        initial=dfa.initial,
        finals=list(dfa.finals) + [n + q for q in dfa.finals],
        trans=[[n + t for t in row] for row in dfa.trans] + [list(row) for row in dfa.trans],
    )
    assert minimize(doubled).model_dump() == dfa.model_dump()


@pytest.mark.parametrize("entry", CORPUS, ids=CORPUS_IDS)
def test_reverse_is_an_involution(entry):
    dfa = corpus_dfa(entry)
    assert reverse_language(reverse_language(dfa)).model_dump() == dfa.model_dump()
    mirrored = reverse_language(dfa)
    for word in words_up_to(dfa.alphabet, 6):
        assert mirrored.accepts(word) == dfa.accepts(word[::-1])


@pytest.mark.parametrize("entry", CORPUS, ids=CORPUS_IDS)
@pytest.mark.parametrize("letter", ["a", "b"])
def test_reversal_swaps_left_and_right_derivatives(entry, letter):
    dfa = corpus_dfa(entry)
    assert language_equal(
        reverse_language(left_derivative(dfa, letter)),
        right_derivative(reverse_language(dfa), letter),
    )


@pytest.mark.parametrize("entry", CORPUS, ids=CORPUS_IDS)
def test_membership_through_left_derivatives(entry):
    dfa = corpus_dfa(entry)
    residuals = {"": dfa}
    for word in words_up_to(dfa.alphabet, 8):
        if word:
            residuals[word] = left_derivative(residuals[word[:-1]], word[-1])
        assert residuals[word].accepts("") == dfa.accepts(word)


@pytest.mark.parametrize("entry", CORPUS, ids=CORPUS_IDS)
def test_state_count_is_the_number_of_residuals(entry):
    dfa = corpus_dfa(entry)
    residuals = {"": dfa}
    for word in words_up_to(dfa.alphabet, dfa.states):
        if word:
            residuals[word] = left_derivative(residuals[word[:-1]], word[-1])
    assert len({d.model_dump_json() for d in residuals.values()}) == dfa.states


@pytest.mark.parametrize("regex, letter, expected", [
    ("(ab)*", "b", "∅"),
    ("(ab)*", "a", "b(ab)*"),
])
def test_left_derivative_examples(regex, letter, expected):
    assert language_equal(left_derivative(compile_regex(regex, "ab"), letter), compile_regex(expected, "ab"))


@pytest.mark.parametrize("regex, letter, expected", [
    ("(ab)*", "a", "∅"),
    ("(ab)*", "b", "(ab)*a"),
])
def test_right_derivative_examples(regex, letter, expected):
    assert language_equal(right_derivative(compile_regex(regex, "ab"), letter), compile_regex(expected, "ab"))


@pytest.mark.parametrize("regex, expected", [
    ("(ab)*", "(ba)*"),
    ("a(a|b)*", "(a|b)*a"),
    ("∅", "∅"),
])
def test_reverse_examples(regex, expected):
    assert language_equal(reverse_language(compile_regex(regex, "ab")), compile_regex(expected, "ab"))
