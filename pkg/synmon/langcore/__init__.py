"""Regular expressions and classical DFAs: the substrate every variety builds on."""
from synmon.langcore.automata import (
    complement,
    dfa_from_json,
    dfa_to_dot,
    dfa_to_json,
    distinguishing_word,
    inclusion_counterexample,
    language_equal,
    language_included,
    left_derivative,
    membership,
    minimize,
    reverse_language,
    right_derivative,
    state_language,
    words_up_to,
)
from synmon.langcore.models import Dfa, Regex, Word, normalize_alphabet
from synmon.langcore.regex import compile_regex, parse_regex, regex_to_min_dfa
