# test_dautomata.py
import json

import pytest

from synmon.dautomata import (
    CapacityLimits,
    automaton_to_csv,
    automaton_to_dot,
    automaton_to_json,
    automaton_to_table,
    check_reachable_simple,
    evaluate,
    linear_lifting,
    minimal_d_automaton,
    powerset_lifting,
    reduce_linear_automaton,
    structure_violations,
)
from synmon.errors import CapacityError
from synmon.freemon import PointedBit, Variety, eval_language, parse_free_elem
from synmon.langcore import compile_regex, words_up_to
from synmon.langcore.models import Dfa

KINDS = ["set", "pos", "pset", "inv", "jsl", "vect"]
REGEXES = ["(ab)*", "(a|b)*a(a|b)*", "b*(ab*ab*)*", "∅", "(a|b)*", "a*b*", "(a|b)*abb"]


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("regex", REGEXES)
def test_min_automaton_is_reachable_simple_and_well_formed(kind, regex):
    automaton = minimal_d_automaton(Variety.of(kind), compile_regex(regex, "ab"))
    report = check_reachable_simple(automaton)
    assert report.reachable and report.simple, report
    assert structure_violations(automaton) == []


@pytest.mark.parametrize("kind, text", [
    ("set", "abab"),
    ("pos", "ba"),
    ("pset", "_|_"),
    ("pset", "ab"),
    ("inv", "~aab"),
    ("jsl", "{a,ab,abab}"),
    ("jsl", "{}"),
    ("vect", "ab+abab+b"),
])
def test_min_automaton_accepts_the_language(kind, text):
    variety = Variety.of(kind)
    dfa = compile_regex("(ab)*", "ab")
    element = parse_free_elem(variety, text, "ab")
    assert evaluate(minimal_d_automaton(variety, dfa), element) == eval_language(variety, dfa, element)


def test_pos_order_is_language_inclusion():
    automaton = minimal_d_automaton(Variety.of("pos"), compile_regex("(a|b)*a(a|b)*", "ab"))
    assert automaton.order == ((True, True), (False, True))


def test_pset_uses_the_sink_as_basepoint():
    automaton = minimal_d_automaton(Variety.of("pset"), compile_regex("(ab)*", "ab"))
    assert automaton.size == 3
    assert automaton.output[automaton.bottom] == PointedBit.BOTTOM
    assert automaton.label(automaton.bottom) == "⊥"


def test_pset_adjoins_a_basepoint_for_the_full_language():
    automaton = minimal_d_automaton(Variety.of("pset"), compile_regex("(a|b)*", "ab"))
    assert automaton.size == 2
    assert automaton.bottom == 1
    assert check_reachable_simple(automaton).reachable


def test_inv_doubles_the_states():
    automaton = minimal_d_automaton(Variety.of("inv"), compile_regex("(ab)*", "ab"))
    assert automaton.size == 6
    assert all(automaton.involution[automaton.involution[q]] == q for q in range(6))


def test_jsl_reduction_of_a_star():
    variety = Variety.of("jsl")
    dfa = compile_regex("a*", "ab")
    lifted = powerset_lifting(variety, dfa)
    assert lifted.size == 4
    reduced = minimal_d_automaton(variety, dfa)
    assert reduced.size == 2
    assert not check_reachable_simple(lifted).simple


def test_jsl_guard():
    dfa = compile_regex("(a|b)*abb", "ab")
    with pytest.raises(CapacityError) as error:
        powerset_lifting(Variety.of("jsl"), dfa, CapacityLimits(max_jsl_states=8))
    assert error.value.exit_code == 3


def test_vect_even_a():
    automaton = minimal_d_automaton(Variety.of("vect", 2), compile_regex("b*(ab*ab*)*", "ab"))
    assert automaton.size == 2
    assert automaton.matrices["a"] == ((0, 1), (1, 0))
    assert automaton.matrices["b"] == ((1, 0), (0, 1))


def test_vect_reduction_drops_a_redundant_state():
    # states 1 and 2 are equivalent, so the lifting is not simple
    dfa = Dfa(alphabet="ab", states=3, initial=0, finals=[1, 2], trans=[[1, 2], [1, 1], [2, 2]])
    variety = Variety.of("vect", 2)
    lifted = linear_lifting(variety, dfa)
    report = check_reachable_simple(lifted)
    assert report.reachable and not report.simple
    assert report.observable_size == 2
    reduced = reduce_linear_automaton(lifted)
    assert reduced.size == 2
    for word in words_up_to("ab", 4):
        element = parse_free_elem(variety, word, "ab")
        assert evaluate(reduced, element) == evaluate(lifted, element)


def test_vect_dimension_guard():
    with pytest.raises(CapacityError):
        linear_lifting(Variety.of("vect", 3), compile_regex("(a|b)*abb", "ab"), CapacityLimits(max_dim=3))


def test_empty_language_in_vect_has_dimension_zero():
    automaton = minimal_d_automaton(Variety.of("vect", 2), compile_regex("∅", "ab"))
    assert automaton.size == 0
    assert evaluate(automaton, parse_free_elem(automaton.variety, "ab", "ab")) == 0


def test_exports():
    automaton = minimal_d_automaton(Variety.of("pos"), compile_regex("(a|b)*a(a|b)*", "ab"))
    data = json.loads(automaton_to_json(automaton, seed=7))
    assert data["seed"] == 7
    assert data["size"] == 2
    assert "≤" in automaton_to_table(automaton)
    assert automaton_to_dot(automaton).startswith("digraph")
    assert automaton_to_csv(automaton).splitlines()[0].startswith("state")
