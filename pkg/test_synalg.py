# test_synalg.py
import json

import pytest

from synmon.errors import CapacityError, VarietyError
from synmon.dautomata import CapacityLimits
from synmon.freemon import Variety, lift_word, parse_free_elem
from synmon.langcore import compile_regex
from synmon.synalg import (
    KeyKind,
    ReportStatus,
    check_algebra_laws,
    congruence_oracle,
    congruence_witness,
    iso_as_quotients,
    oracle_quotient,
    render_csv,
    render_json,
    render_table,
    syntactic_algebra,
    verify_recognition,
    verify_transition_equivalence,
    word_span_rank,
)

AB_STAR = compile_regex("(ab)*", "ab")
EVEN_A = compile_regex("b*(ab*ab*)*", "ab")
CONTAINS_A = compile_regex("(a|b)*a(a|b)*", "ab")


def syn(kind, dfa, prime=None):
    return syntactic_algebra(Variety.of(kind, prime), dfa)


def label_of(algebra, text):
    u = parse_free_elem(algebra.variety, text, algebra.alphabet)
    return algebra.class_of(u)


def test_syntactic_monoid_of_ab_star():
    algebra = syn("set", AB_STAR)
    assert algebra.size == 6
    assert algebra.keyed_by == KeyKind.MAP
    words = [e.representative.word for e in algebra.elements]
    assert words == ["", "a", "b", "aa", "ab", "ba"]
    zero = label_of(algebra, "aa")
    assert all(algebra.mult[zero][x] == zero == algebra.mult[x][zero] for x in range(6))
    assert label_of(algebra, "bb") == zero
    assert label_of(algebra, "abab") == label_of(algebra, "ab")
    assert [algebra.output_map[i] for i in range(6)] == [1, 0, 0, 0, 1, 0]


@pytest.mark.parametrize("regex", ["∅", "(a|b)*"])
def test_trivial_languages_have_trivial_monoids(regex):
    algebra = syn("set", compile_regex(regex, "ab"))
    assert algebra.size == 1
    assert algebra.mult == ((0,),)


def test_even_a_is_cyclic_of_order_two():
    algebra = syn("set", EVEN_A)
    assert algebra.size == 2
    a, b = algebra.gen_map["a"], algebra.gen_map["b"]
    assert b == algebra.unit
    assert algebra.mult[a][a] == algebra.unit


def test_ordered_monoid_of_contains_a():
    algebra = syn("pos", CONTAINS_A)
    assert algebra.size == 2
    e, a = algebra.unit, algebra.gen_map["a"]
    assert algebra.order[e][a]
    assert not algebra.order[a][e]


def test_monoid_with_zero_of_ab_star():
    algebra = syn("pset", AB_STAR)
    assert algebra.size == 6
    assert algebra.elements[algebra.zero].representative.word == "aa"
    assert label_of(algebra, "_|_") == algebra.zero


def test_involution_monoid_of_ab_star():
    algebra = syn("inv", AB_STAR)
    assert algebra.size == 12
    for m in range(12):
        assert algebra.output_map[algebra.involution[m]] == 1 - algebra.output_map[m]
    assert label_of(algebra, "~ab") == algebra.involution[label_of(algebra, "ab")]


def test_idempotent_semiring_of_a_star():
    algebra = syn("jsl", compile_regex("a*", "ab"))
    assert algebra.size == 2
    assert label_of(algebra, "{}") == algebra.zero


def test_idempotent_semiring_absorbs_redundant_words():
    algebra = syn("jsl", AB_STAR)
    assert label_of(algebra, "{ab}") == label_of(algebra, "{ab,aabb}")
    assert label_of(algebra, "{ab,a}") != label_of(algebra, "{ab}")


def test_algebra_of_even_a_over_f2():
    algebra = syn("vect", EVEN_A, 2)
    assert algebra.size == 2
    assert algebra.keyed_by == KeyKind.MATRIX
    assert algebra.elements[0].key == (1, 0, 0, 1)
    assert algebra.elements[1].key == (0, 1, 1, 0)
    assert algebra.gen_coords["b"] == algebra.unit_coords == (1, 0)
    assert algebra.gen_coords["a"] == (0, 1)
    assert label_of(algebra, "aa") == (1, 0)
    assert label_of(algebra, "a+b") == (1, 1)


@pytest.mark.parametrize("kind", ["set", "pos", "pset", "inv", "jsl", "vect"])
@pytest.mark.parametrize("regex", ["(ab)*", "(a|b)*a(a|b)*", "b*(ab*ab*)*", "a*b*", "∅"])
def test_reports_pass(kind, regex):
    dfa = compile_regex(regex, "ab")
    algebra = syn(kind, dfa)
    assert verify_recognition(algebra, dfa, seed=1, samples=200).passed
    assert check_algebra_laws(algebra).passed
    assert verify_transition_equivalence(algebra, dfa, max_length=3).passed


@pytest.mark.parametrize("kind", ["set", "pos", "pset", "inv"])
def test_oracle_quotient_matches_transition_monoid(kind):
    for regex in ("(ab)*", "(a|b)*abb", "b*ab*ab*"):
        dfa = compile_regex(regex, "ab")
        assert iso_as_quotients(syn(kind, dfa), oracle_quotient(Variety.of(kind), dfa))


def test_oracle_quotient_refuses_jsl():
    with pytest.raises(VarietyError):
        oracle_quotient(Variety.of("jsl"), AB_STAR)


def test_congruence_oracle():
    variety = Variety.of("set")
    aa, bb = lift_word(variety, "aa"), lift_word(variety, "bb")
    assert congruence_oracle(variety, AB_STAR, aa, bb)
    assert congruence_witness(variety, AB_STAR, aa, bb) is None
    ab, e = lift_word(variety, "ab"), lift_word(variety, "")
    assert not congruence_oracle(variety, AB_STAR, ab, e)
    assert congruence_witness(variety, AB_STAR, ab, e) == ("a", "b")


def test_ordered_congruence_oracle():
    variety = Variety.of("pos")
    e, a = lift_word(variety, ""), lift_word(variety, "a")
    assert congruence_oracle(variety, CONTAINS_A, e, a) == (True, False)


def test_jsl_oracle_bound_guard(monkeypatch):
    monkeypatch.setattr("synmon.synalg.oracle.MAX_ORACLE_STATES", 2)
    variety = Variety.of("jsl")
    u = parse_free_elem(variety, "{a}", "ab")
    with pytest.raises(CapacityError):
        congruence_oracle(variety, AB_STAR, u, u)


def test_closure_guard():
    with pytest.raises(CapacityError):
        syntactic_algebra(Variety.of("set"), AB_STAR, CapacityLimits(max_elements=4))


def test_corrupted_table_fails_recognition():
    algebra = syn("set", AB_STAR)
    mult = [list(row) for row in algebra.mult]
    mult[1][2] = 0
    broken = algebra.model_copy(update={"mult": tuple(tuple(row) for row in mult)})
    report = verify_recognition(broken, AB_STAR, samples=50)
    assert report.status == ReportStatus.FAILURE
    assert report.witnesses


def test_corrupted_involution_fails_laws():
    algebra = syn("inv", AB_STAR)
    involution = list(algebra.involution)
    involution[0], involution[1] = involution[1], involution[0]
    broken = algebra.model_copy(update={"involution": tuple(involution)})
    assert not check_algebra_laws(broken).passed


def test_corrupted_structure_constants_fail_recognition():
    algebra = syn("vect", EVEN_A, 2)
    structure = [[list(c) for c in row] for row in algebra.structure]
    structure[1][1] = [0, 1]
    broken = algebra.model_copy(update={"structure": tuple(tuple(tuple(c) for c in row) for row in structure)})
    assert not verify_recognition(broken, EVEN_A, samples=50).passed


def test_quotient_isomorphism():
    # (ab)* and (ba)* share their syntactic congruence
    assert iso_as_quotients(syn("set", AB_STAR), syn("set", compile_regex("(ba)*", "ab")))
    assert not iso_as_quotients(syn("set", AB_STAR), syn("set", CONTAINS_A))


def test_renderings():
    algebra = syn("set", AB_STAR)
    table = render_table(algebra)
    assert "size: 6" in table
    assert "*ε" in table
    assert "zero" in table
    data = json.loads(render_json(algebra, seed=3))
    assert data["seed"] == 3 and data["size"] == 6
    assert render_csv(algebra).splitlines()[0] == "·,ε,a,b,aa,ab,ba"


@pytest.mark.parametrize("prime", [2, 3])
@pytest.mark.parametrize("regex", ["(ab)*", "b*(ab*ab*)*", "(a|b)*abb", "a*b*"])
def test_dimension_is_the_rank_of_short_word_matrices(prime, regex):
    algebra = syn("vect", compile_regex(regex, "ab"), prime)
    assert word_span_rank(algebra) == algebra.size


def test_dropped_basis_element_fails_laws():
    algebra = syn("vect", EVEN_A, 2)
    broken = algebra.model_copy(update={
        "elements": algebra.elements[:1],
        "structure": tuple(tuple(c[:1] for c in row[:1]) for row in algebra.structure[:1]),
        "unit_coords": algebra.unit_coords[:1],
        "gen_coords": {a: c[:1] for a, c in algebra.gen_coords.items()},
        "output_map": algebra.output_map[:1],
    })
    report = check_algebra_laws(broken)
    assert not report.passed
    assert any("rank 2" in w for w in report.witnesses)


def test_corrupted_generator_product_in_oracle_quotient():
    algebra = oracle_quotient(Variety.of("set"), AB_STAR)
    assert algebra.keyed_by == KeyKind.SIGNATURE
    assert verify_recognition(algebra, AB_STAR, samples=50).passed
    a, b = algebra.gen_map["a"], algebra.gen_map["b"]
    ab = algebra.mult[a][b]
    mult = [list(row) for row in algebra.mult]
    mult[ab][a] = ab
    broken = algebra.model_copy(update={"mult": tuple(tuple(row) for row in mult)})
    report = verify_recognition(broken, AB_STAR, samples=50)
    assert not report.passed
    assert any("is not congruent" in w for w in report.witnesses)
