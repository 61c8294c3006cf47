# test_freemon.py
from itertools import combinations, product

import pytest

from synmon.errors import FreeElemError, VarietyError
from synmon.freemon import (
    FreeElem,
    PointedBit,
    Variety,
    VarietyKind,
    eval_language,
    format_free_elem,
    free_add,
    free_complement,
    free_join,
    free_mul,
    lift_word,
    parse_free_elem,
    unit,
)
from synmon.cli.corpus import load_corpus
from synmon.langcore import compile_regex, words_up_to

SET = Variety.of("set")
PSET = Variety.of("pset")
INV = Variety.of("inv")
JSL = Variety.of("jsl")
VECT2 = Variety.of("vect", 2)
VECT3 = Variety.of("vect", 3)


def test_variety_tags():
    assert str(Variety.of("vect")) == "vect(2)"
    assert str(VECT3) == "vect(3)"
    assert Variety.of("pos", 5).prime is None
    assert Variety.of(VarietyKind.INV) == INV


@pytest.mark.parametrize("kind, prime", [("vect", 4), ("vect", 1), ("group", None)])
def test_bad_varieties(kind, prime):
    with pytest.raises(VarietyError):
        Variety.of(kind, prime)


def test_unit_is_neutral():
    for variety in (SET, PSET, INV, JSL, VECT2):
        u = lift_word(variety, "ab")
        assert free_mul(variety, unit(variety), u) == u
        assert free_mul(variety, u, unit(variety)) == u


def test_pset_bottom_absorbs():
    bottom = FreeElem.bottom_of(PSET)
    assert free_mul(PSET, lift_word(PSET, "a"), bottom) == bottom
    assert free_mul(PSET, bottom, lift_word(PSET, "b")) == bottom


def test_inv_complements_compose():
    u = free_complement(INV, lift_word(INV, "a"))
    v = free_complement(INV, lift_word(INV, "b"))
    assert free_mul(INV, u, v) == lift_word(INV, "ab")
    assert free_mul(INV, u, lift_word(INV, "b")).complemented


def test_jsl_product_distributes_over_sets():
    u = parse_free_elem(JSL, "{a,b}", "ab")
    v = parse_free_elem(JSL, "{ε,a}", "ab")
    assert format_free_elem(free_mul(JSL, u, v)) == "{a,b,aa,ba}"
    assert free_join(JSL, u, u) == u
    assert format_free_elem(free_mul(JSL, u, FreeElem.word_set(JSL, []))) == "{}"


def test_vect_arithmetic_mod_p():
    u = parse_free_elem(VECT2, "a+b", "ab")
    square = free_mul(VECT2, u, u)
    assert format_free_elem(square) == "aa+ab+ba+bb"
    assert format_free_elem(free_add(VECT2, u, u)) == "0"
    w = parse_free_elem(VECT3, "2*a+a", "ab")
    assert format_free_elem(w) == "0"


def test_tag_mismatch():
    with pytest.raises(FreeElemError):
        free_mul(SET, lift_word(SET, "a"), lift_word(INV, "a"))
    with pytest.raises(FreeElemError):
        free_join(SET, lift_word(SET, "a"), lift_word(SET, "a"))


@pytest.mark.parametrize("variety, text", [
    (SET, "ab"),
    (SET, "ε"),
    (PSET, "_|_"),
    (INV, "~ab"),
    (JSL, "{ε,ab}"),
    (VECT3, "a+2*ab"),
])
def test_textual_syntax(variety, text):
    assert format_free_elem(parse_free_elem(variety, text, "ab")) == text


@pytest.mark.parametrize("variety, text", [
    (SET, "ac"),
    (JSL, "ab"),
    (VECT2, "x*a"),
    (SET, "a" * 10),
])
def test_bad_elements(variety, text):
    with pytest.raises(FreeElemError):
        parse_free_elem(variety, text, "ab", max_length=8)


def test_eval_language_per_variety():
    dfa = compile_regex("(ab)*", "ab")
    assert eval_language(SET, dfa, lift_word(SET, "ab")) == 1
    assert eval_language(PSET, dfa, lift_word(PSET, "a")) == PointedBit.BOTTOM
    assert eval_language(PSET, dfa, FreeElem.bottom_of(PSET)) == PointedBit.BOTTOM
    assert eval_language(PSET, dfa, lift_word(PSET, "abab")) == PointedBit.ONE
    assert eval_language(INV, dfa, parse_free_elem(INV, "~a", "ab")) == 1
    assert eval_language(JSL, dfa, parse_free_elem(JSL, "{a,ab}", "ab")) == 1
    assert eval_language(JSL, dfa, parse_free_elem(JSL, "{}", "ab")) == 0
    assert eval_language(VECT2, dfa, parse_free_elem(VECT2, "ε+ab+a", "ab")) == 0
    assert eval_language(VECT3, dfa, parse_free_elem(VECT3, "ε+ab+a", "ab")) == 2


POS = Variety.of("pos")
SHORT_WORDS = list(words_up_to("ab", 3))
CORPUS = load_corpus()


def small_elements(variety):
    if variety.kind == VarietyKind.JSL:
        words = list(words_up_to("ab", 2))
        return [FreeElem.word_set(variety, chosen) for size in (0, 1, 2) for chosen in combinations(words, size)]
    if variety.kind == VarietyKind.VECT:
        words = list(words_up_to("ab", 2))
        singles = [FreeElem.polynomial(variety, {w: c}) for w in words for c in range(1, variety.prime)]
        pairs = [FreeElem.polynomial(variety, {v: 1, w: variety.prime - 1}) for v, w in combinations(words, 2)]
        return [FreeElem.polynomial(variety, {})] + singles + pairs
    elements = [lift_word(variety, w) for w in SHORT_WORDS]
    if variety.kind == VarietyKind.PSET:
        elements.append(FreeElem.bottom_of(variety))
    if variety.kind == VarietyKind.INV:
        elements += [free_complement(variety, u) for u in list(elements)]
    return elements


@pytest.mark.parametrize("variety", [SET, POS, PSET, INV, JSL, VECT2, VECT3], ids=str)
def test_free_mul_is_associative(variety):
    elements = small_elements(variety)
    for u, v, w in product(elements, repeat=3):
        assert free_mul(variety, free_mul(variety, u, v), w) == free_mul(variety, u, free_mul(variety, v, w))


def test_inv_complement_moves_through_products():
    elements = small_elements(INV)
    for u, v in product(elements, repeat=2):
        back = free_complement(INV, free_complement(INV, u))
        assert back == u
        assert free_mul(INV, back, v) == free_mul(INV, u, v)
        assert free_mul(INV, free_complement(INV, u), v) == free_complement(INV, free_mul(INV, u, v))
        assert free_mul(INV, u, free_complement(INV, v)) == free_complement(INV, free_mul(INV, u, v))


def test_jsl_product_distributes_over_join():
    elements = small_elements(JSL)
    for u, v, w in product(elements, repeat=3):
        assert free_mul(JSL, u, free_join(JSL, v, w)) == free_join(JSL, free_mul(JSL, u, v), free_mul(JSL, u, w))
        assert free_mul(JSL, free_join(JSL, v, w), u) == free_join(JSL, free_mul(JSL, v, u), free_mul(JSL, w, u))


@pytest.mark.parametrize("entry", CORPUS, ids=[entry.name for entry in CORPUS])
def test_jsl_eval_preserves_joins(entry):
    dfa = compile_regex(entry.regex, entry.alphabet)
    elements = small_elements(JSL)
    assert eval_language(JSL, dfa, FreeElem.word_set(JSL, [])) == 0
    for u, v in product(elements, repeat=2):
        joined = eval_language(JSL, dfa, free_join(JSL, u, v))
        assert joined == max(eval_language(JSL, dfa, u), eval_language(JSL, dfa, v))


@pytest.mark.parametrize("entry", CORPUS, ids=[entry.name for entry in CORPUS])
@pytest.mark.parametrize("variety", [VECT2, VECT3], ids=str)
def test_vect_eval_is_linear(entry, variety):
    dfa = compile_regex(entry.regex, entry.alphabet)
    elements = small_elements(variety)
    p = variety.prime
    assert eval_language(variety, dfa, FreeElem.polynomial(variety, {})) == 0
    for u, v in product(elements[::4], elements):
        for scalar in range(p):
            total = eval_language(variety, dfa, free_add(variety, u, v, scalar))
            assert total == (eval_language(variety, dfa, u) + scalar * eval_language(variety, dfa, v)) % p
