"""Multiplication in X*, language evaluation, and the textual FreeElem syntax."""
from typing import Dict, Sequence, Union

from synmon.config import MAX_WORD_LENGTH
from synmon.errors import AlphabetError, FreeElemError
from synmon.freemon.models import FreeElem, PointedBit, Variety, VarietyKind
from synmon.langcore.models import Dfa, check_word

OutputValue = Union[int, PointedBit]

BOTTOM_TEXT = "_|_"
EPSILON_TEXT = "ε"


def unit(variety: Variety) -> FreeElem:
    """The monoid unit of X*."""
    return lift_word(variety, "")


def lift_word(variety: Variety, word: str) -> FreeElem:
    """Embed a plain word of X0* into X* for `variety`."""
    return FreeElem.of_word(variety, word)


def _check_operands(variety: Variety, *elements: FreeElem) -> None:
    for element in elements:
        if element.variety != variety:
            raise FreeElemError(f"Element of {element.variety} used as {variety}")


def free_mul(variety: Variety, u: FreeElem, v: FreeElem) -> FreeElem:
    """Monoid product u • v in X*."""
    _check_operands(variety, u, v)
    kind = variety.kind
    if kind in (VarietyKind.SET, VarietyKind.POS):
        return FreeElem(variety=variety, word=u.word + v.word)
    if kind == VarietyKind.PSET:
        if u.bottom or v.bottom:
            return FreeElem.bottom_of(variety)
        return FreeElem(variety=variety, word=u.word + v.word)
    if kind == VarietyKind.INV:
        return FreeElem(
            variety=variety, word=u.word + v.word, complemented=u.complemented != v.complemented
        )
    if kind == VarietyKind.JSL:
        return FreeElem.word_set(variety, (x + y for x in u.words for y in v.words))
    product: Dict[str, int] = {}
    for x, c in u.terms:
        for y, d in v.terms:
            product[x + y] = product.get(x + y, 0) + c * d
    return FreeElem.polynomial(variety, product)


def free_join(variety: Variety, u: FreeElem, v: FreeElem) -> FreeElem:
    """Semilattice join (set union) of JSL elements."""
    _check_operands(variety, u, v)
    if variety.kind != VarietyKind.JSL:
        raise FreeElemError(f"Join is only defined in jsl, not {variety}")
    return FreeElem.word_set(variety, u.words + v.words)


def free_add(variety: Variety, u: FreeElem, v: FreeElem, scalar: int = 1) -> FreeElem:
    """u + scalar·v for VECT polynomials."""
    _check_operands(variety, u, v)
    if variety.kind != VarietyKind.VECT:
        raise FreeElemError(f"Addition is only defined in vect, not {variety}")
    total = dict(u.terms)
    for w, c in v.terms:
        total[w] = total.get(w, 0) + scalar * c
    return FreeElem.polynomial(variety, total)


def free_complement(variety: Variety, u: FreeElem) -> FreeElem:
    _check_operands(variety, u)
    if variety.kind != VarietyKind.INV:
        raise FreeElemError(f"Complement is only defined in inv, not {variety}")
    return FreeElem(variety=variety, word=u.word, complemented=not u.complemented)


def eval_language(variety: Variety, dfa: Dfa, u: FreeElem) -> OutputValue:
    """The language morphism L: X* -> Y induced by the classical language of `dfa`."""
    _check_operands(variety, u)
    kind = variety.kind
    if kind in (VarietyKind.SET, VarietyKind.POS):
        return int(dfa.accepts(u.word))
    if kind == VarietyKind.PSET:
        if u.bottom or not dfa.accepts(u.word):
            return PointedBit.BOTTOM
        return PointedBit.ONE
    if kind == VarietyKind.INV:
        return int(dfa.accepts(u.word) != u.complemented)
    if kind == VarietyKind.JSL:
        return int(any(dfa.accepts(w) for w in u.words))
    return sum(c for w, c in u.terms if dfa.accepts(w)) % variety.prime


# Textual syntax


def _parse_word(text: str, alphabet: Sequence[str], max_length: int) -> str:
    word = "" if text in ("", EPSILON_TEXT) else text
    if len(word) > max_length:
        raise FreeElemError(f"Word of length {len(word)} exceeds the guard of {max_length}")
    try:
        return check_word(word, alphabet)
    except AlphabetError as error:
        raise FreeElemError(error.detail) from None


def parse_free_elem(
    variety: Variety, text: str, alphabet: Sequence[str], max_length: int = MAX_WORD_LENGTH
) -> FreeElem:
    """Parse `ab`, `_|_` (pset), `~ab` (inv), `{ab,ba}` (jsl), `ab+2*ba` (vect)."""
    text = "".join(text.split())
    kind = variety.kind
    if kind == VarietyKind.PSET and text == BOTTOM_TEXT:
        return FreeElem.bottom_of(variety)
    if kind == VarietyKind.INV and text.startswith("~"):
        return FreeElem.complemented_word(variety, _parse_word(text[1:], alphabet, max_length))
    if kind == VarietyKind.JSL:
        if not (text.startswith("{") and text.endswith("}")):
            raise FreeElemError(f"JSL elements are written {{w1,w2,...}}, got {text!r}")
        inner = text[1:-1]
        words = [_parse_word(part, alphabet, max_length) for part in inner.split(",")] if inner else []
        return FreeElem.word_set(variety, words)
    if kind == VarietyKind.VECT:
        if text == "0" and "0" not in alphabet:
            return FreeElem.polynomial(variety, {})
        coefficients: Dict[str, int] = {}
        for term in (text.split("+") if text else []):
            coefficient, _, word_text = term.rpartition("*")
            try:
                scalar = int(coefficient) if coefficient else 1
            except ValueError:
                raise FreeElemError(f"Bad coefficient {coefficient!r} in {text!r}") from None
            word = _parse_word(word_text, alphabet, max_length)
            coefficients[word] = coefficients.get(word, 0) + scalar
        return FreeElem.polynomial(variety, coefficients)
    return FreeElem.of_word(variety, _parse_word(text, alphabet, max_length))


def _format_word(word: str) -> str:
    return word if word else EPSILON_TEXT


def format_free_elem(u: FreeElem) -> str:
    kind = u.variety.kind
    if kind == VarietyKind.JSL:
        return "{" + ",".join(_format_word(w) for w in u.words) + "}"
    if kind == VarietyKind.VECT:
        if not u.terms:
            return "0"
        return "+".join(
            _format_word(w) if c == 1 else f"{c}*{_format_word(w)}" for w, c in u.terms
        )
    if u.bottom:
        return BOTTOM_TEXT
    prefix = "~" if u.complemented else ""
    return prefix + _format_word(u.word)


def format_output(value: OutputValue) -> str:
    return value.value if isinstance(value, PointedBit) else str(value)
