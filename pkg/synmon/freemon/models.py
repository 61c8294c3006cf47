"""Models for varieties and elements of the free D-monoid X*."""
from enum import Enum
from typing import Dict, Iterable, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from synmon.config import DEFAULT_PRIME
from synmon.errors import VarietyError


class VarietyKind(str, Enum):
    """The ambient commutative variety D"""
    SET = "set"
    POS = "pos"
    PSET = "pset"
    INV = "inv"
    JSL = "jsl"
    VECT = "vect"


class PointedBit(str, Enum):
    """Output object {⊥, 1} of pointed sets"""
    BOTTOM = "⊥"
    ONE = "1"


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p ** 0.5) + 1))


class Variety(BaseModel):
    """A variety tag; `prime` is only meaningful (and required) for VECT."""

    model_config = ConfigDict(frozen=True)

    kind: VarietyKind
    prime: Optional[int] = Field(None, description="Characteristic of F_p for VECT")

    @model_validator(mode="before")
    @classmethod
    def _default_prime(cls, data):
        if isinstance(data, dict):
            kind = data.get("kind")
            if kind in (VarietyKind.VECT, VarietyKind.VECT.value):
                if data.get("prime") is None:
                    data = {**data, "prime": DEFAULT_PRIME}
            else:
                data = {**data, "prime": None}
        return data

    @model_validator(mode="after")
    def _check_prime(self):
        if self.kind == VarietyKind.VECT and not is_prime(self.prime):
            raise VarietyError(f"VECT requires a prime characteristic, got {self.prime}")
        return self

    @classmethod
    def of(cls, kind, prime: Optional[int] = None) -> "Variety":
        try:
            kind = VarietyKind(kind)
        except ValueError:
            raise VarietyError(f"Unknown variety: {kind}") from None
        return cls(kind=kind, prime=prime)

    @property
    def boolean_output(self) -> bool:
        return self.kind in (VarietyKind.SET, VarietyKind.POS, VarietyKind.INV, VarietyKind.JSL)

    def __str__(self) -> str:
        if self.kind == VarietyKind.VECT:
            return f"vect({self.prime})"
        return self.kind.value


def length_lex(word: str) -> Tuple[int, str]:
    return (len(word), word)


class FreeElem(BaseModel):
    """An element of X* in one variety.

    SET/POS: `word`; PSET: `word` or `bottom`; INV: `word` with a `complemented`
    flag; JSL: `words`, a finite set kept sorted length-lexicographically; VECT:
    `terms`, word/coefficient pairs with nonzero coefficients in F_p.
    """

    model_config = ConfigDict(frozen=True)

    variety: Variety
    word: Optional[str] = None
    bottom: bool = False
    complemented: bool = False
    words: Tuple[str, ...] = ()
    terms: Tuple[Tuple[str, int], ...] = ()

    @model_validator(mode="after")
    def _check_shape(self):
        kind = self.variety.kind
        if kind == VarietyKind.JSL:
            if self.word is not None or self.bottom or self.complemented or self.terms:
                raise ValueError("JSL elements are word sets")
            if list(self.words) != sorted(set(self.words), key=length_lex):
                raise ValueError("JSL word sets must be deduplicated and sorted")
        elif kind == VarietyKind.VECT:
            if self.word is not None or self.bottom or self.complemented or self.words:
                raise ValueError("VECT elements are polynomials")
            keys = [w for w, _ in self.terms]
            if keys != sorted(set(keys), key=length_lex):
                raise ValueError("VECT terms must be sorted with distinct words")
            if any(not 0 < c < self.variety.prime for _, c in self.terms):
                raise ValueError("VECT coefficients must be nonzero residues")
        else:
            if self.words or self.terms:
                raise ValueError(f"{kind.value} elements are single words")
            if self.bottom and kind != VarietyKind.PSET:
                raise ValueError("Only PSET has a bottom element")
            if self.complemented and kind != VarietyKind.INV:
                raise ValueError("Only INV has complemented words")
            if self.bottom == (self.word is not None):
                raise ValueError("Exactly one of word and bottom must be given")
        return self

    @classmethod
    def of_word(cls, variety: Variety, word: str) -> "FreeElem":
        """The image of a plain word of X0* in X*."""
        if variety.kind == VarietyKind.JSL:
            return cls(variety=variety, words=(word,))
        if variety.kind == VarietyKind.VECT:
            return cls(variety=variety, terms=((word, 1),))
        return cls(variety=variety, word=word)

    @classmethod
    def bottom_of(cls, variety: Variety) -> "FreeElem":
        return cls(variety=variety, bottom=True)

    @classmethod
    def complemented_word(cls, variety: Variety, word: str) -> "FreeElem":
        return cls(variety=variety, word=word, complemented=True)

    @classmethod
    def word_set(cls, variety: Variety, words: Iterable[str]) -> "FreeElem":
        return cls(variety=variety, words=tuple(sorted(set(words), key=length_lex)))

    @classmethod
    def polynomial(cls, variety: Variety, coefficients: Dict[str, int]) -> "FreeElem":
        p = variety.prime
        reduced = {w: c % p for w, c in coefficients.items() if c % p}
        return cls(variety=variety, terms=tuple(sorted(reduced.items(), key=lambda t: length_lex(t[0]))))
