"""Models for transition and syntactic D-monoids and verification reports."""
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from synmon.freemon.algebra import OutputValue
from synmon.freemon.models import FreeElem, Variety, VarietyKind

# Element index for finite algebras, coordinate vector for VECT
ElemClass = Union[int, Tuple[int, ...]]


class KeyKind(str, Enum):
    """What an element's canonical key encodes"""
    MAP = "map"  # image table of a carrier endomap
    MATRIX = "matrix"  # row-major d×d matrix over F_p
    SIGNATURE = "signature"  # context outcomes (oracle or atom profiles)


class TransitionElem(BaseModel):
    """One element of a syntactic algebra with its shortest representative."""

    model_config = ConfigDict(frozen=True)

    key: Tuple[int, ...] = Field(..., description="Canonical serialization of the element")
    representative: FreeElem = Field(..., description="Length-lex first element of X* mapping here")


class SynAlgebra(BaseModel):
    """A finite X-generated D-monoid with its generator map e_L and output f_L.

    Multiplication is diagrammatic: ``mult[u][v]`` is δ_v ∘ δ_u, so that
    e_L(xy) = mult[e_L(x)][e_L(y)].

    For VECT the elements are a basis of the algebra: ``structure[i][j]`` holds the
    coordinates of e_i·e_j, ``unit_coords`` and ``gen_coords`` the coordinates of
    the unit and the generators, and ``output_map[i]`` is f_L(e_i).
    """

    model_config = ConfigDict(frozen=True)

    variety: Variety
    alphabet: Tuple[str, ...]
    keyed_by: KeyKind = KeyKind.MAP
    elements: Tuple[TransitionElem, ...]
    unit: int = 0
    mult: Tuple[Tuple[int, ...], ...] = ()
    gen_map: Dict[str, int] = Field(default_factory=dict)
    output_map: Tuple[OutputValue, ...] = ()
    order: Optional[Tuple[Tuple[bool, ...], ...]] = None
    zero: Optional[int] = Field(None, description="PSET zero, JSL additive zero")
    involution: Optional[Tuple[int, ...]] = None
    addition: Optional[Tuple[Tuple[int, ...], ...]] = None
    structure: Optional[Tuple[Tuple[Tuple[int, ...], ...], ...]] = None
    unit_coords: Tuple[int, ...] = ()
    gen_coords: Dict[str, Tuple[int, ...]] = Field(default_factory=dict)
    gen_matrices: Dict[str, Tuple[Tuple[int, ...], ...]] = Field(
        default_factory=dict, description="VECT letter matrices M_a of the reduced automaton"
    )

    @property
    def size(self) -> int:
        """Number of elements, or dimension for VECT."""
        return len(self.elements)

    @property
    def is_linear(self) -> bool:
        return self.variety.kind == VarietyKind.VECT

    # Coordinates over F_p

    def coords_mul(self, x: Sequence[int], y: Sequence[int]) -> Tuple[int, ...]:
        if self.size == 0:
            return ()
        c = np.asarray(self.structure, dtype=np.int64)
        product = np.einsum("i,j,ijk->k", np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64), c)
        return tuple(int(v) for v in product % self.variety.prime)

    def coords_output(self, x: Sequence[int]) -> int:
        return sum(int(a) * int(b) for a, b in zip(x, self.output_map)) % self.variety.prime

    # Generator map e_L

    def class_of_word(self, word: str) -> ElemClass:
        if self.is_linear:
            coords = self.unit_coords
            for letter in word:
                coords = self.coords_mul(coords, self.gen_coords[letter])
            return coords
        element = self.unit
        for letter in word:
            element = self.mult[element][self.gen_map[letter]]
        return element

    def class_of(self, u: FreeElem) -> ElemClass:
        """e_L(u) for an element of X*."""
        kind = self.variety.kind
        if kind == VarietyKind.VECT:
            p = self.variety.prime
            total = [0] * self.size
            for word, coefficient in u.terms:
                for i, x in enumerate(self.class_of_word(word)):
                    total[i] = (total[i] + coefficient * x) % p
            return tuple(total)
        if kind == VarietyKind.JSL:
            element = self.zero
            for word in u.words:
                element = self.addition[element][self.class_of_word(word)]
            return element
        if u.bottom:
            return self.zero
        element = self.class_of_word(u.word)
        if u.complemented:
            element = self.involution[element]
        return element

    def output_of(self, element: ElemClass) -> OutputValue:
        """f_L on an element index (or on coordinates for VECT)."""
        if self.is_linear:
            return self.coords_output(element)
        return self.output_map[element]


class ReportStatus(str, Enum):
    SUCCESS = "success"
    FAILURE = "failure"


class VerificationReport(BaseModel):
    """Outcome of a verification run, with counterexamples on failure"""
    status: ReportStatus = Field(..., description="Verification status")
    message: str = Field(..., description="Summary message")
    data: Dict[str, Any] = Field(default_factory=dict, description="Sizes and other figures")
    witnesses: List[str] = Field(default_factory=list, description="Counterexamples")

    @property
    def passed(self) -> bool:
        return self.status == ReportStatus.SUCCESS

    @classmethod
    def from_witnesses(cls, name: str, witnesses: List[str], **data) -> "VerificationReport":
        if witnesses:
            return cls(
                status=ReportStatus.FAILURE,
                message=f"{name} failed with {len(witnesses)} counterexample(s)",
                data=data, witnesses=witnesses,
            )
        return cls(status=ReportStatus.SUCCESS, message=f"{name} passed", data=data)
