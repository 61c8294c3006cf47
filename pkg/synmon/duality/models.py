"""Models for the derivative system of L^rev and its atoms."""
from typing import Dict, Tuple

from pydantic import BaseModel, ConfigDict, Field

from synmon.langcore.models import Dfa


class DerivativePair(BaseModel):
    """The language {w : δ(state, w) ∈ targets} over the base automaton"""

    model_config = ConfigDict(frozen=True)

    state: int
    targets: Tuple[int, ...]
    left_context: str = Field(..., description="A word u reaching `state`")
    right_context: str = Field(..., description="A word v with targets = {s : δ(s, v) ∈ F}")


class DerivativeSystem(BaseModel):
    """Two-sided derivatives u⁻¹ L^rev v⁻¹, one pair per distinct language."""

    model_config = ConfigDict(frozen=True)

    base: Dfa = Field(..., description="Minimal DFA of L^rev")
    pairs: Tuple[DerivativePair, ...]
    right_sets: Tuple[Tuple[int, ...], ...] = Field(..., description="Backward closure of the finals")


class Atom(BaseModel):
    model_config = ConfigDict(frozen=True)

    profile: Tuple[bool, ...] = Field(..., description="Membership in each derivative pair")
    members: Tuple[int, ...] = Field(..., description="Indices of the transition maps in this atom")
    representative: str = Field(..., description="Shortest word in the atom")


class AtomSystem(BaseModel):
    """Atoms of the boolean algebra generated by the derivatives, with z -a-> z'
    whenever z ⊆ a⁻¹z'."""

    model_config = ConfigDict(frozen=True)

    derivatives: DerivativeSystem
    maps: Tuple[Tuple[int, ...], ...] = Field(..., description="Transition maps of the base, BFS order")
    map_words: Tuple[str, ...]
    map_trans: Dict[str, Tuple[int, ...]] = Field(..., description="Cayley automaton of the maps")
    atoms: Tuple[Atom, ...]
    atom_of_map: Tuple[int, ...]
    initial: int
    trans: Dict[str, Tuple[int, ...]]

    @property
    def size(self) -> int:
        return len(self.atoms)
