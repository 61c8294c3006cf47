"""Models for finite D-automata."""
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from synmon.config import MAX_DIM, MAX_ELEMENTS, MAX_JSL_STATES
from synmon.freemon.models import PointedBit, Variety, VarietyKind

OutputValue = Union[int, PointedBit]


class CapacityLimits(BaseModel):
    """Guards turning the finiteness assumptions into explicit errors"""
    max_jsl_states: int = Field(MAX_JSL_STATES, description="JSL subset construction bound")
    max_dim: int = Field(MAX_DIM, description="VECT dimension bound")
    max_elements: int = Field(MAX_ELEMENTS, description="Transition monoid closure bound")


class DAutomaton(BaseModel):
    """A finite D-automaton (Q, δ, i, f).

    Finite carriers (every kind except VECT) number their elements ``0 .. size-1``;
    ``trans[a][x]`` is δ_a(x) and ``output[x]`` is f(x). The variety structure sits
    in ``order`` (POS, ``order[p][q]`` iff p <= q), ``bottom`` (PSET basepoint, JSL
    zero), ``involution`` (INV) and ``join`` (JSL). VECT automata live on F_p^size
    with row-vector convention: the state after w is ``initial_vector · M_w``.
    """

    model_config = ConfigDict(frozen=True)

    variety: Variety
    alphabet: Tuple[str, ...]
    size: int = Field(..., ge=0, description="Carrier size, or dimension for VECT")
    labels: Tuple[str, ...] = ()
    trans: Dict[str, Tuple[int, ...]] = Field(default_factory=dict)
    initial: int = 0
    output: Tuple[OutputValue, ...] = ()
    order: Optional[Tuple[Tuple[bool, ...], ...]] = None
    bottom: Optional[int] = None
    involution: Optional[Tuple[int, ...]] = None
    join: Optional[Tuple[Tuple[int, ...], ...]] = None
    matrices: Dict[str, Tuple[Tuple[int, ...], ...]] = Field(default_factory=dict)
    initial_vector: Tuple[int, ...] = ()
    output_vector: Tuple[int, ...] = ()

    @property
    def is_linear(self) -> bool:
        return self.variety.kind == VarietyKind.VECT

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)


class ReachabilityReport(BaseModel):
    """Outcome of the reachable / simple checks"""
    reachable: bool
    simple: bool
    carrier_size: int
    reachable_size: int = Field(..., description="Generated elements, or span dimension for VECT")
    observable_size: int = Field(..., description="Distinct behaviors, or observable dimension for VECT")
    unreachable: List[str] = Field(default_factory=list)
    collisions: List[Tuple[str, str]] = Field(default_factory=list)
