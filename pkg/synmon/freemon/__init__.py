"""Elements of the free D-monoid X* and the language morphism L: X* -> Y."""
from synmon.freemon.algebra import (
    OutputValue,
    eval_language,
    format_free_elem,
    format_output,
    free_add,
    free_complement,
    free_join,
    free_mul,
    lift_word,
    parse_free_elem,
    unit,
)
from synmon.freemon.models import FreeElem, PointedBit, Variety, VarietyKind
