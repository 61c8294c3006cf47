"""Atoms of the local variety generated by L^rev and the dual view of Syn L and Min L."""
from synmon.duality.atoms import (
    atoms_to_dot,
    build_derivative_system,
    compute_atoms,
    dual_monoid,
    left_derivative_atoms,
    pair_language,
    verify_minimal_duality,
    verify_syntactic_duality,
)
from synmon.duality.models import Atom, AtomSystem, DerivativePair, DerivativeSystem
