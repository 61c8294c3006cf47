"""Finite D-automata and the minimal automaton Min(L) of each variety."""
from synmon.dautomata.construct import (
    check_reachable_simple,
    evaluate,
    linear_lifting,
    minimal_d_automaton,
    powerset_lifting,
    reduce_linear_automaton,
    reduce_semilattice_automaton,
    run_word,
    structure_violations,
)
from synmon.dautomata.export import (
    automaton_to_csv,
    automaton_to_dict,
    automaton_to_dot,
    automaton_to_json,
    automaton_to_table,
)
from synmon.dautomata.models import CapacityLimits, DAutomaton, ReachabilityReport
