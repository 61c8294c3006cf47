"""Minimal D-automata per variety, built from the classical minimal DFA."""
import logging
from collections import deque
from typing import Dict, List, Optional, Tuple

import numpy as np

from synmon.dautomata.linalg import SpanBuilder, as_matrix, to_rows
from synmon.dautomata.models import CapacityLimits, DAutomaton, OutputValue, ReachabilityReport
from synmon.errors import CapacityError
from synmon.freemon.models import FreeElem, PointedBit, Variety, VarietyKind
from synmon.langcore.automata import (
    empty_language_states,
    minimize,
    moore_partition,
    reachable_states,
    state_included,
)
from synmon.langcore.models import Dfa

logger = logging.getLogger(__name__)


def _columns(dfa: Dfa) -> Dict[str, Tuple[int, ...]]:
    return {
        letter: tuple(dfa.trans[q][i] for q in range(dfa.states))
        for i, letter in enumerate(dfa.alphabet)
    }


def _bits(dfa: Dfa) -> Tuple[int, ...]:
    return tuple(int(q in dfa.final_set) for q in range(dfa.states))


def _state_labels(count: int) -> Tuple[str, ...]:
    return tuple(f"q{q}" for q in range(count))


def minimal_d_automaton(
    variety: Variety, dfa: Dfa, limits: Optional[CapacityLimits] = None
) -> DAutomaton:
    """The reachable and simple D-automaton accepting the variety encoding of L(dfa)."""
    limits = limits or CapacityLimits()
    if not dfa.minimal:
        dfa = minimize(dfa)
    kind = variety.kind
    if kind == VarietyKind.SET:
        automaton = _set_automaton(variety, dfa)
    elif kind == VarietyKind.POS:
        automaton = _pos_automaton(variety, dfa)
    elif kind == VarietyKind.PSET:
        automaton = _pset_automaton(variety, dfa)
    elif kind == VarietyKind.INV:
        automaton = _inv_automaton(variety, dfa)
    elif kind == VarietyKind.JSL:
        automaton = reduce_semilattice_automaton(powerset_lifting(variety, dfa, limits))
    else:
        automaton = reduce_linear_automaton(linear_lifting(variety, dfa, limits))
    logger.info(f"Min automaton in {variety}: carrier size {automaton.size}")
    return automaton


def _set_automaton(variety: Variety, dfa: Dfa) -> DAutomaton:
    return DAutomaton(
        variety=variety, alphabet=dfa.alphabet, size=dfa.states, labels=_state_labels(dfa.states),
        trans=_columns(dfa), initial=dfa.initial, output=_bits(dfa),
    )


def _pos_automaton(variety: Variety, dfa: Dfa) -> DAutomaton:
    # p <= q iff the language of p is contained in the language of q
    order = tuple(
        tuple(state_included(dfa, p, q) for q in range(dfa.states)) for p in range(dfa.states)
    )
    return _set_automaton(variety, dfa).model_copy(update={"order": order})


def _pset_automaton(variety: Variety, dfa: Dfa) -> DAutomaton:
    trans = _columns(dfa)
    size = dfa.states
    empties = sorted(empty_language_states(dfa))
    if empties:
        bottom = empties[0]
    else:
        # Full-language case: adjoin a basepoint outside the transition-reachable part
        bottom = size
        size += 1
        trans = {letter: column + (bottom,) for letter, column in trans.items()}
    output = tuple(
        PointedBit.ONE if q in dfa.final_set else PointedBit.BOTTOM for q in range(size)
    )
    labels = tuple("⊥" if q == bottom else f"q{q}" for q in range(size))
    return DAutomaton(
        variety=variety, alphabet=dfa.alphabet, size=size, labels=labels, trans=trans,
        initial=dfa.initial, output=output, bottom=bottom,
    )


def _inv_automaton(variety: Variety, dfa: Dfa) -> DAutomaton:
    n = dfa.states
    # Q + ~Q with ~q -a-> ~(δ_a q) and f(~q) = 1 - f(q)
    rows = [list(dfa.trans[q]) for q in range(n)] + [[n + t for t in dfa.trans[q]] for q in range(n)]
    bits = list(_bits(dfa)) + [1 - b for b in _bits(dfa)]
    partner = [q + n for q in range(n)] + [q for q in range(n)]
    blocks = moore_partition(rows, bits)

    size = max(blocks) + 1
    trans = {letter: [0] * size for letter in dfa.alphabet}
    output = [0] * size
    involution = [0] * size
    labels = [""] * size
    for x in range(2 * n):
        block = blocks[x]
        if labels[block]:
            continue
        labels[block] = f"q{x}" if x < n else f"~q{x - n}"
        output[block] = bits[x]
        involution[block] = blocks[partner[x]]
        for i, letter in enumerate(dfa.alphabet):
            trans[letter][block] = blocks[rows[x][i]]
    return DAutomaton(
        variety=variety, alphabet=dfa.alphabet, size=size, labels=tuple(labels),
        trans={letter: tuple(column) for letter, column in trans.items()},
        initial=blocks[dfa.initial], output=tuple(output), involution=tuple(involution),
    )


def _mask_label(mask: int) -> str:
    members = [str(q) for q in range(mask.bit_length()) if mask >> q & 1]
    return "{" + ",".join(members) + "}"


def powerset_lifting(
    variety: Variety, dfa: Dfa, limits: Optional[CapacityLimits] = None
) -> DAutomaton:
    """Unreduced JSL automaton: join-generated subsets of the DFA states.

    Carrier elements are generated from the reachable singletons and ∅ under
    union; δ_a acts pointwise and f(S) = 1 iff S meets the accepting states.
    """
    limits = limits or CapacityLimits()
    generators = sorted({1 << q for q in reachable_states(dfa)})
    if 2 ** len(generators) > limits.max_jsl_states:
        logger.error(f"JSL subset construction of {len(generators)} generators refused")
        raise CapacityError("JSL subset construction", 2 ** len(generators), limits.max_jsl_states)
    masks = {0}
    for generator in generators:
        masks |= {mask | generator for mask in masks}
    ordered = sorted(masks, key=lambda m: (bin(m).count("1"), m))
    index = {mask: i for i, mask in enumerate(ordered)}
    final_mask = sum(1 << q for q in dfa.finals)

    def image(mask: int, column: int) -> int:
        result = 0
        for q in range(dfa.states):
            if mask >> q & 1:
                result |= 1 << dfa.trans[q][column]
        return result

    trans = {
        letter: tuple(index[image(mask, i)] for mask in ordered)
        for i, letter in enumerate(dfa.alphabet)
    }
    join = tuple(tuple(index[m | k] for k in ordered) for m in ordered)
    logger.debug(f"Powerset lifting has {len(ordered)} elements")
    return DAutomaton(
        variety=variety, alphabet=dfa.alphabet, size=len(ordered),
        labels=tuple(_mask_label(m) for m in ordered), trans=trans,
        initial=index[1 << dfa.initial], output=tuple(int(bool(m & final_mask)) for m in ordered),
        bottom=index[0], join=join,
    )


def reduce_semilattice_automaton(automaton: DAutomaton) -> DAutomaton:
    """Quotient a JSL automaton by equality of behaviors (bisimulation)."""
    rows = [[automaton.trans[a][x] for a in automaton.alphabet] for x in range(automaton.size)]
    blocks = moore_partition(rows, automaton.output)
    size = max(blocks) + 1
    representative = [-1] * size
    for x, block in enumerate(blocks):
        if representative[block] < 0:
            representative[block] = x
    return automaton.model_copy(update={
        "size": size,
        "labels": tuple(automaton.label(x) for x in representative),
        "trans": {
            a: tuple(blocks[automaton.trans[a][x]] for x in representative)
            for a in automaton.alphabet
        },
        "initial": blocks[automaton.initial],
        "output": tuple(automaton.output[x] for x in representative),
        "bottom": blocks[automaton.bottom],
        "join": tuple(
            tuple(blocks[automaton.join[x][y]] for y in representative) for x in representative
        ),
    })


def linear_lifting(
    variety: Variety, dfa: Dfa, limits: Optional[CapacityLimits] = None
) -> DAutomaton:
    """Unreduced VECT automaton on F_p^Q: 0/1 transition matrices of the DFA."""
    limits = limits or CapacityLimits()
    if dfa.states > limits.max_dim:
        logger.error(f"Linear lifting of {dfa.states} states refused")
        raise CapacityError("VECT dimension", dfa.states, limits.max_dim)
    n = dfa.states
    matrices = {}
    for i, letter in enumerate(dfa.alphabet):
        matrix = [[0] * n for _ in range(n)]
        for q in range(n):
            matrix[q][dfa.trans[q][i]] = 1
        matrices[letter] = tuple(tuple(row) for row in matrix)
    return DAutomaton(
        variety=variety, alphabet=dfa.alphabet, size=n, matrices=matrices,
        initial_vector=tuple(int(q == dfa.initial) for q in range(n)),
        output_vector=_bits(dfa),
    )


def _numpy_matrices(automaton: DAutomaton) -> Dict[str, np.ndarray]:
    p = automaton.variety.prime
    return {a: as_matrix(m, p, automaton.size).reshape(automaton.size, automaton.size)
            for a, m in automaton.matrices.items()}


def _reachable_span(start: np.ndarray, matrices: Dict[str, np.ndarray], alphabet, p: int,
                    transpose: bool = False) -> SpanBuilder:
    """Span of start·M_w (or M_w·start when `transpose`), words in length-lex order."""
    span = SpanBuilder(len(start), p)
    if not span.add(start):
        return span
    queue = deque([span.vectors[0]])
    while queue:
        vector = queue.popleft()
        for letter in alphabet:
            matrix = matrices[letter]
            successor = (matrix @ vector if transpose else vector @ matrix) % p
            if span.add(successor):
                queue.append(span.vectors[-1])
    return span


def reduce_linear_automaton(automaton: DAutomaton) -> DAutomaton:
    """Forward (reachable span) then backward (observable quotient) reduction."""
    p = automaton.variety.prime
    alphabet = automaton.alphabet
    matrices = _numpy_matrices(automaton)
    initial = np.asarray(automaton.initial_vector, dtype=np.int64)
    final = np.asarray(automaton.output_vector, dtype=np.int64)

    # Forward: restrict to the span of the reachable vectors i·M_w
    forward = _reachable_span(initial, matrices, alphabet, p)
    basis = forward.basis
    k = len(forward)
    forward_matrices = {}
    for letter in alphabet:
        images = (basis @ matrices[letter]) % p
        forward_matrices[letter] = np.array(
            [forward.coordinates(row) for row in images], dtype=np.int64
        ).reshape(k, k)
    forward_initial = np.zeros(k, dtype=np.int64)
    if k:
        forward_initial[0] = 1
    forward_final = (basis @ final) % p

    # Backward: quotient by the unobservable subspace via the span of M_w·f
    backward = _reachable_span(forward_final, forward_matrices, alphabet, p, transpose=True)
    columns = backward.basis.T if len(backward) else np.zeros((k, 0), dtype=np.int64)
    m = len(backward)
    reduced = {}
    for letter in alphabet:
        images = (forward_matrices[letter] @ columns) % p
        reduced_matrix = np.zeros((m, m), dtype=np.int64)
        for j in range(m):
            reduced_matrix[:, j] = backward.coordinates(images[:, j])
        reduced[letter] = to_rows(reduced_matrix)
    reduced_initial = (forward_initial @ columns) % p if m else np.zeros(0, dtype=np.int64)
    reduced_final = [int(j == 0) for j in range(m)]
    logger.debug(f"Linear reduction: {automaton.size} -> {k} (forward) -> {m} (backward)")
    return automaton.model_copy(update={
        "size": m,
        "matrices": reduced,
        "initial_vector": tuple(int(x) for x in reduced_initial),
        "output_vector": tuple(reduced_final),
    })


# Reachable / simple


def _generated_elements(automaton: DAutomaton) -> List[int]:
    """Elements generated from the initial one by transitions and the variety operations."""
    seen = {automaton.initial}
    kind = automaton.variety.kind
    if automaton.bottom is not None and kind in (VarietyKind.PSET, VarietyKind.JSL):
        seen.add(automaton.bottom)
    changed = True
    while changed:
        changed = False
        queue = deque(sorted(seen))
        while queue:
            x = queue.popleft()
            successors = [automaton.trans[a][x] for a in automaton.alphabet]
            if automaton.involution is not None:
                successors.append(automaton.involution[x])
            for y in successors:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if automaton.join is not None:
            joins = {automaton.join[x][y] for x in seen for y in seen} - seen
            if joins:
                seen |= joins
                changed = True
    return sorted(seen)


def check_reachable_simple(automaton: DAutomaton) -> ReachabilityReport:
    """Reachability and simplicity of a D-automaton, listing the violations."""
    if automaton.is_linear:
        p = automaton.variety.prime
        matrices = _numpy_matrices(automaton)
        forward = _reachable_span(np.asarray(automaton.initial_vector, dtype=np.int64),
                                  matrices, automaton.alphabet, p)
        backward = _reachable_span(np.asarray(automaton.output_vector, dtype=np.int64),
                                   matrices, automaton.alphabet, p, transpose=True)
        return ReachabilityReport(
            reachable=len(forward) == automaton.size, simple=len(backward) == automaton.size,
            carrier_size=automaton.size, reachable_size=len(forward),
            observable_size=len(backward),
        )

    generated = set(_generated_elements(automaton))
    rows = [[automaton.trans[a][x] for a in automaton.alphabet] for x in range(automaton.size)]
    blocks = moore_partition(rows, automaton.output)
    first: Dict[int, int] = {}
    collisions = []
    for x, block in enumerate(blocks):
        if block in first:
            collisions.append((automaton.label(first[block]), automaton.label(x)))
        else:
            first[block] = x
    return ReachabilityReport(
        reachable=len(generated) == automaton.size,
        simple=not collisions,
        carrier_size=automaton.size,
        reachable_size=len(generated),
        observable_size=len(first),
        unreachable=[automaton.label(x) for x in range(automaton.size) if x not in generated],
        collisions=collisions,
    )


def structure_violations(automaton: DAutomaton) -> List[str]:
    """Check that each δ_a and the output map are morphisms of the variety."""
    kind = automaton.variety.kind
    if kind == VarietyKind.VECT:
        p = automaton.variety.prime
        entries = [x for m in automaton.matrices.values() for row in m for x in row]
        entries += list(automaton.initial_vector) + list(automaton.output_vector)
        return [f"entry {x} outside F_{p}" for x in entries if not 0 <= x < p]

    elements = range(automaton.size)
    violations = []
    out = automaton.output
    if kind == VarietyKind.POS:
        leq = automaton.order
        for p in elements:
            if not leq[p][p]:
                violations.append(f"order not reflexive at {automaton.label(p)}")
            for q in elements:
                if p != q and leq[p][q] and leq[q][p]:
                    violations.append(f"order not antisymmetric at {automaton.label(p)},{automaton.label(q)}")
                for r in elements:
                    if leq[p][q] and leq[q][r] and not leq[p][r]:
                        violations.append(f"order not transitive at {p},{q},{r}")
                if leq[p][q]:
                    if out[p] > out[q]:
                        violations.append(f"finals not an upper set at {automaton.label(p)}<={automaton.label(q)}")
                    for a, column in automaton.trans.items():
                        if not leq[column[p]][column[q]]:
                            violations.append(f"δ_{a} not monotone at {automaton.label(p)}<={automaton.label(q)}")
    elif kind == VarietyKind.PSET:
        bottom = automaton.bottom
        if out[bottom] != PointedBit.BOTTOM:
            violations.append("output does not preserve ⊥")
        for a, column in automaton.trans.items():
            if column[bottom] != bottom:
                violations.append(f"δ_{a} does not preserve ⊥")
    elif kind == VarietyKind.INV:
        inv = automaton.involution
        for q in elements:
            if inv[inv[q]] != q:
                violations.append(f"involution not involutive at {automaton.label(q)}")
            if out[inv[q]] != 1 - out[q]:
                violations.append(f"f(~q) != 1 - f(q) at {automaton.label(q)}")
            for a, column in automaton.trans.items():
                if column[inv[q]] != inv[column[q]]:
                    violations.append(f"δ_{a} does not commute with ~ at {automaton.label(q)}")
    elif kind == VarietyKind.JSL:
        join, bottom = automaton.join, automaton.bottom
        if out[bottom] != 0:
            violations.append("bottom is accepting")
        for x in elements:
            if join[x][x] != x or join[x][bottom] != x:
                violations.append(f"join not idempotent/unital at {automaton.label(x)}")
            for y in elements:
                if join[x][y] != join[y][x]:
                    violations.append(f"join not commutative at {automaton.label(x)},{automaton.label(y)}")
                if out[join[x][y]] != max(out[x], out[y]):
                    violations.append(f"finals not a prime upset at {automaton.label(x)},{automaton.label(y)}")
                for a, column in automaton.trans.items():
                    if column[join[x][y]] != join[column[x]][column[y]]:
                        violations.append(f"δ_{a} not join-preserving at {automaton.label(x)},{automaton.label(y)}")
                for z in elements:
                    if join[join[x][y]][z] != join[x][join[y][z]]:
                        violations.append(f"join not associative at {x},{y},{z}")
        for a, column in automaton.trans.items():
            if column[bottom] != bottom:
                violations.append(f"δ_{a} does not preserve the bottom")
    return violations


# Running free elements


def run_word(automaton: DAutomaton, word: str, start: Optional[int] = None) -> int:
    state = automaton.initial if start is None else start
    for letter in word:
        state = automaton.trans[letter][state]
    return state


def _linear_value(automaton: DAutomaton, word: str) -> int:
    p = automaton.variety.prime
    if automaton.size == 0:
        return 0
    matrices = _numpy_matrices(automaton)
    vector = np.asarray(automaton.initial_vector, dtype=np.int64)
    for letter in word:
        vector = (vector @ matrices[letter]) % p
    return int(vector @ np.asarray(automaton.output_vector, dtype=np.int64)) % p


def evaluate(automaton: DAutomaton, element: FreeElem) -> OutputValue:
    """The language accepted by the automaton, evaluated on an element of X*."""
    kind = automaton.variety.kind
    if kind == VarietyKind.VECT:
        p = automaton.variety.prime
        return sum(c * _linear_value(automaton, w) for w, c in element.terms) % p
    if kind == VarietyKind.JSL:
        state = automaton.bottom
        for word in element.words:
            state = automaton.join[state][run_word(automaton, word)]
        return automaton.output[state]
    if element.bottom:
        return automaton.output[automaton.bottom]
    state = run_word(automaton, element.word)
    if element.complemented:
        state = automaton.involution[state]
    return automaton.output[state]

