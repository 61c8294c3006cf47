"""Transition D-monoids T(Min L) by generator closure, and Syn L through them."""
import logging
from collections import deque
from typing import Dict, List, Optional, Tuple

import numpy as np

from synmon.dautomata.construct import minimal_d_automaton
from synmon.dautomata.linalg import SpanBuilder, as_matrix, to_rows
from synmon.dautomata.models import CapacityLimits, DAutomaton
from synmon.errors import CapacityError
from synmon.freemon.algebra import eval_language
from synmon.freemon.models import FreeElem, Variety, VarietyKind
from synmon.langcore.automata import minimize
from synmon.langcore.models import Dfa
from synmon.synalg.models import KeyKind, SynAlgebra, TransitionElem

logger = logging.getLogger(__name__)

Key = Tuple[int, ...]


def compose(first: Key, then: Key) -> Key:
    """Diagrammatic composition: apply `first`, then `then`."""
    return tuple(then[x] for x in first)


class _Closure:
    """Elements discovered so far, indexed by canonical key."""

    def __init__(self, limits: CapacityLimits):
        self.limits = limits
        self.keys: List[Key] = []
        self.reps: List[FreeElem] = []
        self.index: Dict[Key, int] = {}

    def add(self, key: Key, representative: FreeElem) -> Optional[int]:
        """Register `key`; returns its index if it is new, None otherwise."""
        if key in self.index:
            return None
        if len(self.keys) >= self.limits.max_elements:
            logger.error(f"Transition monoid closure passed {self.limits.max_elements} elements")
            raise CapacityError("Transition monoid closure", len(self.keys) + 1, self.limits.max_elements)
        self.index[key] = len(self.keys)
        self.keys.append(key)
        self.reps.append(representative)
        return self.index[key]


def transition_monoid(automaton: DAutomaton, limits: Optional[CapacityLimits] = None) -> SynAlgebra:
    """Image of X* in the endomaps of the automaton's carrier.

    Plain transition maps δ_w are found breadth-first, so each representative is
    the length-lex first word; INV then adds complemented maps, PSET the constant
    ⊥ map and JSL all finite joins together with the constant-bottom map.
    """
    limits = limits or CapacityLimits()
    if automaton.is_linear:
        return _linear_monoid(automaton, limits)

    variety = automaton.variety
    kind = variety.kind
    closure = _Closure(limits)
    generators = {a: automaton.trans[a] for a in automaton.alphabet}

    identity = tuple(range(automaton.size))
    closure.add(identity, FreeElem.of_word(variety, ""))
    queue = deque([0])
    words = [""]
    while queue:
        i = queue.popleft()
        for letter in automaton.alphabet:
            key = compose(closure.keys[i], generators[letter])
            word = words[i] + letter
            if closure.add(key, FreeElem.of_word(variety, word)) is not None:
                words.append(word)
                queue.append(len(closure.keys) - 1)
    plain = len(closure.keys)

    if kind == VarietyKind.INV:
        for i in range(plain):
            closure.add(
                compose(closure.keys[i], automaton.involution),
                FreeElem.complemented_word(variety, words[i]),
            )
    elif kind == VarietyKind.PSET:
        closure.add((automaton.bottom,) * automaton.size, FreeElem.bottom_of(variety))
    elif kind == VarietyKind.JSL:
        _saturate_joins(closure, automaton)
        closure.add((automaton.bottom,) * automaton.size, FreeElem.word_set(variety, []))

    keys = closure.keys
    index = closure.index
    mult = tuple(tuple(index[compose(u, v)] for v in keys) for u in keys)
    elements = tuple(TransitionElem(key=k, representative=r) for k, r in zip(keys, closure.reps))
    extras = {}
    if kind == VarietyKind.POS:
        leq = automaton.order
        extras["order"] = tuple(
            tuple(all(leq[u[x]][v[x]] for x in identity) for v in keys) for u in keys
        )
    elif kind == VarietyKind.PSET:
        extras["zero"] = index[(automaton.bottom,) * automaton.size]
    elif kind == VarietyKind.INV:
        extras["involution"] = tuple(index[compose(k, automaton.involution)] for k in keys)
    elif kind == VarietyKind.JSL:
        extras["zero"] = index[(automaton.bottom,) * automaton.size]
        extras["addition"] = tuple(
            tuple(index[_join_key(automaton, u, v)] for v in keys) for u in keys
        )

    algebra = SynAlgebra(
        variety=variety,
        alphabet=automaton.alphabet,
        keyed_by=KeyKind.MAP,
        elements=elements,
        unit=0,
        mult=mult,
        gen_map={a: index[generators[a]] for a in automaton.alphabet},
        output_map=tuple(automaton.output[k[automaton.initial]] for k in keys),
        **extras,
    )
    logger.info(f"Transition monoid in {variety}: {algebra.size} elements")
    return algebra


def _join_key(automaton: DAutomaton, u: Key, v: Key) -> Key:
    return tuple(automaton.join[x][y] for x, y in zip(u, v))


def _saturate_joins(closure: _Closure, automaton: DAutomaton) -> None:
    """Close under pointwise joins; the representative of a join is the union."""
    variety = automaton.variety
    done = 0
    while done < len(closure.keys):
        current = len(closure.keys)
        for i in range(current):
            for j in range(max(i + 1, done), current):
                key = _join_key(automaton, closure.keys[i], closure.keys[j])
                closure.add(
                    key,
                    FreeElem.word_set(variety, closure.reps[i].words + closure.reps[j].words),
                )
        done = current


def _linear_monoid(automaton: DAutomaton, limits: CapacityLimits) -> SynAlgebra:
    """Basis of span{M_w}, found breadth-first, with its structure constants."""
    variety = automaton.variety
    p = variety.prime
    d = automaton.size
    matrices = {a: as_matrix(m, p, d).reshape(d, d) for a, m in automaton.matrices.items()}
    span = SpanBuilder(d * d, p)
    words: List[str] = []
    if d:
        span.add(np.eye(d, dtype=np.int64).reshape(-1))
        words.append("")
    queue = deque(range(len(words)))
    while queue:
        i = queue.popleft()
        current = span.vectors[i].reshape(d, d)
        for letter in automaton.alphabet:
            if span.add(((current @ matrices[letter]) % p).reshape(-1)):
                if len(span) > limits.max_elements:
                    raise CapacityError("Linear span closure", len(span), limits.max_elements)
                words.append(words[i] + letter)
                queue.append(len(span) - 1)

    basis = [v.reshape(d, d) for v in span.vectors]

    def coordinates(matrix: np.ndarray) -> Tuple[int, ...]:
        return tuple(int(x) for x in span.coordinates((matrix % p).reshape(-1)))

    structure = tuple(
        tuple(coordinates(left @ right) for right in basis) for left in basis
    )
    initial = np.asarray(automaton.initial_vector, dtype=np.int64)
    final = np.asarray(automaton.output_vector, dtype=np.int64)
    algebra = SynAlgebra(
        variety=variety,
        alphabet=automaton.alphabet,
        keyed_by=KeyKind.MATRIX,
        elements=tuple(
            TransitionElem(key=tuple(int(x) for x in m.reshape(-1)), representative=FreeElem.of_word(variety, w))
            for m, w in zip(basis, words)
        ),
        structure=structure,
        unit_coords=coordinates(np.eye(d, dtype=np.int64)) if d else (),
        gen_coords={a: coordinates(matrices[a]) if d else () for a in automaton.alphabet},
        gen_matrices=dict(automaton.matrices),
        output_map=tuple(int(initial @ m @ final) % p for m in basis),
    )
    logger.info(f"Transition algebra in {variety}: dimension {algebra.size}")
    return algebra


def syntactic_algebra(variety: Variety, dfa: Dfa, limits: Optional[CapacityLimits] = None) -> SynAlgebra:
    """Syn L as the transition D-monoid of Min(L), with f_L read off the language."""
    if not dfa.minimal:
        dfa = minimize(dfa)
    algebra = transition_monoid(minimal_d_automaton(variety, dfa, limits), limits)
    output_map = tuple(
        eval_language(variety, dfa, element.representative) for element in algebra.elements
    )
    return algebra.model_copy(update={"output_map": output_map})


def matrix_of(algebra: SynAlgebra, i: int) -> np.ndarray:
    """The d×d matrix stored as the key of basis element i."""
    d = int(round(len(algebra.elements[i].key) ** 0.5))
    return np.asarray(algebra.elements[i].key, dtype=np.int64).reshape(d, d)


def basis_matrices(algebra: SynAlgebra) -> List[Tuple[Tuple[int, ...], ...]]:
    return [to_rows(matrix_of(algebra, i)) for i in range(algebra.size)]
