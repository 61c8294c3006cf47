"""Syntactic congruence decided directly from two-sided word contexts.

Left contexts x range over words shorter than a bound that depends on the
variety, one per DFA state they reach. Right contexts y are kept one per set
G_y = {q : δ(q, y) ∈ F} and closed over every such set. L(x•u•y) only depends on
the state reached by x and on G_y.
"""
import logging
from collections import deque
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from synmon.config import MAX_ORACLE_STATES
from synmon.dautomata.construct import minimal_d_automaton
from synmon.dautomata.models import CapacityLimits
from synmon.errors import CapacityError, VarietyError
from synmon.freemon.algebra import eval_language, free_mul, free_complement
from synmon.freemon.models import FreeElem, Variety, VarietyKind
from synmon.langcore.automata import minimize
from synmon.langcore.models import Dfa
from synmon.synalg.models import KeyKind, SynAlgebra, TransitionElem

logger = logging.getLogger(__name__)

Signature = Tuple[int, ...]


class ContextSet:
    """Deduplicated left and right contexts for one language and variety."""

    def __init__(self, variety: Variety, dfa: Dfa, limits: Optional[CapacityLimits] = None):
        if not dfa.minimal:
            dfa = minimize(dfa)
        self.variety = variety
        self.dfa = dfa
        self.bound = context_bound(variety, dfa, limits)
        self.left = self._left_contexts()
        self.right = self._right_contexts()

    def _left_contexts(self) -> List[Tuple[str, int]]:
        dfa = self.dfa
        if self.bound <= 0:
            return []
        found = [("", dfa.initial)]
        seen = {dfa.initial}
        queue = deque(found)
        while queue:
            word, state = queue.popleft()
            if len(word) + 1 >= self.bound:
                continue
            for letter in dfa.alphabet:
                target = dfa.step(state, letter)
                if target not in seen:
                    seen.add(target)
                    found.append((word + letter, target))
                    queue.append((word + letter, target))
        return found

    def _right_contexts(self) -> List[Tuple[str, FrozenSet[int]]]:
        dfa = self.dfa
        if self.bound <= 0:
            return []
        start = frozenset(dfa.finals)
        found = [("", start)]
        seen = {start}
        queue = deque(found)
        while queue:
            word, states = queue.popleft()
            for letter in dfa.alphabet:
                column = dfa.letter_index(letter)
                # G_{ay} = states whose a-successor lies in G_y
                pre = frozenset(q for q in range(dfa.states) if dfa.trans[q][column] in states)
                if pre not in seen:
                    seen.add(pre)
                    found.append((letter + word, pre))
                    queue.append((letter + word, pre))
        return sorted(found, key=lambda context: (len(context[0]), context[0]))

    def pairs(self) -> List[Tuple[str, str]]:
        return [(x, y) for x, _ in self.left for y, _ in self.right]


def context_bound(variety: Variety, dfa: Dfa, limits: Optional[CapacityLimits] = None) -> int:
    """Context words shorter than this bound decide the congruence exactly."""
    n = dfa.states
    kind = variety.kind
    if kind == VarietyKind.JSL:
        if n > MAX_ORACLE_STATES:
            logger.error(f"JSL oracle bound 2^{n} refused")
            raise CapacityError("JSL oracle bound", n, MAX_ORACLE_STATES)
        return 2 ** n
    if kind == VarietyKind.VECT:
        return minimal_d_automaton(variety, dfa, limits).size
    return n


def _value(contexts: ContextSet, state: int, word: str, targets: FrozenSet[int]) -> int:
    return int(contexts.dfa.run(word, state) in targets)


def congruence_signature(contexts: ContextSet, u: FreeElem) -> Signature:
    """Outcomes L(x•u•y) over every context pair, encoded as integers."""
    kind = contexts.variety.kind
    signature = []
    for _, state in contexts.left:
        for _, targets in contexts.right:
            if kind == VarietyKind.JSL:
                value = int(any(_value(contexts, state, w, targets) for w in u.words))
            elif kind == VarietyKind.VECT:
                value = sum(c * _value(contexts, state, w, targets) for w, c in u.terms)
                value %= contexts.variety.prime
            elif u.bottom:
                value = 0
            else:
                value = _value(contexts, state, u.word, targets)
                if u.complemented:
                    value = 1 - value
            signature.append(value)
    return tuple(signature)


def congruence_oracle(
    variety: Variety, dfa: Dfa, u: FreeElem, v: FreeElem, limits: Optional[CapacityLimits] = None
) -> Union[bool, Tuple[bool, bool]]:
    """u ≡_L v, or for POS the pair (u ≤_L v, v ≤_L u)."""
    contexts = ContextSet(variety, dfa, limits)
    su, sv = congruence_signature(contexts, u), congruence_signature(contexts, v)
    if variety.kind == VarietyKind.POS:
        return signature_leq(su, sv), signature_leq(sv, su)
    return su == sv


def signature_leq(su: Signature, sv: Signature) -> bool:
    return all(a <= b for a, b in zip(su, sv))


def congruence_witness(
    variety: Variety, dfa: Dfa, u: FreeElem, v: FreeElem, limits: Optional[CapacityLimits] = None
) -> Optional[Tuple[str, str]]:
    """First context (x, y) with L(x•u•y) != L(x•v•y), or None when u ≡_L v."""
    contexts = ContextSet(variety, dfa, limits)
    su, sv = congruence_signature(contexts, u), congruence_signature(contexts, v)
    for (x, y), a, b in zip(contexts.pairs(), su, sv):
        if a != b:
            return x, y
    return None


def oracle_quotient(variety: Variety, dfa: Dfa) -> SynAlgebra:
    """X*/≡_L built from context signatures alone, without any transition maps.

    Words are explored breadth-first and only extended when they open a new
    class, which suffices because ≡_L is a congruence.
    """
    kind = variety.kind
    if kind not in (VarietyKind.SET, VarietyKind.POS, VarietyKind.PSET, VarietyKind.INV):
        raise VarietyError(f"Oracle quotient is only built for finite word varieties, not {variety}")
    if not dfa.minimal:
        dfa = minimize(dfa)
    contexts = ContextSet(variety, dfa)
    classes: Dict[Signature, int] = {}
    reps: List[FreeElem] = []

    def classify(u: FreeElem) -> Tuple[int, bool]:
        signature = congruence_signature(contexts, u)
        if signature in classes:
            return classes[signature], False
        classes[signature] = len(reps)
        reps.append(u)
        return classes[signature], True

    classify(FreeElem.of_word(variety, ""))
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for letter in dfa.alphabet:
            index, new = classify(FreeElem.of_word(variety, reps[i].word + letter))
            if new:
                queue.append(index)
    if kind == VarietyKind.INV:
        for i in range(len(reps)):
            classify(free_complement(variety, reps[i]))
    elif kind == VarietyKind.PSET:
        classify(FreeElem.bottom_of(variety))

    signatures = list(classes)
    mult = tuple(
        tuple(classify(free_mul(variety, u, v))[0] for v in reps) for u in reps
    )
    extras = {}
    if kind == VarietyKind.POS:
        extras["order"] = tuple(tuple(signature_leq(s, t) for t in signatures) for s in signatures)
    elif kind == VarietyKind.PSET:
        extras["zero"] = classify(FreeElem.bottom_of(variety))[0]
    elif kind == VarietyKind.INV:
        extras["involution"] = tuple(classify(free_complement(variety, u))[0] for u in reps)
    logger.info(f"Oracle quotient in {variety}: {len(reps)} classes")
    return SynAlgebra(
        variety=variety,
        alphabet=dfa.alphabet,
        keyed_by=KeyKind.SIGNATURE,
        elements=tuple(TransitionElem(key=s, representative=u) for s, u in zip(signatures, reps)),
        unit=0,
        mult=mult,
        gen_map={a: classify(FreeElem.of_word(variety, a))[0] for a in dfa.alphabet},
        output_map=tuple(eval_language(variety, dfa, u) for u in reps),
        **extras,
    )
