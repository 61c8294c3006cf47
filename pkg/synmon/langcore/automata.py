"""Classical DFA operations: minimization, derivatives, reversal and language comparison."""
import json
import logging
from collections import deque
from itertools import product
from typing import Callable, Dict, FrozenSet, Hashable, Iterator, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from synmon.errors import AlphabetError, DfaFormatError
from synmon.langcore.models import Dfa, Word

logger = logging.getLogger(__name__)


def words_up_to(alphabet: Sequence[str], max_length: int) -> Iterator[Word]:
    """All words of length <= max_length in length-lexicographic order."""
    for length in range(max_length + 1):
        for letters in product(alphabet, repeat=length):
            yield "".join(letters)


def membership(dfa: Dfa, word: Word) -> bool:
    return dfa.accepts(word)


def reachable_states(dfa: Dfa, start: Optional[int] = None) -> List[int]:
    """States reachable from `start`, in BFS order with letters in alphabet order."""
    origin = dfa.initial if start is None else start
    order = [origin]
    seen = {origin}
    queue = deque(order)
    while queue:
        state = queue.popleft()
        for target in dfa.trans[state]:
            if target not in seen:
                seen.add(target)
                order.append(target)
                queue.append(target)
    return order


def moore_partition(trans: Sequence[Sequence[int]], outputs: Sequence[Hashable]) -> List[int]:
    """Coarsest partition compatible with `outputs` and the transitions.

    Moore refinement over every listed state (no reachability trimming). Block
    numbers follow the first state of each block, so the result is deterministic.
    """
    blocks = _number_blocks(list(outputs))
    while True:
        signatures = [
            (blocks[q], tuple(blocks[t] for t in row)) for q, row in enumerate(trans)
        ]
        refined = _number_blocks(signatures)
        if max(refined, default=-1) == max(blocks, default=-1):
            return refined
        blocks = refined


def _number_blocks(keys: List[Hashable]) -> List[int]:
    numbering: Dict[Hashable, int] = {}
    return [numbering.setdefault(key, len(numbering)) for key in keys]


def minimize(dfa: Dfa) -> Dfa:
    """Canonical minimal DFA: trim, Moore-refine, renumber states by BFS."""
    order = reachable_states(dfa)
    position = {q: i for i, q in enumerate(order)}
    trans = [[position[t] for t in dfa.trans[q]] for q in order]
    outputs = [q in dfa.final_set for q in order]
    blocks = moore_partition(trans, outputs)

    quotient_trans = {}
    quotient_final = set()
    for i, q in enumerate(order):
        quotient_trans.setdefault(blocks[i], [blocks[t] for t in trans[i]])
        if outputs[i]:
            quotient_final.add(blocks[i])

    # Renumber by BFS from the initial block for a canonical form
    renumber = {blocks[0]: 0}
    queue = deque([blocks[0]])
    while queue:
        block = queue.popleft()
        for target in quotient_trans[block]:
            if target not in renumber:
                renumber[target] = len(renumber)
                queue.append(target)
    rows = [None] * len(renumber)
    for block, index in renumber.items():
        rows[index] = tuple(renumber[t] for t in quotient_trans[block])
    minimal = Dfa(
        alphabet=dfa.alphabet,
        states=len(rows),
        initial=0,
        finals=[renumber[b] for b in quotient_final],
        trans=rows,
        minimal=True,
    )
    logger.debug(f"Minimized DFA from {dfa.states} to {minimal.states} states")
    return minimal


def state_language(dfa: Dfa, state: int) -> Dfa:
    """Minimal DFA of the language accepted from `state`."""
    return minimize(dfa.model_copy(update={"initial": state, "minimal": False}))


def with_finals(dfa: Dfa, finals) -> Dfa:
    return Dfa(alphabet=dfa.alphabet, states=dfa.states, initial=dfa.initial,
               finals=finals, trans=dfa.trans)


def left_derivative(dfa: Dfa, letter: str) -> Dfa:
    """DFA for a^-1 L: move the initial state along `letter`, then re-minimize."""
    return state_language(dfa, dfa.step(dfa.initial, letter))


def right_derivative(dfa: Dfa, letter: str) -> Dfa:
    """DFA for L a^-1: accept in q iff trans(q, a) is accepting."""
    column = dfa.letter_index(letter)
    finals = [q for q in range(dfa.states) if dfa.trans[q][column] in dfa.final_set]
    return minimize(with_finals(dfa, finals))


def complement(dfa: Dfa) -> Dfa:
    return minimize(with_finals(dfa, [q for q in range(dfa.states) if q not in dfa.final_set]))


def reverse_language(dfa: Dfa) -> Dfa:
    """Minimal DFA of the reversed language via the determinized reversed automaton."""
    start = frozenset(dfa.finals)
    subsets = [start]
    index = {start: 0}
    rows = []
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        row = []
        for column in range(len(dfa.alphabet)):
            preimage = frozenset(q for q in range(dfa.states) if dfa.trans[q][column] in subset)
            if preimage not in index:
                index[preimage] = len(subsets)
                subsets.append(preimage)
                queue.append(preimage)
            row.append(index[preimage])
        rows.append(row)
    finals = [i for i, subset in enumerate(subsets) if dfa.initial in subset]
    reversed_dfa = Dfa(alphabet=dfa.alphabet, states=len(subsets), initial=0,
                       finals=finals, trans=rows)
    return minimize(reversed_dfa)


def _check_same_alphabet(d1: Dfa, d2: Dfa) -> None:
    if set(d1.alphabet) != set(d2.alphabet):
        raise AlphabetError(
            f"Alphabet mismatch: {''.join(d1.alphabet)} vs {''.join(d2.alphabet)}"
        )


def _product_search(d1: Dfa, d2: Dfa, bad: Callable[[bool, bool], bool]) -> Optional[Word]:
    """Shortest word (length-lex first) whose run ends in a `bad` pair of finalities."""
    _check_same_alphabet(d1, d2)
    start = (d1.initial, d2.initial)
    parent: Dict[Tuple[int, int], Optional[Tuple[Tuple[int, int], str]]] = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        if bad(pair[0] in d1.final_set, pair[1] in d2.final_set):
            letters = []
            while parent[pair] is not None:
                pair, letter = parent[pair]
                letters.append(letter)
            return "".join(reversed(letters))
        for letter in d1.alphabet:
            successor = (d1.step(pair[0], letter), d2.step(pair[1], letter))
            if successor not in parent:
                parent[successor] = (pair, letter)
                queue.append(successor)
    return None


def distinguishing_word(d1: Dfa, d2: Dfa) -> Optional[Word]:
    """Shortest word in exactly one of the two languages, or None if they are equal."""
    return _product_search(d1, d2, lambda f1, f2: f1 != f2)


def inclusion_counterexample(d1: Dfa, d2: Dfa) -> Optional[Word]:
    """Shortest word of L(d1) missing from L(d2), or None if L(d1) is included."""
    return _product_search(d1, d2, lambda f1, f2: f1 and not f2)


def language_equal(d1: Dfa, d2: Dfa) -> bool:
    return distinguishing_word(d1, d2) is None


def language_included(d1: Dfa, d2: Dfa) -> bool:
    return inclusion_counterexample(d1, d2) is None


def state_included(dfa: Dfa, p: int, q: int) -> bool:
    """Whether the language of state p is contained in the language of state q."""
    return language_included(
        dfa.model_copy(update={"initial": p}), dfa.model_copy(update={"initial": q})
    )


def empty_language_states(dfa: Dfa) -> FrozenSet[int]:
    """States from which no accepting state is reachable."""
    return frozenset(
        q for q in range(dfa.states)
        if not any(r in dfa.final_set for r in reachable_states(dfa, q))
    )


# Serialization


def dfa_to_json(dfa: Dfa) -> str:
    return dfa.model_dump_json()


def dfa_from_json(text: str) -> Dfa:
    try:
        return Dfa.model_validate(json.loads(text))
    except json.JSONDecodeError as error:
        raise DfaFormatError(f"DFA file is not valid JSON: {error}") from None
    except ValidationError as error:
        raise DfaFormatError(f"DFA file does not match the schema: {error}") from None


def dfa_to_dot(dfa: Dfa, name: str = "dfa") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in range(dfa.states):
        shape = "doublecircle" if q in dfa.final_set else "circle"
        lines.append(f'  q{q} [shape={shape}, label="{q}"];')
    lines.append(f"  __start -> q{dfa.initial};")
    for q in range(dfa.states):
        labels: Dict[int, List[str]] = {}
        for letter, target in zip(dfa.alphabet, dfa.trans[q]):
            labels.setdefault(target, []).append(letter)
        for target, letters in labels.items():
            lines.append(f'  q{q} -> q{target} [label="{",".join(letters)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
