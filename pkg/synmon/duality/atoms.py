"""Syntactic monoids from the atoms of the local variety generated by L^rev."""
import logging
from collections import deque
from typing import Dict, List, Optional, Tuple

from synmon.duality.models import Atom, AtomSystem, DerivativePair, DerivativeSystem
from synmon.errors import AtomAmbiguityError, DualityViolation
from synmon.freemon.models import FreeElem, Variety, VarietyKind
from synmon.langcore.automata import (
    language_included,
    minimize,
    reachable_states,
    reverse_language,
)
from synmon.langcore.models import Dfa
from synmon.synalg.closure import compose, syntactic_algebra
from synmon.synalg.models import KeyKind, SynAlgebra, TransitionElem, VerificationReport
from synmon.synalg.verify import iso_as_quotients

logger = logging.getLogger(__name__)
verify_logger = logging.getLogger("verify")

SET = Variety.of(VarietyKind.SET)


def _preimage(dfa: Dfa, letter: str, targets: frozenset) -> frozenset:
    column = dfa.letter_index(letter)
    return frozenset(q for q in range(dfa.states) if dfa.trans[q][column] in targets)


def backward_closure(dfa: Dfa) -> List[Tuple[frozenset, str]]:
    """Sets {s : δ(s, v) ∈ F} for all words v, each with its first word v."""
    start = frozenset(dfa.finals)
    found = [(start, "")]
    seen = {start}
    queue = deque(found)
    while queue:
        targets, word = queue.popleft()
        for letter in dfa.alphabet:
            pre = _preimage(dfa, letter, targets)
            if pre not in seen:
                seen.add(pre)
                found.append((pre, letter + word))
                queue.append((pre, letter + word))
    return found


def _shortest_words(dfa: Dfa) -> Dict[int, str]:
    words = {dfa.initial: ""}
    queue = deque([dfa.initial])
    while queue:
        state = queue.popleft()
        for letter in dfa.alphabet:
            target = dfa.step(state, letter)
            if target not in words:
                words[target] = words[state] + letter
                queue.append(target)
    return words


def _pair_dfa(base: Dfa, pair: DerivativePair) -> Dfa:
    return minimize(Dfa(alphabet=base.alphabet, states=base.states, initial=pair.state,
                        finals=list(pair.targets), trans=base.trans))


def pair_language(system: DerivativeSystem, pair: DerivativePair) -> Dfa:
    """Minimal DFA of the derivative denoted by `pair`."""
    return _pair_dfa(system.base, pair)


def build_derivative_system(dfa: Dfa) -> DerivativeSystem:
    """All two-sided derivatives of L^rev, deduplicated by language."""
    base = reverse_language(dfa)
    closure = backward_closure(base)
    reach = _shortest_words(base)
    pairs = []
    languages = set()
    for state in reachable_states(base):
        for targets, right in closure:
            pair = DerivativePair(
                state=state, targets=tuple(sorted(targets)), left_context=reach[state], right_context=right
            )
            language = pair_language_key(base, pair)
            if language not in languages:
                languages.add(language)
                pairs.append(pair)
    system = DerivativeSystem(
        base=base, pairs=tuple(pairs), right_sets=tuple(tuple(sorted(t)) for t, _ in closure)
    )
    logger.info(f"Derivative system: base of {base.states} states, {len(pairs)} derivatives")
    return system


def pair_language_key(base: Dfa, pair: DerivativePair) -> Tuple:
    """Canonical minimal DFA of a pair; equal keys iff equal languages."""
    minimal = _pair_dfa(base, pair)
    return minimal.finals, minimal.trans


def _profile(system: DerivativeSystem, key: Tuple[int, ...]) -> Tuple[bool, ...]:
    return tuple(key[pair.state] in pair.targets for pair in system.pairs)


def _atom_dfa(atoms: AtomSystem, z: int) -> Dfa:
    """Words w of the base alphabet whose transition map lies in atom z."""
    alphabet = atoms.derivatives.base.alphabet
    members = set(atoms.atoms[z].members)
    return Dfa(
        alphabet=alphabet,
        states=len(atoms.maps),
        initial=0,
        finals=sorted(members),
        trans=[tuple(atoms.map_trans[a][m] for a in alphabet) for m in range(len(atoms.maps))],
    )


def _prefixed_dfa(atoms: AtomSystem, z: int, letter: str) -> Dfa:
    """Words w with a·w in atom z, i.e. a⁻¹z."""
    return minimize(_atom_dfa(atoms, z).model_copy(
        update={"initial": atoms.map_trans[letter][0], "minimal": False}
    ))


def compute_atoms(system: DerivativeSystem) -> AtomSystem:
    """Group the base's transition maps by derivative profile and link the atoms."""
    base = system.base
    identity = tuple(range(base.states))
    letter_maps = {
        letter: tuple(base.step(q, letter) for q in range(base.states)) for letter in base.alphabet
    }
    maps = [identity]
    words = [""]
    index = {identity: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for letter in base.alphabet:
            key = compose(maps[i], letter_maps[letter])
            if key not in index:
                index[key] = len(maps)
                maps.append(key)
                words.append(words[i] + letter)
                queue.append(index[key])
    map_trans = {
        letter: tuple(index[compose(m, letter_maps[letter])] for m in maps)
        for letter in base.alphabet
    }

    groups: Dict[Tuple[bool, ...], List[int]] = {}
    for i, key in enumerate(maps):
        groups.setdefault(_profile(system, key), []).append(i)
    atom_list = [
        Atom(profile=profile, members=tuple(members), representative=words[members[0]])
        for profile, members in groups.items()
    ]
    atom_of_map = [0] * len(maps)
    for z, atom in enumerate(atom_list):
        for m in atom.members:
            atom_of_map[m] = z

    # z -a-> z' where a·w lies in z' for w in z; δ_{aw} = δ_a followed by δ_w
    trans = {
        letter: tuple(
            atom_of_map[index[compose(letter_maps[letter], maps[atom.members[0]])]]
            for atom in atom_list
        )
        for letter in base.alphabet
    }
    atoms = AtomSystem(
        derivatives=system, maps=tuple(maps), map_words=tuple(words), map_trans=map_trans,
        atoms=tuple(atom_list), atom_of_map=tuple(atom_of_map), initial=atom_of_map[0], trans=trans,
    )
    _check_atom_transitions(atoms)
    logger.info(f"Atoms: {atoms.size} from {len(maps)} transition maps")
    return atoms


def _check_atom_transitions(atoms: AtomSystem) -> None:
    for letter, column in atoms.trans.items():
        for z, target in enumerate(column):
            if not language_included(_atom_dfa(atoms, z), _prefixed_dfa(atoms, target, letter)):
                raise AtomAmbiguityError(
                    f"Atom {atoms.atoms[z].representative or 'ε'} has no unique {letter}-successor"
                )


def reading_words(atoms: AtomSystem, per_atom: int = 2) -> List[List[str]]:
    """The `per_atom` length-lex first words read from the initial atom into each atom."""
    found: List[List[str]] = [[] for _ in atoms.atoms]
    found[atoms.initial].append("")
    queue = deque([("", atoms.initial)])
    alphabet = atoms.derivatives.base.alphabet
    while queue:
        word, z = queue.popleft()
        for letter in alphabet:
            target = atoms.trans[letter][z]
            if len(found[target]) < per_atom:
                found[target].append(word + letter)
                queue.append((word + letter, target))
    return found


def read(atoms: AtomSystem, word: str, start: Optional[int] = None) -> int:
    z = atoms.initial if start is None else start
    for letter in word:
        z = atoms.trans[letter][z]
    return z


def dual_monoid(atoms: AtomSystem) -> SynAlgebra:
    """Monoid on the atoms: z • z' is the atom read on r(z) r(z').

    Reading w from the initial atom lands in the atom of w^rev, so the product is
    checked against the second reading word of both factors before it is accepted.
    """
    readings = reading_words(atoms)
    n = atoms.size
    mult = []
    witnesses = []
    for z in range(n):
        row = []
        for z2 in range(n):
            products = {read(atoms, u + w) for u in readings[z] for w in readings[z2]}
            if len(products) > 1:
                witnesses.append(
                    f"{{{', '.join(u or 'ε' for u in readings[z])}}} • {{{', '.join(w or 'ε' for w in readings[z2])}}}"
                )
            row.append(read(atoms, readings[z][0] + readings[z2][0]))
        mult.append(tuple(row))
    if witnesses:
        raise DualityViolation("Dual monoid product depends on the representative", witnesses)

    base = atoms.derivatives.base
    return SynAlgebra(
        variety=SET,
        alphabet=base.alphabet,
        keyed_by=KeyKind.SIGNATURE,
        elements=tuple(
            TransitionElem(key=tuple(int(b) for b in atom.profile),
                           representative=FreeElem.of_word(SET, readings[z][0]))
            for z, atom in enumerate(atoms.atoms)
        ),
        unit=atoms.initial,
        mult=tuple(mult),
        gen_map={a: atoms.trans[a][atoms.initial] for a in base.alphabet},
        # r(z)^rev lies in z; it belongs to L^rev iff r(z) belongs to L
        output_map=tuple(int(base.accepts(readings[z][0][::-1])) for z in range(n)),
    )


def _report(name: str, passed: bool, data: dict, witnesses: List[str]) -> VerificationReport:
    report = VerificationReport.from_witnesses(name, [] if passed else (witnesses or [name]), **data)
    if report.passed:
        verify_logger.info(f"{name}: {data}")
    else:
        verify_logger.warning(f"{name} failed: {data}")
    return report


def verify_syntactic_duality(dfa: Dfa) -> VerificationReport:
    """Atoms of the local variety of L^rev against Syn L in SET."""
    if not dfa.minimal:
        dfa = minimize(dfa)
    system = build_derivative_system(dfa)
    atoms = compute_atoms(system)
    syn = syntactic_algebra(SET, dfa)
    data = {"derivatives": len(system.pairs), "atoms": atoms.size, "syn_size": syn.size}
    try:
        dual = dual_monoid(atoms)
    except DualityViolation as error:
        data["isomorphic"] = False
        return _report("Syntactic duality", False, data, error.witnesses)
    isomorphic = atoms.size == syn.size and iso_as_quotients(dual, syn)
    data["isomorphic"] = isomorphic
    data["generators"] = {a: [dual.gen_map[a], syn.gen_map[a]] for a in dfa.alphabet}
    witnesses = [] if isomorphic else [f"atoms={atoms.size} syn={syn.size}"]
    return _report("Syntactic duality", isomorphic, data, witnesses)


def left_derivative_atoms(dfa: Dfa) -> Tuple[Dfa, List[frozenset]]:
    """Atoms of the boolean algebra of left derivatives of L^rev, as the sets
    G_w = {q : δ(q, w) ∈ F}, and the dual automaton they carry."""
    base = reverse_language(dfa)
    closure = backward_closure(base)
    sets = [targets for targets, _ in closure]
    index = {targets: i for i, targets in enumerate(sets)}
    # w in atom G  ==>  a·w in atom pre_a(G)
    dual = Dfa(
        alphabet=base.alphabet,
        states=len(sets),
        initial=0,
        finals=[i for i, targets in enumerate(sets) if base.initial in targets],
        trans=[tuple(index[_preimage(base, a, targets)] for a in base.alphabet) for targets in sets],
    )
    return dual, sets


def verify_minimal_duality(dfa: Dfa) -> VerificationReport:
    """Left-derivative atoms of L^rev against the states of Min(L)."""
    minimal = dfa if dfa.minimal else minimize(dfa)
    dual, sets = left_derivative_atoms(minimal)
    canonical = minimize(dual)
    same = canonical.model_dump() == minimal.model_dump()
    data = {"atoms": len(sets), "min_states": minimal.states, "isomorphic": same}
    passed = same and len(sets) == minimal.states
    return _report("Minimal duality", passed, data, [f"atoms={len(sets)} min={minimal.states}"])


def atoms_to_dot(atoms: AtomSystem, name: str = "dual") -> str:
    """The dual automaton on atoms; doubled nodes lie in L^rev."""
    base = atoms.derivatives.base
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  start [shape=point];"]
    for z, atom in enumerate(atoms.atoms):
        accepting = base.accepts(atom.representative)
        shape = "doublecircle" if accepting else "circle"
        lines.append(f'  z{z} [shape={shape}, label="{atom.representative or "ε"}"];')
    lines.append(f"  start -> z{atoms.initial};")
    for z in range(atoms.size):
        targets: Dict[int, List[str]] = {}
        for letter in base.alphabet:
            targets.setdefault(atoms.trans[letter][z], []).append(letter)
        for target, letters in targets.items():
            lines.append(f'  z{z} -> z{target} [label="{",".join(letters)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

