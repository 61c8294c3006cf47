"""Checks on syntactic algebras: recognition, algebra laws, isomorphism, and
agreement of the transition route with the congruence oracle."""
import logging
import random
from collections import deque
from itertools import combinations, islice, product
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from synmon.config import DEFAULT_SEED, RECOGNITION_SAMPLES
from synmon.dautomata.linalg import SpanBuilder, as_matrix, rank
from synmon.errors import AlphabetError, VarietyError
from synmon.freemon.algebra import eval_language, format_free_elem, format_output, free_mul, lift_word
from synmon.freemon.models import FreeElem, PointedBit, Variety, VarietyKind
from synmon.langcore.automata import minimize, words_up_to
from synmon.langcore.models import Dfa
from synmon.synalg.closure import compose, matrix_of
from synmon.synalg.models import KeyKind, SynAlgebra, VerificationReport
from synmon.synalg.oracle import ContextSet, congruence_signature, signature_leq

logger = logging.getLogger(__name__)
verify_logger = logging.getLogger("verify")

MAX_WITNESSES = 10
EXHAUSTIVE_LAW_SIZE = 150
SAMPLED_TRIPLES = 20000


def _record(report: VerificationReport, subject: str) -> VerificationReport:
    if report.passed:
        verify_logger.info(f"{subject}: {report.message}")
    else:
        verify_logger.warning(f"{subject}: {report.message}; first witness {report.witnesses[0]}")
    return report


def _label(algebra: SynAlgebra, i: int) -> str:
    return format_free_elem(algebra.elements[i].representative)


# Recognition


def _random_element(variety: Variety, alphabet, rng: random.Random, max_length: int) -> FreeElem:
    def word() -> str:
        return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_length)))

    kind = variety.kind
    if kind == VarietyKind.JSL:
        return FreeElem.word_set(variety, [word() for _ in range(rng.randint(0, 3))])
    if kind == VarietyKind.VECT:
        return FreeElem.polynomial(
            variety, {word(): rng.randint(1, variety.prime - 1) for _ in range(rng.randint(0, 3))}
        )
    if kind == VarietyKind.PSET and rng.random() < 0.05:
        return FreeElem.bottom_of(variety)
    if kind == VarietyKind.INV and rng.random() < 0.5:
        return FreeElem.complemented_word(variety, word())
    return lift_word(variety, word())


def _table_witnesses(algebra: SynAlgebra) -> Iterator[str]:
    """Table entries that disagree with composing the stored keys."""
    if algebra.keyed_by == KeyKind.MAP:
        index = {e.key: i for i, e in enumerate(algebra.elements)}
        for i, u in enumerate(algebra.elements):
            for j, v in enumerate(algebra.elements):
                expected = index.get(compose(u.key, v.key))
                if algebra.mult[i][j] != expected:
                    yield f"mult({_label(algebra, i)}, {_label(algebra, j)}) = {_label(algebra, algebra.mult[i][j])}"
    elif algebra.keyed_by == KeyKind.MATRIX:
        p = algebra.variety.prime
        basis = [matrix_of(algebra, i) for i in range(algebra.size)]
        for i, j in product(range(algebra.size), repeat=2):
            combined = sum(
                (c * basis[k] for k, c in enumerate(algebra.structure[i][j])),
                np.zeros_like(basis[0]),
            )
            if not np.array_equal((basis[i] @ basis[j]) % p, combined % p):
                yield f"structure({_label(algebra, i)}, {_label(algebra, j)})"


def _generator_witnesses(algebra: SynAlgebra, dfa: Dfa) -> Iterator[str]:
    """Elements m and letters a where mult(m, e_L(a)) is not the class of rep(m)·a.

    Classes are judged by congruence signatures from the DFA, or by the automaton's
    letter matrices for VECT, never by the table itself.
    """
    variety = algebra.variety
    if algebra.is_linear:
        if not algebra.gen_matrices or algebra.size == 0:
            return
        p = variety.prime
        basis = [matrix_of(algebra, i) for i in range(algebra.size)]
        n = basis[0].shape[0]
        for i, a in product(range(algebra.size), algebra.alphabet):
            expected = (basis[i] @ as_matrix(algebra.gen_matrices[a], p, n)) % p
            coords = algebra.coords_mul(tuple(int(k == i) for k in range(algebra.size)), algebra.gen_coords[a])
            got = sum((c * basis[k] for k, c in enumerate(coords)), np.zeros_like(basis[0])) % p
            if not np.array_equal(expected, got):
                yield f"e_i·e_L({a}) at {_label(algebra, i)} is not M_w·M_{a}"
        return
    contexts = ContextSet(variety, dfa)
    for i, element in enumerate(algebra.elements):
        for a in algebra.alphabet:
            j = algebra.mult[i][algebra.gen_map[a]]
            u = free_mul(variety, element.representative, lift_word(variety, a))
            if congruence_signature(contexts, u) != congruence_signature(contexts, algebra.elements[j].representative):
                yield f"mult({_label(algebra, i)}, {a}) = {_label(algebra, j)}, but {format_free_elem(u)} is not congruent to it"


def verify_recognition(
    algebra: SynAlgebra,
    dfa: Dfa,
    seed: int = DEFAULT_SEED,
    samples: int = RECOGNITION_SAMPLES,
) -> VerificationReport:
    """Check that L = f_L ∘ e_L with e_L given by the generator tables.

    Table entries are checked against key composition, every product
    mult(m, e_L(a)) must be the class of rep(m)·a, every representative must
    map back to its own element, and f_L must agree with L on every
    representative and on `samples` seeded random elements.
    """
    variety = algebra.variety
    witnesses: List[str] = []
    witnesses.extend(_table_witnesses(algebra))
    witnesses.extend(islice(_generator_witnesses(algebra, dfa), MAX_WITNESSES))
    broken = bounded_mult_check(algebra, max_length=3)
    if broken is not None:
        witnesses.append(f"e_L is not multiplicative on {broken}")

    for i, element in enumerate(algebra.elements):
        u = element.representative
        expected = tuple(int(k == i) for k in range(algebra.size)) if algebra.is_linear else i
        if algebra.class_of(u) != expected:
            witnesses.append(f"representative {format_free_elem(u)} does not map to its element")
        if algebra.output_of(algebra.class_of(u)) != eval_language(variety, dfa, u):
            witnesses.append(f"f_L({format_free_elem(u)}) disagrees with L")

    rng = random.Random(seed)
    max_length = 2 * dfa.states + 2
    for _ in range(samples):
        u = _random_element(variety, algebra.alphabet, rng, max_length)
        value = algebra.output_of(algebra.class_of(u))
        if value != eval_language(variety, dfa, u):
            witnesses.append(f"L({format_free_elem(u)}) = {format_output(eval_language(variety, dfa, u))}, f_L gives {format_output(value)}")
        if len(witnesses) > MAX_WITNESSES:
            break

    report = VerificationReport.from_witnesses(
        "Recognition", witnesses[:MAX_WITNESSES], elements=algebra.size, samples=samples, seed=seed
    )
    return _record(report, f"recognition in {variety}")


# Algebra laws


def _triples(n: int, rng: random.Random) -> Iterator[Tuple[int, int, int]]:
    if n <= EXHAUSTIVE_LAW_SIZE:
        yield from product(range(n), repeat=3)
    else:
        for _ in range(SAMPLED_TRIPLES):
            yield rng.randrange(n), rng.randrange(n), rng.randrange(n)


def _associativity(table: np.ndarray, rng: random.Random, name: str) -> List[str]:
    n = table.shape[0]
    if n <= EXHAUSTIVE_LAW_SIZE:
        witnesses = []
        for x in range(n):
            # (x y) z against x (y z) for all y, z at once
            left = table[table[x]]
            right = table[x][table]
            bad = np.argwhere(left != right)
            witnesses.extend(f"{name} not associative at ({x},{y},{z})" for y, z in bad[:2])
        return witnesses
    return [
        f"{name} not associative at ({x},{y},{z})"
        for x, y, z in _triples(n, rng) if table[table[x, y], z] != table[x, table[y, z]]
    ]


def word_span_rank(algebra: SynAlgebra) -> int:
    """Rank of {M_w : |w| < 2n} for the n×n letter matrices of the reduced automaton."""
    p = algebra.variety.prime
    n = len(next(iter(algebra.gen_matrices.values()), ()))
    if n == 0:
        return 0
    letters = {a: as_matrix(rows, p, n) for a, rows in algebra.gen_matrices.items()}
    span = SpanBuilder(n * n, p)
    span.add(np.eye(n, dtype=np.int64).reshape(-1))
    frontier = list(span.vectors)
    # layer k adds the words of length k not already spanned
    for _ in range(2 * n - 1):
        grown = []
        for vector in frontier:
            for a in algebra.alphabet:
                moved = (vector.reshape(n, n) @ letters[a]) % p
                if span.add(moved.reshape(-1)):
                    grown.append(span.vectors[-1])
        if not grown:
            break
        frontier = grown
    return len(span)


def _linear_laws(algebra: SynAlgebra) -> List[str]:
    witnesses = []
    d = algebra.size
    if algebra.gen_matrices:
        spanned = word_span_rank(algebra)
        if spanned != d:
            witnesses.append(f"dimension {d} differs from rank {spanned} of the short-word matrices")
    if d == 0:
        return witnesses
    p = algebra.variety.prime
    c = np.asarray(algebra.structure, dtype=np.int64)
    # (e_i e_j) e_k and e_i (e_j e_k) as coordinate arrays
    left = np.einsum("ijm,mkn->ijkn", c, c) % p
    right = np.einsum("jkm,imn->ijkn", c, c) % p
    for i, j, k in np.argwhere(np.any(left != right, axis=3))[:MAX_WITNESSES]:
        witnesses.append(f"structure constants not associative at ({i},{j},{k})")
    unit = np.asarray(algebra.unit_coords, dtype=np.int64)
    identity = np.eye(d, dtype=np.int64)
    if not np.array_equal(np.einsum("i,ijk->jk", unit, c) % p, identity):
        witnesses.append("unit is not a left unit")
    if not np.array_equal(np.einsum("j,ijk->ik", unit, c) % p, identity):
        witnesses.append("unit is not a right unit")
    return witnesses


def check_algebra_laws(algebra: SynAlgebra, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Associativity, unit, and the laws of the variety's extra structure."""
    if algebra.is_linear:
        report = VerificationReport.from_witnesses("Algebra laws", _linear_laws(algebra), dimension=algebra.size)
        return _record(report, f"laws in {algebra.variety}")

    rng = random.Random(seed)
    n = algebra.size
    mult = np.asarray(algebra.mult, dtype=np.int64).reshape(n, n)
    out = algebra.output_map
    e = algebra.unit
    witnesses = _associativity(mult, rng, "mult")
    witnesses += [f"unit law fails at {_label(algebra, x)}" for x in range(n)
                  if mult[e, x] != x or mult[x, e] != x]

    kind = algebra.variety.kind
    if kind == VarietyKind.POS:
        leq = algebra.order
        for x, y in product(range(n), repeat=2):
            if x == y and not leq[x][x]:
                witnesses.append(f"order not reflexive at {_label(algebra, x)}")
            if x != y and leq[x][y] and leq[y][x]:
                witnesses.append(f"order not antisymmetric at {_label(algebra, x)}, {_label(algebra, y)}")
            if leq[x][y]:
                if out[x] > out[y]:
                    witnesses.append(f"f_L not monotone at {_label(algebra, x)} <= {_label(algebra, y)}")
                for z in range(n):
                    if not leq[mult[x, z]][mult[y, z]] or not leq[mult[z, x]][mult[z, y]]:
                        witnesses.append(f"mult not monotone at {_label(algebra, x)} <= {_label(algebra, y)}")
                        break
        for x, y, z in _triples(n, rng):
            if leq[x][y] and leq[y][z] and not leq[x][z]:
                witnesses.append(f"order not transitive at ({x},{y},{z})")
    elif kind == VarietyKind.PSET:
        z = algebra.zero
        if out[z] != PointedBit.BOTTOM:
            witnesses.append("f_L(zero) is not ⊥")
        witnesses += [f"zero not absorbing at {_label(algebra, x)}" for x in range(n)
                      if mult[x, z] != z or mult[z, x] != z]
    elif kind == VarietyKind.INV:
        inv = algebra.involution
        for x in range(n):
            if inv[inv[x]] != x:
                witnesses.append(f"involution not involutive at {_label(algebra, x)}")
            if out[inv[x]] != 1 - out[x]:
                witnesses.append(f"f_L(~m) != 1 - f_L(m) at {_label(algebra, x)}")
            for y in range(n):
                target = inv[mult[x, y]]
                if mult[inv[x], y] != target or mult[x, inv[y]] != target:
                    witnesses.append(f"complement does not commute with mult at {_label(algebra, x)}, {_label(algebra, y)}")
                    break
    elif kind == VarietyKind.JSL:
        add = np.asarray(algebra.addition, dtype=np.int64).reshape(n, n)
        zero = algebra.zero
        witnesses += _associativity(add, rng, "addition")
        if out[zero] != 0:
            witnesses.append("f_L(0) != 0")
        for x in range(n):
            if add[x, x] != x or add[x, zero] != x:
                witnesses.append(f"addition not idempotent or unital at {_label(algebra, x)}")
            if mult[x, zero] != zero or mult[zero, x] != zero:
                witnesses.append(f"zero not absorbing at {_label(algebra, x)}")
            for y in range(n):
                if add[x, y] != add[y, x]:
                    witnesses.append(f"addition not commutative at {_label(algebra, x)}, {_label(algebra, y)}")
                if out[add[x, y]] != max(out[x], out[y]):
                    witnesses.append(f"f_L not join-preserving at {_label(algebra, x)}, {_label(algebra, y)}")
        for x, y, z in _triples(n, rng):
            if mult[x, add[y, z]] != add[mult[x, y], mult[x, z]] or mult[add[y, z], x] != add[mult[y, x], mult[z, x]]:
                witnesses.append(f"mult does not distribute at ({x},{y},{z})")

    report = VerificationReport.from_witnesses("Algebra laws", witnesses[:MAX_WITNESSES], elements=n)
    return _record(report, f"laws in {algebra.variety}")


# Isomorphism of X-generated quotients


def _check_compatible(s1: SynAlgebra, s2: SynAlgebra) -> None:
    if s1.variety != s2.variety:
        raise VarietyError(f"Cannot compare algebras of {s1.variety} and {s2.variety}")
    if tuple(s1.alphabet) != tuple(s2.alphabet):
        raise AlphabetError(f"Alphabet mismatch: {''.join(s1.alphabet)} vs {''.join(s2.alphabet)}")


def iso_as_quotients(s1: SynAlgebra, s2: SynAlgebra) -> bool:
    """Whether e1(w) ↦ e2(w) is a well-defined bijection between the two algebras."""
    _check_compatible(s1, s2)
    if s1.is_linear:
        return _linear_iso(s1, s2)
    kind = s1.variety.kind
    forward: Dict[int, int] = {}
    backward: Dict[int, int] = {}
    queue = deque()

    def visit(x: int, y: int) -> bool:
        if forward.setdefault(x, y) != y or backward.setdefault(y, x) != x:
            return False
        if (x, y) not in pairs:
            pairs.add((x, y))
            queue.append((x, y))
        return True

    pairs = set()
    starts = [(s1.unit, s2.unit)]
    if kind in (VarietyKind.PSET, VarietyKind.JSL):
        if (s1.zero is None) != (s2.zero is None):
            return False
        starts.append((s1.zero, s2.zero))
    for x, y in starts:
        if not visit(x, y):
            return False
    while True:
        while queue:
            x, y = queue.popleft()
            moves = [(s1.mult[x][s1.gen_map[a]], s2.mult[y][s2.gen_map[a]]) for a in s1.alphabet]
            if kind == VarietyKind.INV:
                moves.append((s1.involution[x], s2.involution[y]))
            for x2, y2 in moves:
                if not visit(x2, y2):
                    return False
        if kind != VarietyKind.JSL:
            break
        joined = [
            (s1.addition[x][x2], s2.addition[y][y2]) for (x, y), (x2, y2) in product(list(pairs), repeat=2)
        ]
        for x2, y2 in joined:
            if not visit(x2, y2):
                return False
        if not queue:
            break
    return len(forward) == s1.size and len(backward) == s2.size


def _linear_iso(s1: SynAlgebra, s2: SynAlgebra) -> bool:
    if s1.size != s2.size:
        return False
    if s1.size == 0:
        return True
    p = s1.variety.prime
    # Row i: the image in s2 of basis element i of s1, i.e. e2 of its representative
    image = np.array(
        [s2.class_of(e.representative) for e in s1.elements], dtype=np.int64
    ).reshape(s1.size, s2.size)
    if rank(image, p) != s1.size:
        return False
    if not np.array_equal(np.asarray(s1.unit_coords) @ image % p, np.asarray(s2.unit_coords)):
        return False
    for a in s1.alphabet:
        for i in range(s1.size):
            basis = tuple(int(k == i) for k in range(s1.size))
            lhs = np.asarray(s1.coords_mul(basis, s1.gen_coords[a])) @ image % p
            rhs = np.asarray(s2.coords_mul(tuple(image[i]), s2.gen_coords[a]))
            if not np.array_equal(lhs, rhs):
                return False
    return True


# Transition route against the congruence oracle


def bounded_elements(variety: Variety, alphabet, max_length: int) -> List[FreeElem]:
    """Small elements of X*: words, plus ⊥ / complements / 2-sets / 2-term sums."""
    words = list(words_up_to(alphabet, max_length))
    kind = variety.kind
    if kind == VarietyKind.JSL:
        return [FreeElem.word_set(variety, [])] + [
            FreeElem.word_set(variety, chosen)
            for size in (1, 2) for chosen in combinations(words, size)
        ]
    if kind == VarietyKind.VECT:
        scalars = range(1, variety.prime)
        elements = [FreeElem.polynomial(variety, {})]
        elements += [FreeElem.polynomial(variety, {w: c}) for w in words for c in scalars]
        elements += [
            FreeElem.polynomial(variety, {w1: c1, w2: c2})
            for w1, w2 in combinations(words, 2) for c1 in scalars for c2 in scalars
        ]
        return elements
    elements = [lift_word(variety, w) for w in words]
    if kind == VarietyKind.PSET:
        elements.append(FreeElem.bottom_of(variety))
    elif kind == VarietyKind.INV:
        elements += [FreeElem.complemented_word(variety, w) for w in words]
    return elements


def verify_transition_equivalence(
    algebra: SynAlgebra, dfa: Dfa, max_length: int = 4
) -> VerificationReport:
    """Class equality in the algebra must coincide with the congruence oracle.

    For POS the element order must also match the oracle's preorder.
    """
    variety = algebra.variety
    if not dfa.minimal:
        dfa = minimize(dfa)
    contexts = ContextSet(variety, dfa)
    by_class: Dict[object, Tuple[Tuple[int, ...], FreeElem]] = {}
    by_signature: Dict[Tuple[int, ...], Tuple[object, FreeElem]] = {}
    witnesses = []
    elements = bounded_elements(variety, algebra.alphabet, max_length)
    for u in elements:
        cls = algebra.class_of(u)
        signature = congruence_signature(contexts, u)
        seen = by_class.setdefault(cls, (signature, u))
        if seen[0] != signature:
            witnesses.append(f"{format_free_elem(seen[1])} and {format_free_elem(u)} share a class but not their contexts")
        other = by_signature.setdefault(signature, (cls, u))
        if other[0] != cls:
            witnesses.append(f"{format_free_elem(other[1])} and {format_free_elem(u)} are congruent but in different classes")
        if len(witnesses) > MAX_WITNESSES:
            break

    if variety.kind == VarietyKind.POS and not witnesses:
        for (c1, (s1, u1)), (c2, (s2, u2)) in product(by_class.items(), repeat=2):
            if algebra.order[c1][c2] != signature_leq(s1, s2):
                witnesses.append(f"order of {format_free_elem(u1)}, {format_free_elem(u2)} disagrees with the oracle")

    report = VerificationReport.from_witnesses(
        "Transition/oracle equivalence", witnesses[:MAX_WITNESSES],
        elements=len(elements), classes=len(by_class), max_length=max_length,
    )
    return _record(report, f"transition equivalence in {variety}")


def bounded_mult_check(algebra: SynAlgebra, max_length: int = 4) -> Optional[str]:
    """First pair of short words breaking e_L(uv) = e_L(u)·e_L(v), if any."""
    words = list(words_up_to(algebra.alphabet, max_length))
    variety = algebra.variety
    for u, v in product(words, repeat=2):
        left = algebra.class_of(free_mul(variety, lift_word(variety, u), lift_word(variety, v)))
        cu, cv = algebra.class_of_word(u), algebra.class_of_word(v)
        right = algebra.coords_mul(cu, cv) if algebra.is_linear else algebra.mult[cu][cv]
        if left != right:
            return f"{u or 'ε'}·{v or 'ε'}"
    return None
