"""Verification suites for one language, and the acceptance corpus run."""
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, Iterable, List, Optional

import yaml

from synmon.cli.models import CheckOutcome, CorpusEntry, LanguageResult
from synmon.config import CORPUS_PATH, DEFAULT_SEED
from synmon.dautomata.construct import check_reachable_simple, minimal_d_automaton, structure_violations
from synmon.dautomata.models import CapacityLimits
from synmon.duality.atoms import verify_minimal_duality, verify_syntactic_duality
from synmon.errors import CapacityError, SynmonError
from synmon.freemon.models import Variety, VarietyKind
from synmon.langcore.models import Dfa, normalize_alphabet
from synmon.langcore.regex import compile_regex
from synmon.synalg.closure import syntactic_algebra
from synmon.synalg.models import VerificationReport
from synmon.synalg.oracle import oracle_quotient
from synmon.synalg.verify import (
    check_algebra_laws,
    iso_as_quotients,
    verify_recognition,
    verify_transition_equivalence,
)

logger = logging.getLogger(__name__)

CORPUS_VARIETIES = ["set", "pos", "pset", "inv", "jsl", "vect"]
CAPACITY_CHECK = "capacity"
EXIT_OK = 0
EXIT_FAILED = 1


def load_yaml(filename) -> Dict:
    """Load YAML data from a file."""
    with open(filename, "r", encoding="utf-8") as file:
        return yaml.safe_load(file)


def load_corpus(path: Optional[Path] = None) -> List[CorpusEntry]:
    data = load_yaml(path or CORPUS_PATH)
    default_alphabet = data.get("alphabet", "ab")
    return [CorpusEntry(**{"alphabet": default_alphabet, **entry}) for entry in data["languages"]]


def _outcome(check: str, report: VerificationReport) -> CheckOutcome:
    return CheckOutcome(check=check, passed=report.passed, message=report.message, witnesses=report.witnesses)


def _flag(check: str, passed: bool, message: str) -> CheckOutcome:
    return CheckOutcome(check=check, passed=passed, message=message)


def run_checks(
    variety: Variety,
    dfa: Dfa,
    limits: Optional[CapacityLimits] = None,
    seed: int = DEFAULT_SEED,
    max_length: int = 4,
) -> List[CheckOutcome]:
    """Every invariant suite for one language in one variety.

    Capacity errors end the suite with a failed `capacity` outcome.
    """
    outcomes = []
    try:
        automaton = minimal_d_automaton(variety, dfa, limits)
        violations = structure_violations(automaton)
        outcomes.append(_flag("structure", not violations, "; ".join(violations[:3]) or "morphisms preserved"))
        reach = check_reachable_simple(automaton)
        outcomes.append(_flag(
            "reachable-simple", reach.reachable and reach.simple,
            f"reachable={reach.reachable} simple={reach.simple} size={reach.carrier_size}",
        ))

        algebra = syntactic_algebra(variety, dfa, limits)
        outcomes.append(_outcome("recognition", verify_recognition(algebra, dfa, seed=seed)))
        outcomes.append(_outcome("laws", check_algebra_laws(algebra, seed=seed)))
        outcomes.append(_outcome("congruence", verify_transition_equivalence(algebra, dfa, max_length)))
        if variety.kind in (VarietyKind.SET, VarietyKind.POS, VarietyKind.PSET, VarietyKind.INV):
            same = iso_as_quotients(algebra, oracle_quotient(variety, dfa))
            outcomes.append(_flag("quotient", same, f"oracle quotient isomorphic={same}"))
        if variety.kind == VarietyKind.SET:
            outcomes.append(_outcome("syndual", verify_syntactic_duality(dfa)))
            outcomes.append(_outcome("mindual", verify_minimal_duality(dfa)))
    except SynmonError as error:
        logger.warning(f"Suite in {variety} stopped: {error.detail}")
        outcomes.append(_flag(CAPACITY_CHECK if isinstance(error, CapacityError) else "error", False, error.detail))
    return outcomes


def outcome_exit_code(outcomes: Iterable[CheckOutcome]) -> int:
    """Exit status for a set of outcomes; a tripped capacity guard outranks a failed check."""
    outcomes = list(outcomes)
    if any(o.check == CAPACITY_CHECK for o in outcomes):
        return CapacityError.exit_code
    return EXIT_OK if all(o.passed for o in outcomes) else EXIT_FAILED


def check_entry(job) -> LanguageResult:
    """Run every variety on one corpus entry; `job` is (index, entry, limits, seed, max_length)."""
    index, entry, limits, seed, max_length = job
    dfa = compile_regex(entry.regex, normalize_alphabet(entry.alphabet))
    result = LanguageResult(index=index, name=entry.name, regex=entry.regex)
    for kind in CORPUS_VARIETIES:
        variety = Variety.of(kind)
        result.outcomes[str(variety)] = run_checks(variety, dfa, limits, seed, max_length)
    logger.info(f"Corpus entry {entry.name}: {'pass' if result.passed else 'FAIL'}")
    return result


def run_corpus(
    entries: List[CorpusEntry],
    limits: Optional[CapacityLimits] = None,
    seed: int = DEFAULT_SEED,
    max_length: int = 4,
    workers: int = 1,
) -> List[LanguageResult]:
    """Check every entry; results come back in corpus order."""
    limits = limits or CapacityLimits()
    jobs = [(i, entry, limits, seed, max_length) for i, entry in enumerate(entries)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(check_entry, jobs))
    else:
        results = [check_entry(job) for job in jobs]
    return sorted(results, key=lambda r: r.index)
