# test_corpus.py
import pytest

from synmon.cli.corpus import CORPUS_VARIETIES, check_entry, load_corpus, outcome_exit_code, run_checks
from synmon.cli.models import CheckOutcome
from synmon.dautomata import CapacityLimits
from synmon.freemon import Variety
from synmon.langcore import compile_regex

ENTRIES = load_corpus()


def test_corpus_is_loaded():
    assert len(ENTRIES) >= 30
    assert all(entry.alphabet == "ab" for entry in ENTRIES)
    assert len({entry.name for entry in ENTRIES}) == len(ENTRIES)


@pytest.mark.parametrize("entry", ENTRIES, ids=[entry.name for entry in ENTRIES])
def test_corpus_language(entry):
    """Every invariant suite passes in every variety"""
    result = check_entry((0, entry, CapacityLimits(), 0, 3))
    assert sorted(result.outcomes) == sorted(str(Variety.of(kind)) for kind in CORPUS_VARIETIES)
    failures = {
        variety: [(o.check, o.message, o.witnesses[:2]) for o in outcomes if not o.passed]
        for variety, outcomes in result.outcomes.items()
    }
    assert result.passed, failures


def test_capacity_is_reported_as_a_failed_check():
    dfa = compile_regex("(a|b)*abb", "ab")
    outcomes = run_checks(Variety.of("jsl"), dfa, CapacityLimits(max_jsl_states=4))
    assert [o.check for o in outcomes] == ["capacity"]
    assert not outcomes[0].passed
    assert outcome_exit_code(outcomes) == 3


def test_outcome_exit_codes():
    ok = CheckOutcome(check="laws", passed=True, message="ok")
    bad = CheckOutcome(check="recognition", passed=False, message="table")
    capacity = CheckOutcome(check="capacity", passed=False, message="guard")
    assert outcome_exit_code([ok]) == 0
    assert outcome_exit_code([ok, bad]) == 1
    assert outcome_exit_code([bad, capacity]) == 3
