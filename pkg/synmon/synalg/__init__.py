"""Transition and syntactic D-monoids, the congruence oracle, and their cross-checks."""
from synmon.synalg.closure import syntactic_algebra, transition_monoid
from synmon.synalg.models import ElemClass, KeyKind, ReportStatus, SynAlgebra, TransitionElem, VerificationReport
from synmon.synalg.oracle import (
    ContextSet,
    congruence_oracle,
    congruence_signature,
    congruence_witness,
    oracle_quotient,
)
from synmon.synalg.render import algebra_to_dict, algebra_to_dot, render_csv, render_json, render_table
from synmon.synalg.verify import (
    bounded_elements,
    bounded_mult_check,
    check_algebra_laws,
    iso_as_quotients,
    verify_recognition,
    verify_transition_equivalence,
    word_span_rank,
)
