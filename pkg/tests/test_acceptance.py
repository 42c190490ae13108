"""The thirteen acceptance criteria, each run at full scale.

Every test prints one line, ``[PASS] N name details`` or ``[FAIL] ...``; the
lines are repeated together in the terminal summary.
"""

from fractions import Fraction

import pytest
from conftest import ACCEPTANCE_LINES

from plcc.algorithms import bounds_report
from plcc.constructions import diamond, g8
from plcc.harness import FAIL, INCONCLUSIVE_CLAIM, PASS, Context, run_claim
from plcc.listcolor import is_choosable, is_list_colorable

CTX = Context(scale="full", seed=0)

CRITERIA = [
    (1, "prop-diamond-2232"),
    (2, "g8-not-2-choosable"),
    (3, "core-oracle-equivalence"),
    (4, "h-gadget-layout"),
    (5, "thm-counterexample-5n8"),
    (6, "lemma-h-3-choosable"),
    (7, "thm-plcc-h-family"),
    (8, "thm-clawfree"),
    (9, "thm-chordless"),
    (10, "cor-chordal-tw2"),
    (11, "thm-large-chi"),
    (12, "bounds-formulas"),
    (13, "deficiency-set-oracle"),
]


def _summary(res) -> str:
    d = res.details
    if res.status == FAIL:
        return d.get("error", "")
    keys = ("relations", "runs", "graphs", "decided", "sampled", "failures", "uvw_steps", "swaps")
    parts = [f"{k}={d[k]}" for k in keys if k in d]
    return " ".join(parts)


def _report(number, res, ok, note=""):
    tag = "PASS" if ok else "FAIL"
    line = f"[{tag}] {number} {res.claim} ({res.status}, {res.mode}, {res.elapsed_ms / 1000:.1f}s) {_summary(res)} {note}"
    line = line.rstrip()
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.mark.parametrize("number, claim", CRITERIA, ids=[f"{n:02d}-{c}" for n, c in CRITERIA])
def test_criterion(number, claim):
    res = run_claim(claim, CTX)
    note = ""
    if number == 6:
        # exhaustive search is attempted first; a budget miss falls back to sampling
        ok = res.status == PASS and (
            res.mode == "exact" or (res.details["sampled"] >= 100_000 and res.details["failures"] == 0)
        )
        note = "exhaustive" if res.mode == "exact" else "property-based, not exact"
    elif number == 7:
        # an inconclusive lambda_2 is allowed as long as no value below 6 appeared
        lam = res.details.get("lambda2_h1", {})
        ok = res.status in (PASS, INCONCLUSIVE_CLAIM) and (lam.get("value") is None or lam["value"] >= 6)
        note = f"lambda_2(H1)={lam.get('value')} ({lam.get('status')})"
    else:
        ok = res.status == PASS
    _report(number, res, ok, note)
    assert ok, res.details


def test_criterion_1_witness_is_checked_independently():
    v = is_choosable(diamond(), [2, 2, 2, 2])
    assert v.status == "not_choosable" and is_list_colorable(diamond(), v.witness) is None
    assert is_choosable(diamond(), [2, 2, 3, 2]).status == "choosable"


def test_criterion_2_restricted_enumeration():
    assert is_choosable(g8(), [2] * 6, equal={3: 0}).status == "choosable"


def test_criterion_12_rows():
    b = bounds_report(21, 3, 2, 3)
    assert (b.albertson, b.chappell, b.haas, b.conjecture) == (
        Fraction(35, 3), Fraction(12), Fraction(21, 2), Fraction(14))
