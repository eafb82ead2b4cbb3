import pytest

from moyalbkp import corpus


@pytest.fixture(scope="module")
def outcomes():
    return corpus.run_all()


def test_every_case_passes(outcomes):
    failed = [o.case.label for o in outcomes if not o.ok]
    assert failed == []


def test_ledger_has_no_unresolved_entries(outcomes):
    entries = corpus.ledger(outcomes)
    assert entries
    assert {e.status for e in entries} <= {corpus.MATCH, corpus.TYPO}


def test_typos_carry_a_note(outcomes):
    for e in corpus.ledger(outcomes):
        if e.status == corpus.TYPO:
            assert e.note and e.printed != e.derived


def test_new_disagreement_is_unresolved():
    case = corpus.Case("probe", lambda: corpus.parse_poly("a1"), "a1", "a2", corpus.MATCH)
    out = corpus.run_case(case)
    assert out.entry.status == corpus.UNRESOLVED and not out.ok


def test_pinned_drift_fails():
    out = corpus.run_case(corpus.Case("probe", lambda: corpus.parse_poly("a1"), "a2"))
    assert not out.ok
