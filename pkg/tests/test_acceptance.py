"""Acceptance suite: one test per criterion, each printing its pass/fail
line with timing and detail."""
from primindex import acceptance


def _check(capsys, result):
    with capsys.disabled():
        print(result.line(), flush=True)
    assert result.passed, result.line()


def test_criterion_1_power_law(capsys):
    _check(capsys, acceptance.criterion_power_law())


def test_criterion_2_upper_bound_chain(capsys):
    _check(capsys, acceptance.criterion_upper_bound_chain())


def test_criterion_3_oracle_equivalence(capsys):
    _check(capsys, acceptance.criterion_oracle_equivalence())


def test_criterion_4_whitehead_soundness(capsys):
    _check(capsys, acceptance.criterion_whitehead_soundness())


def test_criterion_5_blocker_verification(capsys):
    _check(capsys, acceptance.criterion_blockers())


def test_criterion_6_witness_words(capsys):
    _check(capsys, acceptance.criterion_witness_words())


def test_criterion_7_walk_statistics(capsys):
    _check(capsys, acceptance.criterion_walk_statistics())


def test_criterion_8_appendix_desk_check(capsys):
    _check(capsys, acceptance.criterion_appendix_desk_check())
