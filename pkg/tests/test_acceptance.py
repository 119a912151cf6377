"""The release gate: every numbered check must pass, one line each.

Run with `pytest tests/test_acceptance.py -s` to watch the lines appear as
the battery progresses; the heavy paired-CLT run is shared between the
checks that need it, so the whole file costs one large simulation.
"""

import pytest

from critpair.acceptance import CRITERIA, run_criterion


@pytest.fixture(scope="module")
def ctx(tmp_path_factory):
    return {
        "out_dir": str(tmp_path_factory.mktemp("acceptance")),
        "threads": 4,
    }


def _check(number, ctx, capsys):
    result = run_criterion(number, ctx)
    with capsys.disabled():
        print(f"\n{result.line}")
    assert result.ok, result.line


def test_criteria_registry_is_complete():
    assert [num for num, _, _ in CRITERIA] == list(range(1, 13))


def test_criterion_01(ctx, capsys):
    _check(1, ctx, capsys)


def test_criterion_02(ctx, capsys):
    _check(2, ctx, capsys)


def test_criterion_03(ctx, capsys):
    _check(3, ctx, capsys)


def test_criterion_04(ctx, capsys):
    _check(4, ctx, capsys)


def test_criterion_05(ctx, capsys):
    _check(5, ctx, capsys)


def test_criterion_06(ctx, capsys):
    _check(6, ctx, capsys)


def test_criterion_07(ctx, capsys):
    _check(7, ctx, capsys)


def test_criterion_08(ctx, capsys):
    _check(8, ctx, capsys)


def test_criterion_09(ctx, capsys):
    _check(9, ctx, capsys)


def test_criterion_10(ctx, capsys):
    _check(10, ctx, capsys)


def test_criterion_11(ctx, capsys):
    _check(11, ctx, capsys)


def test_criterion_12(ctx, capsys):
    _check(12, ctx, capsys)
