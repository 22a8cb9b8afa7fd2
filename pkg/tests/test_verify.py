import pytest

from spt_nlcs import verify


@pytest.fixture(scope="module")
def records():
    return verify.run("all")


def test_no_failures(records):
    failed = [(r.suite, r.check, r.detail) for r in records if r.status == "FAIL"]
    assert failed == []
    assert verify.exit_code(records) == 0


def test_expected_warnings(records):
    warned = {r.check for r in records if r.status == "WARN"}
    assert warned == {"Q6-printed", "phi-printed", "square-well-printed", "bargmann-sin-variant", "A-limit-claim"}


def test_records_sorted_by_suite(records):
    suites = [r.suite for r in records]
    assert suites == sorted(suites)
    assert set(suites) == set(verify.SUITES)


def test_q6_warning_carries_exact_value(records):
    rec = next(r for r in records if r.check == "Q6-printed")
    assert rec.data["exact"].startswith("x^6")
    assert rec.data["exact"] != rec.data["printed"]


def test_unknown_names():
    with pytest.raises(KeyError):
        verify.run("tables", tolerances={"nope": 1.0})
    with pytest.raises(KeyError):
        verify.run("everything")


def test_record_dict():
    rec = verify.Record("s", "c", "PASS", "d", {"x": 1})
    assert rec.to_dict() == {"suite": "s", "check": "c", "status": "PASS", "detail": "d", "data": {"x": 1}}
