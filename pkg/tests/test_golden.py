import pytest

from pisotmod import golden


@pytest.mark.parametrize("check", golden.CHECKS, ids=[f"{c.anchor}:{c.run.__name__}" for c in golden.CHECKS])
def test_check_passes(check):
    ok, detail = check.run()
    assert ok, detail


def test_filter_and_order():
    assert {c.anchor for c in golden.select("kamou")} == {"kamou"}
    assert golden.select("missing") == []
    anchors = [c.anchor for c in golden.select()]
    assert anchors == sorted(anchors)
    assert len(golden.select()) == len(golden.CHECKS)


def test_crashing_check_is_reported():
    def boom():
        raise ZeroDivisionError("x")

    [res] = golden.run_checks([golden.Check("z", "boom", boom)])
    assert not res.ok and "ZeroDivisionError" in res.detail
