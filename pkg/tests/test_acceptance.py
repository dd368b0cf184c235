"""One check per acceptance criterion, at full size and default seed.

Each prints a single PASS/FAIL line (run ``pytest -s`` to see them).  Every
criterion is exact, so the only tolerance is the time budget.
"""
import pytest

from alexkit.verify import ITEMS, run_item

CRITERIA = list(enumerate(ITEMS, start=1))


@pytest.mark.parametrize("number,item", CRITERIA, ids=[item for _, item in CRITERIA])
def test_criterion(number, item):
    r = run_item(item)
    ok = r.passed and r.within_budget
    print(f"\n[criterion {number:2d}] {'PASS' if ok else 'FAIL'}  {item}: {r.detail} "
          f"({r.seconds * 1000:.1f} ms, budget {r.budget * 1000:g} ms)")
    assert r.passed, r.detail
    assert r.within_budget, f"{item} took {r.seconds:.3f}s, budget {r.budget}s"
