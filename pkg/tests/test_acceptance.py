"""The acceptance gate: every criterion runs at its stated budget and must
pass; one line is printed per criterion."""

import pytest

from charform import acceptance

BUDGETS = {1: 10, 2: 30, 3: 300, 4: 60, 5: 600, 6: 600, 7: 600, 8: 300,
           9: 300, 10: 300}


@pytest.mark.parametrize("number,title,fn",
                         acceptance.CRITERIA,
                         ids=[f"criterion-{n}" for n, _, _ in acceptance.CRITERIA])
def test_criterion(number, title, fn):
    import time
    t0 = time.time()
    passed, detail = fn(seed=2025)
    took = time.time() - t0
    status = "PASS" if passed else "FAIL"
    print(f"criterion {number:2d} {status} ({took:.1f}s)  {title}: {detail}")
    assert passed, f"criterion {number}: {detail}"
    assert took < BUDGETS[number], f"criterion {number} exceeded its budget"
