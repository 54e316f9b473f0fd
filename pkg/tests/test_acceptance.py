"""Release-gate criteria 1-15, one test each; every run prints a pass/fail line."""

import pytest

from instantonfix.acceptance import CRITERIA, run_criterion

UNATTAINABLE = {
    14: ("chi(Q,Q) = 4 for Q = O_l(1) cannot hold: Hirzebruch-Riemann-Roch on P3 gives 0 for any "
         "two curve-supported classes; chi(I,Q) = 2 holds and is also checked in test_moduli_invariants"),
}


def _param(number, name):
    marks = [pytest.mark.xfail(strict=True, reason=UNATTAINABLE[number])] if number in UNATTAINABLE else []
    return pytest.param(number, id=f"{number:02d}-{name.replace(' ', '_')}", marks=marks)


@pytest.mark.parametrize("number", [_param(n, name) for n, name, _ in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
