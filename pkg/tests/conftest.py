import numpy as np
import pytest
from scipy import stats


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def chi2_audit(draws, tail_ge, start, min_expected=5.0, mass=0.999):
    """Chi-square p-value of integer draws against a law given by ``P(X >= j)``.

    The audited range is the smallest prefix ``[start, J)`` carrying at least
    ``mass`` among the candidate cut points; everything from ``J`` on forms
    one tail cell. Cut points are every integer for the first hundred values
    and geometrically spaced beyond; adjacent cells are merged until each
    expects at least ``min_expected`` draws.
    """
    draws = np.sort(np.asarray(draws))
    n = draws.size
    hi = start + 1
    while 1.0 - tail_ge(hi) < mass:
        hi = 2 * hi
    cuts = np.unique(np.concatenate([
        np.arange(start, start + 100),
        np.floor(np.geomspace(start + 100, hi, 400)).astype(np.int64),
    ]))
    cuts = cuts[cuts <= hi]
    tails = np.array([tail_ge(j) for j in cuts])
    cuts = cuts[: int(np.argmax(1.0 - tails >= mass)) + 1]
    tails = tails[: cuts.size]
    probs = np.append(tails[:-1] - tails[1:], tails[-1])
    counts = np.append(np.diff(np.searchsorted(draws, cuts, side="left")),
                       n - np.searchsorted(draws, cuts[-1], side="left"))
    expected, observed = [], []
    acc_e = acc_o = 0.0
    for e, o in zip(probs * n, counts):
        acc_e += e
        acc_o += o
        if acc_e >= min_expected:
            expected.append(acc_e)
            observed.append(acc_o)
            acc_e = acc_o = 0.0
    expected[-1] += acc_e
    observed[-1] += acc_o
    expected = np.array(expected)
    observed = np.array(observed)
    expected *= observed.sum() / expected.sum()
    return stats.chisquare(observed, expected).pvalue


#: (criterion, passed, detail) lines recorded by the acceptance module
ACCEPTANCE_LINES = []


def record_criterion(label, passed, detail):
    line = f"[{'PASS' if passed else 'FAIL'}] {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
