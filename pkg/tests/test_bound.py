"""Tests for the root-count bound and the size inequality."""

import math

import pytest

from core.bound import bound_table, max_feasible_n, milnor_bound, theorem_check
from utils import PreconditionError


@pytest.mark.parametrize("degree, num_vars, expected", [(2, 1, 2), (2, 4, 54), (3, 2, 15)])
def test_milnor_bound(degree, num_vars, expected):
    assert milnor_bound(degree, num_vars) == expected


def test_milnor_bound_preconditions():
    with pytest.raises(PreconditionError):
        milnor_bound(0, 3)
    with pytest.raises(PreconditionError):
        milnor_bound(2, 0)


class TestTheoremCheck:

    def test_holds_at_23(self):
        report = theorem_check(2, 1, 23)
        assert report.holds
        assert report.lhs == 2 * 3 ** 41
        assert report.rhs == math.factorial(21)

    def test_fails_at_24(self):
        assert not theorem_check(2, 1, 24).holds

    def test_small(self):
        report = theorem_check(1, 1, 3)
        assert (report.t_prime, report.k, report.lhs, report.rhs) == (2, 2, 6, 1)
        assert report.holds

    def test_pins_only(self):
        report = theorem_check(3, 2, 3)
        assert report.k == 0
        assert (report.lhs, report.rhs) == (3, 1)
        assert report.holds

    def test_to_dict(self):
        payload = theorem_check(2, 1, 24).to_dict()
        assert payload["holds"] is False
        assert payload["rhs"] == str(math.factorial(22))
        assert payload["rhs_digits"] == len(str(math.factorial(22)))

    @pytest.mark.parametrize("t, d, n", [(0, 1, 5), (2, 0, 5), (2, 1, 0)])
    def test_preconditions(self, t, d, n):
        with pytest.raises(PreconditionError):
            theorem_check(t, d, n)


def _naive_max_n(t, d, limit):
    t_prime = max(t, 2)
    best = None
    for n in range(d + 2, limit):
        k = (d + 1) * (n - d - 1)
        if t_prime * (2 * t_prime - 1) ** (k - 1) >= math.factorial(n - d - 1):
            best = n
    return best


class TestMaxFeasibleN:

    def test_t2_d1(self):
        assert max_feasible_n(2, 1) == 23

    def test_t_prime_collapse(self):
        assert max_feasible_n(1, 1) == max_feasible_n(2, 1) == 23

    @pytest.mark.parametrize("t, d", [(2, 1), (3, 1), (2, 2), (4, 2), (3, 3)])
    def test_matches_naive_scan(self, t, d):
        n = max_feasible_n(t, d)
        assert n == _naive_max_n(t, d, n + 200)

    @pytest.mark.parametrize("d, expected", [(1, [23, 23, 66, 131]), (2, [72, 72, 338, 930])])
    def test_non_decreasing_in_t(self, d, expected):
        values = [max_feasible_n(t, d) for t in range(1, 5)]
        assert values == expected == sorted(values)

    @pytest.mark.parametrize("t, d", [(2, 1), (3, 2), (5, 1)])
    def test_fails_beyond(self, t, d):
        n = max_feasible_n(t, d)
        assert theorem_check(t, d, n).holds
        assert not any(theorem_check(t, d, m).holds for m in range(n + 1, n + 51))


def test_bound_table():
    rows = list(bound_table([1, 2], [1]))
    assert [row["max_feasible_n"] for row in rows] == [23, 23]
    assert rows[0]["lhs_digits"] == len(str(2 * 3 ** 41))
    assert rows[0]["rhs_digits"] == len(str(math.factorial(21)))
