import math
from fractions import Fraction

import pytest

import entropy_banach as eb


def test_tent_entropy():
    b = eb.entropy_bounds(eb.tent(), 8)
    assert b["lower"] <= math.log(2) + 1e-12 <= b["upper"] + 2e-12
    assert b["upper"] - b["lower"] < 1e-9
    assert b["lower_witness"]["d"] == 2


def test_exact_evaluation_and_composition():
    t = eb.tent()
    assert t(Fraction(1, 3)) == Fraction(2, 3)
    t2 = eb.compose(t, t)
    for k in range(17):
        x = Fraction(k, 16)
        assert t2(x) == t(t(x))
    assert eb.lap_count(t2) == 4
    assert eb.PLMap.from_json(t2.to_json()) == t2


def test_horseshoe_certificate():
    d, cert = eb.horseshoe_max(eb.iterate(eb.tent(), 3))
    assert d == 8
    assert eb.check_certificate(eb.iterate(eb.tent(), 3), cert) == ""


def test_psi_horseshoe():
    g = eb.psi(eb.tent(), "geometric", "2/3", 16)
    cert = eb.psi_horseshoe(eb.tent(), 4)
    assert eb.check_certificate(g, cert) == ""
    assert eb.certified_lower_bound(g, cert) == pytest.approx(math.log(4))


def test_solve_An():
    beta = [Fraction(k, 3) for k in range(1, 7)]
    alpha = eb.solve_An(6, beta)
    a = eb.build_An(6)
    for i in range(6):
        assert sum(a[i][j] * alpha[j] for j in range(6)) == beta[i]


def test_enumeration():
    e = eb.rational_enumeration(200)
    assert e[0] == 1
    assert all(e[k + 1] <= 2 * e[k] for k in range(len(e) - 1))
    assert set(eb.calkin_wilf(50)) <= set(e)


def test_errors_map_to_exceptions():
    with pytest.raises(eb.DomainError):
        eb.PLMap([1, 0], [0, 1])
    with pytest.raises(eb.Error):
        eb.psi_horseshoe(eb.tent(), 3, N=3)
    with pytest.raises(eb.TruncationError):
        eb.psi_horseshoe(eb.tent(), 3, N=3)


def test_acceptance_subset():
    results = eb.run_acceptance([1, 2, 10])
    assert [r["id"] for r in results] == [1, 2, 10]
    assert all(r["passed"] for r in results)
