"""Fibonacci word construction: recursion, lengths, identities."""

import pytest

from fibwords import (
    PRIMED,
    STANDARD,
    build_pair,
    commutator,
    depth_lower_bound,
    exponent_table,
    fibonacci,
    parse,
    predicted_length,
    verify_level,
)
from fibwords.construction import MAX_LEVEL, sigma, tau


def test_fibonacci():
    assert [fibonacci(m) for m in range(10)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]
    with pytest.raises(ValueError):
        fibonacci(-1)


def test_base_pair():
    p = build_pair(0)
    assert p.a == parse("B")
    assert p.b == parse("abA")
    q = build_pair(0, PRIMED)
    assert q.a == parse("a")
    assert q.b == parse("b")


def test_level_one_words():
    p = build_pair(1)
    assert p.a == parse("BabA")
    assert len(p.b) == 4


def test_recursion_step():
    for n in range(6):
        p, q = build_pair(n), build_pair(n + 1)
        assert q.a == p.a * p.b
        assert q.b == p.a.inverse() * p.b.inverse()


def test_lengths_match_closed_form():
    fixtures = {3: (14, 16), 4: (30, 30), 5: (60, 60), 6: (118, 120)}
    for n in range(13):
        p = build_pair(n)
        assert len(p.a) == predicted_length(n, "a") == p.predicted_len_a
        assert len(p.b) == predicted_length(n, "b") == p.predicted_len_b
        if n in fixtures:
            assert (len(p.a), len(p.b)) == fixtures[n]


def test_primed_lengths_are_powers_of_two():
    for n in range(9):
        p = build_pair(n, PRIMED)
        assert len(p.a) == len(p.b) == 2 ** n
        assert predicted_length(n, "a", PRIMED) == 2 ** n


def test_commutator_identities():
    for n in range(6):
        an, bn = build_pair(n).a, build_pair(n).b
        a1 = build_pair(n + 1).a
        a2 = build_pair(n + 2).a
        assert a2 == commutator(an, bn)
        assert a2 == commutator(a1, bn)


def test_triple_step_identities():
    for n in range(5):
        an, bn = build_pair(n).a, build_pair(n).b
        p3 = build_pair(n + 3)
        assert p3.a == commutator(an * bn, an.inverse() * bn.inverse())
        assert p3.b == commutator(bn * an, bn.inverse() * an.inverse())


def test_sigma_tau_relations():
    # the conjugation/automorphism relation linking a_n to b_n cycles mod 3
    a = parse("a")
    for n in range(9):
        an, bn = build_pair(n).a, build_pair(n).b
        r = n % 3
        if r == 0:
            assert a * sigma(an) * a.inverse() == bn
        elif r == 1:
            assert tau(an) == bn
        else:
            assert tau(an) == bn.inverse()


def test_depth_lower_bound():
    for n in range(8):
        assert depth_lower_bound(n) == fibonacci(n + 2)
        assert depth_lower_bound(n, PRIMED) == fibonacci(n + 1)
        assert build_pair(n).depth_bound == fibonacci(n + 2)


def test_level_guard():
    with pytest.raises(ValueError):
        build_pair(-1)
    with pytest.raises(ValueError):
        build_pair(MAX_LEVEL + 1)
    with pytest.raises(ValueError):
        build_pair(3, "florid")


def test_verify_level_reports():
    for n in range(6):
        report = verify_level(n)
        assert report.ok, report.failures()
        assert report.level == n
        assert len(report.checks) >= 5


def test_exponent_table_bound_mode():
    rows = exponent_table(4)
    assert [r.depth for r in rows] == [1, 2, 3, 5, 8]
    assert rows[0].estimate is None
    assert not any(r.depth_is_exact for r in rows)
    assert rows[4].len_a == 30
    assert abs(rows[4].estimate - 0.6113) < 1e-4


def test_exponent_table_magnus_mode():
    rows = exponent_table(3, depth_mode="magnus")
    assert all(r.depth_is_exact for r in rows)
    assert [r.depth for r in rows] == [1, 2, 3, 5]
    with pytest.raises(ValueError):
        exponent_table(2, depth_mode="exactly")
