import json
import random
from dataclasses import replace

import pytest
import sympy

from frobid.frobenius import (
    RAMIFIED,
    RESULTANT,
    TableInconsistency,
    chebotarev_check,
    classify,
    classify_range,
    cross_check,
    euler_trace_fast_path,
    factor_degrees,
    frobenius_trace,
)
from frobid.gamma import analyze
from frobid.perm import format_perm
from frobid.poly import IntPolynomial

import cases


def test_frob2_worked_example():
    r = classify(cases.d10_table(1), 2)
    assert r.good and r.class_label == "(1,2,3,4,5)" and r.trace == 0
    assert r.cycle_type == (5,)


def test_cubic_p5_needs_no_trace():
    t = analyze(cases.S3_F, cases.gens(cases.S3_GENS, 3), h=IntPolynomial.x(1))
    r = classify(t, 5)
    assert r.cycle_type == (2, 1) and r.class_label == "(2,3)" and r.trace is None
    T = frobenius_trace(list(t.f.coeffs), list(t.h.coeffs), 5)
    assert T == 0 and t.entry("(2,3)").gamma(T) % 5 == 0


def test_phi7_p11():
    table, sigma = cases.cyclotomic_setup(7)
    assert classify(table, 11).class_label == format_perm(sigma[4])


def test_range_d10_below_100():
    reports = list(classify_range(cases.d10_table(2), 2, 99))
    assert len(reports) == 25
    assert [r.p for r in reports] == list(sympy.primerange(2, 100))
    assert {r.cycle_type for r in reports if r.good} <= {(1, 1, 1, 1, 1), (2, 2, 1), (5,)}


def test_empty_and_bad_ranges():
    assert list(classify_range(cases.d10_table(1), 24, 28)) == []
    reports = list(classify_range(cases.d10_table(1), 5, 7))
    assert [(r.p, r.status, r.reason) for r in reports] == [(5, "bad", RAMIFIED), (7, "bad", RESULTANT)]
    with pytest.raises(ValueError):
        list(classify_range(cases.d10_table(1), 10, 2))
    with pytest.raises(ValueError):
        classify(cases.d10_table(1), 91)


def test_quadratic_legendre_small():
    t = cases.quadratic_table(5)
    for r in classify_range(t, 3, 1000):
        if r.good:
            trivial = r.class_label == "()"
            assert trivial == (sympy.legendre_symbol(5, r.p) == 1)
            assert sympy.legendre_symbol(5, r.p) == sympy.legendre_symbol(r.p % 5, 5)


def test_report_json_shape():
    good = classify(cases.d10_table(1), 2)
    assert json.loads(good.to_json()) == {"p": "2", "status": "good", "cycle_type": [5],
                                          "trace": "0", "class": "(1,2,3,4,5)"}
    bad = json.loads(classify(cases.d10_table(1), 5).to_json())
    assert bad["status"] == "bad" and "p-adic" in bad["reason"]


def test_chebotarev_s3():
    reports = list(classify_range(cases.s3_table(), 2, 10 ** 4))
    freqs = {c.label: c for c in chebotarev_check(reports, cases.s3_table())}
    assert freqs["()"].expected == pytest.approx(1 / 6)
    assert freqs["(2,3)"].expected == pytest.approx(1 / 2)
    assert freqs["(1,2,3)"].expected == pytest.approx(1 / 3)
    assert all(abs(c.z) < 5 for c in freqs.values())
    single = chebotarev_check(reports[:1], cases.s3_table())
    assert all(c.z is None for c in single)


def test_symmetry_reduced_table_classifies_identically():
    full = cases.d10_table(1)
    reduced = analyze(cases.D10_F, cases.gens(cases.D10_GENS, 5), h=IntPolynomial.x(1),
                      user_roots=cases.D10_APPROX, symmetry=True)
    a = {r.p: r.class_label for r in classify_range(full, 2, 5000) if r.good}
    b = {r.p: r.class_label for r in classify_range(reduced, 2, 5000) if r.good}
    common = set(a) & set(b)
    assert len(common) > 600
    assert all(a[p] == b[p] for p in common)


def test_companion_trace_cubic_closed_form():
    # tr M^(p+1) for the companion matrix of x^3 + bx + c is the h = x trace
    rng = random.Random(7)
    base = replace(cases.s3_table(), h=IntPolynomial.x(1))
    for _ in range(20):
        b, c = rng.randint(-20, 20), rng.randint(-20, 20)
        f = [c, b, 0, 1]
        t = replace(base, f=IntPolynomial(tuple(f)))
        for p in (3, 5, 7, 11, 13, 97):
            assert euler_trace_fast_path(t, p) == frobenius_trace(f, [0, 1], p)


def test_companion_trace_quadratic():
    t = replace(cases.quadratic_table(3), h=IntPolynomial((1,)))
    for p in (5, 7, 11):
        assert euler_trace_fast_path(t, p) == frobenius_trace([-3, 0, 1], [1], p)
    # h = x, p = 1 formally: trace of M^2 is 2d
    t = replace(cases.quadratic_table(3), h=IntPolynomial.x(1))
    assert euler_trace_fast_path(t, 5, exponents=(0,)) == 6 % 5


def test_power_sum_and_matrix_traces_random():
    rng = random.Random(11)
    base = cases.d10_table(2)
    for _ in range(30):
        f = [rng.randint(-9, 9) for _ in range(5)] + [1]
        h = [rng.randint(-9, 9) for _ in range(4)]
        t = replace(base, f=IntPolynomial(tuple(f)), h=IntPolynomial(tuple(h)))
        for p in sympy.primerange(2, 100):
            assert euler_trace_fast_path(t, p) == frobenius_trace(f, h, p)


def test_cross_check_clean_on_tables():
    for t, hi in ((cases.d10_table(2), 3000), (cases.s3_table(), 3000), (cases.gl23_table(), 2000)):
        for r in classify_range(t, 2, hi):
            assert cross_check(t, r) == []


def test_factor_degrees():
    assert factor_degrees([-1, -1, 0, 1], 5) == (2, 1)
    assert factor_degrees(list(cases.D10_F.coeffs), 2) == (5,)


def test_inconsistent_table_detected():
    t = cases.d10_table(2)
    # equal resolvents make every 5-cycle prime bad, never inconsistent
    five = [c for c in t.classes if c.cycle_type == (5,)]
    clash = tuple(replace(c, gamma=five[0].gamma) if c.cycle_type == (5,) else c for c in t.classes)
    reports = [r for r in classify_range(replace(t, classes=clash), 3, 200) if r.cycle_type == (5,)]
    assert reports and all(r.reason == RESULTANT for r in reports)
    # a wrong but coprime resolvent leaves some primes with no vanishing candidate
    wrong = tuple(replace(c, gamma=IntPolynomial((1, 0, 1))) if c.label == five[1].label else c
                  for c in t.classes)
    with pytest.raises(TableInconsistency):
        for r in classify_range(replace(t, classes=wrong), 3, 200):
            pass


def test_parallel_matches_serial():
    t = cases.d10_table(2)
    serial = [r.to_json() for r in classify_range(t, 2, 20000, workers=1)]
    par = [r.to_json() for r in classify_range(t, 2, 20000, workers=3)]
    assert serial == par
