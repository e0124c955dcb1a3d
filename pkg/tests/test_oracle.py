"""Independent back-ends: A-type Ocneanu trace and the wreath product."""

import random

import pytest

from heckeknot import braids
from heckeknot.algebra import Element, basis_enumerate, mul
from heckeknot.braids import parse, random_word
from heckeknot.oracle import (
    WreathElement,
    a_from_braid,
    a_unit,
    homfly_A,
    ocneanu_trace_A,
    specialize_check,
    word_to_wreath,
    wreath_gen,
    wreath_identity,
    wreath_mul,
    wreath_t,
)
from heckeknot.scalars import ONE, Scalar, Z, qpow, s_param

z = Scalar.sym(Z)


def test_a_trace_basics():
    assert ocneanu_trace_A(a_unit(2)) == ONE
    assert ocneanu_trace_A(a_from_braid(parse("s1"))) == z
    assert ocneanu_trace_A(a_from_braid(parse("s1 s1"))) == (qpow(1) - ONE) * z + qpow(1)


def test_a_rejects_loops():
    with pytest.raises(ValueError):
        a_from_braid(parse("t s1", strands=2))


def test_a_trace_markov_property():
    rng = random.Random(41)
    for trial in range(12):
        n = rng.choice([2, 3])
        letters = tuple((rng.randint(1, n - 1), rng.choice((1, -1)))
                        for _ in range(rng.randint(1, 6)))
        w = braids.BraidWord(n, letters)
        up = braids.BraidWord(n + 1, letters + ((n, 1),))
        assert ocneanu_trace_A(a_from_braid(up)) == z * ocneanu_trace_A(a_from_braid(w))


def test_homfly_oracle_values():
    assert homfly_A(parse("s1")) == ONE
    assert str(homfly_A(parse("s1^3"))) == "-qh^4*lh^4 + qh^4*lh^2 + lh^2"


def test_wreath_group_laws():
    n, d = 3, 3
    e = wreath_identity(n, d)
    t = wreath_t(n, d)
    s1 = wreath_gen(n, d, 1)
    assert wreath_mul(e, t) == t
    assert wreath_mul(s1, s1) == e
    assert wreath_mul(WreathElement((1, 0, 0), (0, 1, 2), d), s1) \
        == WreathElement((1, 0, 0), (1, 0, 2), d)
    # loop order d
    x = t
    for _ in range(d - 1):
        x = wreath_mul(x, t)
    assert x == e
    assert wreath_mul(x, t) == t
    # conjugated loops land on single coordinates
    ti = wreath_mul(wreath_mul(s1, t), s1)
    assert ti == WreathElement((0, 1, 0), (0, 1, 2), d)
    with pytest.raises(ValueError):
        wreath_mul(t, wreath_t(2, d))


def test_word_to_wreath_respects_products():
    n, d = 2, 2
    basis = list(basis_enumerate(n, d))
    for wx in basis:
        for wy in basis:
            gx, gy = word_to_wreath(wx, n, d), word_to_wreath(wy, n, d)
            assert wreath_mul(gx, gy).d == d


def test_specialize_exhaustive_small():
    for n, d in [(1, 2), (2, 2), (2, 3)]:
        report = specialize_check(n, d)
        assert report[-1]["status"] == "ok", report[:3]


def test_specialize_sampled_3_3():
    basis = list(basis_enumerate(3, 3))
    rng = random.Random(42)
    pairs = [(rng.choice(basis), rng.choice(basis)) for _ in range(60)]
    report = specialize_check(3, 3, pairs=pairs)
    assert report[-1]["status"] == "ok"


def test_report_shape():
    report = specialize_check(1, 2)
    entry = report[-1]
    assert set(entry) == {"case", "expected", "got", "status"}
