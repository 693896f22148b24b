import math

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from fhstab.precision import PRECISE, PrecisionPolicy, Rounding, RoundingMonitor, monitor_rounding, to_policy

finite = st.floats(-1e100, 1e100, allow_nan=False, allow_infinity=False).filter(lambda v: v == 0 or abs(v) > 1e-100)
OPS = ("add", "sub", "mul", "div")


def _py(op, x, y):
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    return x / y


@given(finite, finite, st.sampled_from(OPS))
def test_binary64_nearest_matches_ieee(x, y, op):
    if op == "div" and y == 0:
        return
    ar = PrecisionPolicy(53).arith()
    assert float(getattr(ar, op)(ar.num(x), ar.num(y))) == _py(op, x, y)


@given(finite, finite, st.sampled_from(OPS), st.sampled_from([24, 53, 113, 320]))
def test_directed_rounding_brackets_exact(x, y, op, bits):
    if op == "div" and y == 0:
        return
    up = PrecisionPolicy(bits, Rounding.UP).arith()
    dn = PrecisionPolicy(bits, Rounding.DOWN).arith()
    exact = _py(op, mpq(x), mpq(y))
    hi = getattr(up, op)(x, y)
    lo = getattr(dn, op)(x, y)
    assert mpq(lo) <= exact <= mpq(hi)


@given(finite, finite, st.sampled_from(OPS), st.sampled_from(list(Rounding)), st.integers(0, 50))
def test_monitor_bounds(x, y, op, mode, index):
    if op == "div" and y == 0:
        return
    pol = PrecisionPolicy(53, mode)
    mon = RoundingMonitor()
    ar = pol.arith(index, mon)
    getattr(ar, op)(ar.num(x), ar.num(y))
    bound = pol.unit_roundoff if mode is Rounding.NEAREST else 2 * pol.unit_roundoff
    assert mon.max_relative_error <= bound
    assert mon.count == 1


def test_alternate_direction_by_index():
    pol = PrecisionPolicy(53, Rounding.ALTERNATE)
    assert pol.rounding_for(0) == "up" and pol.rounding_for(-2) == "up"
    assert pol.rounding_for(1) == "down" and pol.rounding_for(-3) == "down"
    third_up = pol.arith(4).div(1, 3)
    third_dn = pol.arith(5).div(1, 3)
    assert third_up > third_dn
    with pytest.raises(ValueError):
        pol.context()


def test_policy_validation_and_labels():
    with pytest.raises(ValueError):
        PrecisionPolicy(16)
    assert PrecisionPolicy(160, "up").label == "160b-up"
    assert PRECISE.unit_roundoff == 2.0**-320
    assert PrecisionPolicy(53).is_binary64 and not PrecisionPolicy(53, "down").is_binary64


def test_monitor_rounding_stream():
    assert monitor_rounding([]) == 0.0
    ar = PrecisionPolicy(53).arith()
    ops = []
    for x, y in [(1, 3), (2, 7), (0.1, 0.2)]:
        r = ar.div(ar.num(x), ar.num(y))
        ops.append(("div", ar.num(x), ar.num(y), r))
    err = monitor_rounding(ops)
    assert 0 < err <= 2.0**-53


def test_exact_operation_has_zero_error():
    assert monitor_rounding([("add", 1, 2, 3)]) == 0.0


def test_higher_precision_is_closer():
    third = mpq(1, 3)
    errs = []
    for bits in (53, 160, 320):
        v = PrecisionPolicy(bits).arith().div(1, 3)
        errs.append(abs(mpq(v) - third))
    assert errs[0] > errs[1] > errs[2]
    assert math.isclose(float(to_policy([0.5], PRECISE)[0]), 0.5)
