from fractions import Fraction

import pytest
from bpsvertex.bps import (
    BPSTable,
    MissingDivisorClass,
    NonDiskTable,
    class_key,
    closed_gv,
    closed_lmov_roundtrip,
    disk_genus_zero,
    disk_specialize,
    extract_bps,
    g_function,
    h_series,
    lmov_roundtrip,
    moebius,
)
from bpsvertex.geometry import builtin
from bpsvertex.pipeline import closed_bps, open_bps
from bpsvertex.qalgebra import I, RatFuncQ, bracket, t_variable

B1 = RatFuncQ(bracket(1))
T = t_variable()


def test_moebius():
    assert [moebius(k) for k in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]
    with pytest.raises(ValueError):
        moebius(0)


def test_h_series_examples():
    F1 = RatFuncQ.constant(I) / B1
    F2 = RatFuncQ.constant(3) / RatFuncQ(bracket(2))
    F = {class_key((1,), [[1]]): F1, class_key((2,), [[2]]): F2}
    assert h_series(F, (1,), [[1]]) == F1
    assert h_series(F, (2,), [[2]]) == F2 - F1.substitute_power(2).scale(Fraction(1, 2))
    with pytest.raises(MissingDivisorClass):
        h_series(F, (4,), [[4]])


def test_g_function_examples():
    H = RatFuncQ.constant(I * 5) / B1
    assert g_function(H, [[1]]) == RatFuncQ.constant(5) / T
    # mu = (2): z = 2, divisor i [2]
    H = RatFuncQ.constant(I) * RatFuncQ(bracket(2))
    assert g_function(H, [[2]]) == 2


def test_extract_examples():
    e = extract_bps(1 / T)
    assert e.n == (-1,) and e.verdict.ok
    e = extract_bps((2 - T) / T)
    assert e.n == (-2, 1) and e.verdict.ok
    e = extract_bps(RatFuncQ.constant(Fraction(1, 2)) / T)
    assert not e.verdict.integrality and e.verdict.finiteness
    e = extract_bps(1 / (T * T + 1))
    assert not e.verdict.finiteness
    e = extract_bps(RatFuncQ.monomial(2))
    assert not e.verdict.symmetric
    e = extract_bps(RatFuncQ.constant(I) / T)
    assert not e.verdict.real
    zero = extract_bps(RatFuncQ(0))
    assert zero.n == () and zero.verdict.ok


def test_lmov_examples():
    # single-divisor class, genus zero
    F = lmov_roundtrip({class_key((1,), [[1]]): (2,)}, (1,), [[1]])
    assert F == RatFuncQ.constant(I * -2) * B1 / T
    assert lmov_roundtrip({class_key((1,), [[1]]): ()}, (1,), [[1]]) == 0


@pytest.mark.parametrize("f", range(-3, 4))
def test_c3_disk_sign(f):
    run = open_bps(builtin(f"c3-brane({f})"), 1)
    sign = -1 if f % 2 else 1
    assert run.table.get(0, (1,), [[1]]) == -sign
    assert run.G[class_key((1,), [[1]])] == RatFuncQ.constant(sign) / T


def test_open_roundtrip_and_disks():
    run = open_bps(builtin("conifold-brane(0)"), 3)
    assert run.table.ok
    for key, F in run.F.items():
        assert lmov_roundtrip(run.table.values, *key) == F
    for beta, mu in run.table.classes():
        if len(mu[0]) == 1:
            N, n0 = disk_specialize(run.table, beta, mu[0][0])
            assert N == disk_genus_zero(run.F[(beta, mu)], mu)
    with pytest.raises(NonDiskTable):
        disk_genus_zero(run.F[class_key((0, 2), [[1, 1]])], [[1, 1]])


def test_disk_specialize_examples():
    values = {class_key((1,), [[1]]): (3,), class_key((2,), [[2]]): (5,)}
    assert disk_specialize(values, (1,), 1) == (-3, 3)
    assert disk_specialize(values, (2,), 2) == (Fraction(-5) - Fraction(3, 4), 5)
    with pytest.raises(MissingDivisorClass):
        disk_specialize(values, (3,), 3)


def test_closed_conifold():
    table, Fc = closed_bps(builtin("conifold"), 4)
    assert Fc[(1,)] == -1 / T
    assert table.values[class_key((1,))] == (1,)
    for d in (2, 3, 4):
        assert not any(table.values[class_key((d,))])
    with pytest.raises(MissingDivisorClass):
        closed_gv({}, (1,))
    for d in range(1, 5):
        assert closed_lmov_roundtrip({k[0]: v for k, v in table.values.items()}, (d,)) == Fc[(d,)]


def test_closed_gv_local_p2():
    table, Fc = closed_bps(builtin("local-p2"), 4)
    got = {k[0]: table.values[k] for k in table.classes()}
    assert got == {(1,): (3,), (2,): (-6,), (3,): (27, -10), (4,): (-192, 231, -102, 15)}
    assert table.ok


def test_closed_gv_local_p1xp1():
    table, _ = closed_bps(builtin("local-p1xp1"), 4)
    assert table.values[class_key((1, 0))] == (-2,)
    assert table.values[class_key((1, 1))] == (-4,)
    assert table.values[class_key((2, 1))] == (-6,)
    assert table.values[class_key((2, 2))] == (-32, 9)
    assert table.values[class_key((2, 0))] == ()


def test_table_records():
    t = BPSTable("demo")
    t.add(class_key((1,), [[1]]), extract_bps((2 - T) / T))
    assert t.get(0, (1,), [[1]]) == -2 and t.get(1, (1,), [[1]]) == 1
    assert t.get(5, (1,), [[1]]) == 0
    assert t.ok
