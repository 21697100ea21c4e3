import copy
from fractions import Fraction

import pytest

from bpsvertex.geometry import builtin, emit_geometry, parse_geometry
from bpsvertex.graph import (
    EffClass,
    InvalidClass,
    NonPointedEffectiveCone,
    check_class,
    fiber_enumerate,
)
from bpsvertex.partitions import Partition, PartitionTuple, conjugate, enumerate_partitions, partitions_up_to
from bpsvertex.qalgebra import I, RatFuncQ, bracket
from bpsvertex.symfunc import schur_rho
from bpsvertex.vertex import (
    AmplitudeCache,
    amplitudes,
    brane_factor,
    connected_F,
    exp_series,
    log_series,
    open_gw,
    three_point_W,
    z_amplitude,
)

from oracles import compare_with_series, truncated_skew_schur

B1 = RatFuncQ(bracket(1))


def test_w_examples():
    assert three_point_W([], [], []) == 1
    assert three_point_W([1], [], []) == 1 / B1
    assert str(three_point_W([1], [], [])) == "1/(x - x^-1)"


def test_w_against_truncated_series():
    # W((1),(1),()) = s_(1)(q^rho) * s_(1)(q^{(1)+rho})
    W = three_point_W([1], [1], [], cache=None)
    shift = Partition([1])
    rest = W / schur_rho([1])
    assert compare_with_series(rest, truncated_skew_schur([1], [], shift), shift, 1) == []
    # W((2),(2),()) = s_(2)(q^rho) * s_(2)(q^{(1,1)+rho})
    shift = Partition([1, 1])
    rest = three_point_W([2], [2], [], cache=None) / schur_rho([2])
    assert compare_with_series(rest, truncated_skew_schur([2], [], shift), shift, 2) == []

def test_cache_hits_rotations():
    cache = AmplitudeCache()
    a = three_point_W([2], [1], [], cache=cache)
    b = three_point_W([1], [], [2], cache=cache)
    c = three_point_W([], [2], [1], cache=cache)
    assert a == b == c
    assert cache.misses == 1 and cache.hits == 2


def test_w_symmetries_small():
    parts = partitions_up_to(2)
    for l1 in parts:
        for l2 in parts:
            for l3 in parts:
                w = three_point_W(l1, l2, l3, cache=None)
                assert w == three_point_W(l2, l3, l1, cache=None)
                sign = (-1) ** (l1.size + l2.size + l3.size)
                wt = three_point_W(conjugate(l1), conjugate(l2), conjugate(l3), cache=None)
                assert wt == w.invert_q().scale(sign)


@pytest.mark.parametrize("f", range(-3, 4))
def test_c3_disk_amplitude(f):
    g = builtin(f"c3-brane({f})")
    c = EffClass((1,), PartitionTuple([[1]]))
    expected = RatFuncQ.constant(I) / B1
    if f % 2:
        expected = -expected
    assert z_amplitude(g, c) == expected
    assert open_gw(g, (1,), [[1]]) == expected


def test_conifold_degree_one():
    g = builtin("conifold")
    assert z_amplitude(g, EffClass((1,))) == -1 / (B1 * B1)


def test_invalid_classes():
    g = builtin("c3-brane(0)")
    with pytest.raises(InvalidClass):
        check_class(g, EffClass((0,), PartitionTuple([[1]])))
    with pytest.raises(InvalidClass):
        check_class(g, EffClass((2,), PartitionTuple([[1]])))
    with pytest.raises(InvalidClass):
        check_class(g, EffClass((1,), PartitionTuple([])))


def test_orientation_independence():
    g = builtin("local-p2")
    doc = copy.deepcopy(emit_geometry(g))
    for e in doc["edges"]:
        if e["id"] == "e0_1":
            e["endpoints"].reverse()
            e["n"] = -e["n"]
    flipped = parse_geometry(doc)
    a, b = amplitudes(g, 3), amplitudes(flipped, 3)
    assert a == b


def test_log_exp_roundtrip():
    for name in ["conifold-brane(1)", "strip-2(0)", "c3-brane(-1)"]:
        g = builtin(name)
        Z = amplitudes(g, 4)
        F = log_series(Z)
        assert exp_series(F) == Z


def test_log_minimal_and_doubled():
    g = builtin("c3-brane(0)")
    Z = amplitudes(g, 2)
    F = log_series(Z)
    c0 = EffClass((1,), PartitionTuple([[1]]))
    c2 = EffClass((2,), PartitionTuple([[1, 1]]))
    assert F[c0] == Z[c0]
    assert F[c2] == Z[c2] - (Z[c0] * Z[c0]).scale(Fraction(1, 2))


def test_fiber_examples():
    g = builtin("c3-brane(0)")
    assert fiber_enumerate(g, (3,)) == [(3,)]
    g = builtin("conifold-brane(0)")
    assert fiber_enumerate(g, (2, 1)) == [(2, 1)]
    g = builtin("local-p1xp1")
    for a in range(5):
        fib = fiber_enumerate(g, (a, 0))
        assert len(fib) == a + 1
        assert all(d[0] + d[2] == a and d[1] == d[3] == 0 for d in fib)


def test_non_pointed_cone():
    doc = emit_geometry(builtin("local-p2"))
    doc["homology"]["projection"]["e0_2"] = [-1]
    g = parse_geometry(doc)
    with pytest.raises(NonPointedEffectiveCone):
        fiber_enumerate(g, (1,))


def test_open_gw_sign_and_minimal_class():
    g = builtin("conifold-brane(0)")
    F = connected_F(g, 3)
    c = EffClass((0, 1), PartitionTuple([[1]]))
    assert open_gw(g, (0, 1), [[1]], F) == F[c]
    c2 = EffClass((0, 2), PartitionTuple([[2]]))
    assert open_gw(g, (0, 2), [[2]], F) == -F[c2]
    assert open_gw(g, (0, 2), [[1, 1]], F) == F[EffClass((0, 2), PartitionTuple([[1, 1]]))]


def test_parallel_matches_serial():
    g = builtin("conifold-brane(1)")
    assert amplitudes(g, 3, workers=2) == amplitudes(g, 3, use_cache=False)


def test_conifold_structure():
    g = builtin("conifold")
    for d in range(1, 4):
        want = RatFuncQ(0)
        for lam in enumerate_partitions(d):
            want = want + three_point_W(lam, [], []) * three_point_W(conjugate(lam), [], [])
        assert z_amplitude(g, EffClass((d,))) == want.scale((-1) ** d)


def test_brane_sign_sites():
    # the brane factor carries (-1)^|mu| on top of i^l(mu)
    assert brane_factor(Partition([1]), Partition([1])) == RatFuncQ.constant(-I)
    assert brane_factor(Partition([2]), Partition([2])) == RatFuncQ.constant(I * Fraction(-1, 2))
    assert brane_factor(Partition([1, 1]), Partition([1, 1])) == RatFuncQ.constant(Fraction(-1, 2))
    # the framing factor is x^{+kappa n}: with n = 1 on the C^3 brane, the (2) label carries x^2
    g = builtin("c3-brane(1)")
    z = z_amplitude(g, EffClass((2,), PartitionTuple([[2]])))
    w2, w11 = three_point_W([2], [], []), three_point_W([1, 1], [], [])
    want = (w2.shift(2) * brane_factor(Partition([2]), Partition([2]))
            + w11.shift(-2) * brane_factor(Partition([1, 1]), Partition([2])))
    assert z == want
