import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from golden import CLOSURE_SIZES
from revsynth import groups
from revsynth.errors import CapExceeded, DegreeMismatch
from revsynth.gates import GateLibrary, paper_label_gate, parse_gate, standard_library
from revsynth.groups import (
    closure_enumerate, contains, find_block_system, group_order, is_symmetric, is_universal,
    jordan_witness, library_order, schreier_sims, sift,
)
from revsynth.perm import Permutation, compose, identity, mul, parse_cycles


def naive_closure(gens, n):
    # oracle: plain set-based closure, independent of the library code paths
    start = tuple(range(n))
    seen, stack = {start}, [start]
    while stack:
        p = stack.pop()
        for g in gens:
            q = tuple(g[x] for x in p)
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


@pytest.mark.parametrize("name,size", sorted(CLOSURE_SIZES.items()))
def test_closure_sizes(name, size):
    lib = standard_library(name, 3)
    assert closure_enumerate(lib) == size
    assert group_order(schreier_sims(lib)) == size


@pytest.mark.parametrize("name", ["N", "C", "T", "F", "P", "NF"])
def test_closure_matches_naive_oracle(name):
    lib = standard_library(name, 3)
    assert closure_enumerate(lib) == len(naive_closure([p.array for p in lib.perms], 8))


def test_g2_pair_generates_s4():
    lib = GateLibrary.from_terms("G[1,2],G[2,1]", 2)
    assert closure_enumerate(lib) == 24


def test_cap_exceeded():
    with pytest.raises(CapExceeded):
        closure_enumerate(standard_library("NCT", 3), cap=1000)
    with pytest.raises(CapExceeded):
        closure_enumerate(standard_library("GT", 4), cap=5000)


def test_hashed_closure_path_above_dense_limit():
    lib = GateLibrary.from_terms("N[1],N[2],N[3],N[4]", 4)
    assert closure_enumerate(lib) == 16
    lib = GateLibrary.from_terms("C[1,2],C[2,3]", 4)
    assert closure_enumerate(lib) == len(naive_closure([p.array for p in lib.perms], 16)) == 8


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_g_library_is_full_symmetric_group(n):
    assert library_order(standard_library("G", n)) == math.factorial(2**n)


def test_g4_order_exact():
    assert schreier_sims(standard_library("G", 4)).order() == 20922789888000


def test_gt4_order():
    assert library_order(standard_library("GT", 4)) == math.factorial(16)


def test_nct4_is_alternating():
    # without the 4-wire Toffoli every gate is even on 16 states
    lib = GateLibrary.from_gates([g for g in standard_library("GT", 4) if len(g.wires) < 4])
    assert library_order(lib) == math.factorial(16) // 2
    assert not is_universal(lib)


def test_contains_matches_enumeration():
    lib = standard_library("C", 3)
    chain = schreier_sims(lib)
    members = naive_closure([p.array for p in lib.perms], 8)
    assert len(members) == 168
    n1 = parse_gate("N[1]", 3).elaborate()
    assert n1.array not in members
    assert not contains(chain, n1)
    rng = random.Random(7)
    for _ in range(200):
        p = Permutation._raw(tuple(rng.sample(range(8), 8)))
        assert contains(chain, p) == (p.array in members)


def test_generators_sift_to_identity():
    lib = standard_library("NCT", 3)
    chain = schreier_sims(lib)
    for p in lib.perms:
        assert sift(chain, p).is_identity()
    with pytest.raises(DegreeMismatch):
        sift(chain, identity(16))


def test_chain_base_is_one_based_at_boundary():
    chain = schreier_sims(standard_library("T", 3))
    assert all(1 <= b <= 8 for b in chain.base_points)
    assert chain.base_points == [b + 1 for b in chain.base]


def test_g3_pair_orders():
    # every pair, checked against a plain closure of the reference cycles
    lib = standard_library("G", 3)
    orders = {}
    for i in range(6):
        for j in range(i + 1, 6):
            sub = lib.subset([i, j])
            orders[(str(lib.gates[i]), str(lib.gates[j]))] = library_order(sub)
            assert orders[(str(lib.gates[i]), str(lib.gates[j]))] == len(
                naive_closure([p.array for p in sub.perms], 8))
    assert sum(o == 40320 for o in orders.values()) == 9
    assert orders[("G[1,2,3]", "G[1,3,2]")] == 576
    assert orders[("G[1,2,3]", "G[2,1,3]")] == 192
    assert orders[("G[1,2,3]", "G[2,3,1]")] == 40320


def test_g3_pair_rule():
    # universal exactly when the pair differs in both the first and the last chain wire
    lib = standard_library("G", 3)
    for i in range(6):
        for j in range(i + 1, 6):
            a, b = lib.gates[i].wires, lib.gates[j].wires
            assert is_universal(lib.subset([i, j])) == (a[0] != b[0] and a[-1] != b[-1])


def test_g4_pair():
    assert is_universal(GateLibrary.from_terms("G[4,1,2,3],G[1,2,3,4]", 4))


def test_five_wire_pair_both_readings():
    chain_reading = GateLibrary.from_terms("G[2,3,4,5,1],G[1,2,3,4,5]", 5)
    label_reading = GateLibrary.from_gates([paper_label_gate("23451"),
                                            parse_gate("G[1,2,3,4,5]", 5)])
    assert library_order(chain_reading) == math.factorial(32)
    assert library_order(label_reading) == math.factorial(32)


@pytest.mark.slow
def test_six_wire_pair():
    lib = GateLibrary.from_terms("G[2,3,4,5,6,1],G[5,1,4,3,2,6]", 6)
    assert library_order(lib) == math.factorial(64)


def test_jordan_path_agrees_with_schreier_sims(monkeypatch):
    rng = random.Random(3)
    cases = []
    for _ in range(30):
        a = rng.sample(range(1, 5), 4)
        b = rng.sample(range(1, 5), 4)
        if a == b:
            continue
        cases.append(GateLibrary.from_terms(f"G[{','.join(map(str, a))}],G[{','.join(map(str, b))}]", 4))
    expected = [schreier_sims(lib).order() == math.factorial(16) for lib in cases]
    monkeypatch.setattr(groups, "SIMS_DEGREE_LIMIT", 4)
    assert [is_universal(lib) for lib in cases] == expected
    assert any(expected) and not all(expected)


def test_jordan_witness_rejects_imprimitive_group():
    # wreath-like group preserving the halves {0..7},{8..15}
    a = tuple(list(range(1, 8)) + [0] + list(range(8, 16)))
    swap = tuple(list(range(8, 16)) + list(range(8)))
    assert jordan_witness([a, swap], 16) is None
    assert find_block_system([a, swap], 16) is not None
    assert not is_symmetric([a, swap], 16)


def test_empty_library():
    lib = GateLibrary("empty", (), 3)
    assert library_order(lib) == 1
    assert not is_universal(lib)


sub3 = st.lists(st.sampled_from(standard_library("NCPF", 3).gates + standard_library("G", 3).gates),
                min_size=1, max_size=4, unique=True).map(GateLibrary.from_gates)


@settings(max_examples=50, deadline=None)
@given(sub3, sub3)
def test_lagrange_and_monotonicity(a, b):
    oa = group_order(schreier_sims(a))
    assert math.factorial(8) % oa == 0
    both = GateLibrary.from_gates(a.gates + tuple(g for g in b.gates if g not in a.gates))
    ob = group_order(schreier_sims(both))
    assert ob % oa == 0


@settings(max_examples=50, deadline=None)
@given(sub3)
def test_sims_equals_closure(lib):
    assert closure_enumerate(lib) == group_order(schreier_sims(lib))
    assert is_universal(lib) == (closure_enumerate(lib) == 40320)
