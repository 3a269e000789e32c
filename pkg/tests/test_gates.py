import pytest

from golden import G4_CYCLES, GATE_CYCLES
from revsynth.errors import InvalidGate, MalformedLabel, UnknownLibrary, UnsupportedWidth
from revsynth.gates import (
    Gate, GateLibrary, gt_library_size, paper_g4_label, paper_label_gate, parse_gate,
    parse_gates, standard_library,
)
from revsynth.perm import compose, format_cycles, identity, order_of, parse_cycles, product


@pytest.mark.parametrize("term,n,cycles", GATE_CYCLES)
def test_reference_cycles(term, n, cycles):
    assert format_cycles(parse_gate(term, n).elaborate()) == cycles


@pytest.mark.parametrize("label", sorted(G4_CYCLES))
def test_g4_label_cycles(label):
    assert format_cycles(paper_g4_label(label).elaborate()) == G4_CYCLES[label]


@pytest.mark.parametrize("label,chain", [
    ("2341", (4, 1, 2, 3)),
    ("3412", (3, 4, 1, 2)),
    ("1234", (1, 2, 3, 4)),
    ("4321", (4, 3, 2, 1)),
])
def test_label_translation(label, chain):
    assert paper_g4_label(label).wires == chain


@pytest.mark.parametrize("label", ["123", "12345", "1224", "0123", "abcd"])
def test_bad_g4_labels(label):
    with pytest.raises(MalformedLabel):
        paper_g4_label(label)


def test_label_gate_general_width():
    assert paper_label_gate("23451").wires == (5, 1, 2, 3, 4)
    assert paper_label_gate("21", 2).wires == (2, 1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_gate_family_invariants(n):
    for g in standard_library("GT", n):
        p = g.elaborate()
        assert compose(p, p) == identity(2**n), g
    for g in standard_library("G", n):
        p = g.elaborate()
        assert order_of(p) == 2**n
        assert len(p.cycles()) == 1


def test_peres_and_fredkin_orders():
    for g in standard_library("P", 3):
        assert order_of(g.elaborate()) == 4
    for g in standard_library("F", 3):
        assert order_of(g.elaborate()) == 2


def test_g_gate_is_largest_control_first_cascade():
    g = parse_gate("G[1,2,3]", 3).elaborate()
    parts = [parse_gate(t, 3).elaborate() for t in ("T[1,2,3]", "C[1,2]", "N[1]")]
    assert product(parts, 8) == g
    # the smallest-control-first order is a different permutation
    assert product(parts[::-1], 8) == parse_cycles("(1,8,4,6,2,7,3,5)", 8)
    assert product(parts[::-1], 8) != g


def test_peres_is_toffoli_then_cnot():
    p = parse_gate("P[1,2,3]", 3).elaborate()
    t, c = parse_gate("T[1,2,3]", 3).elaborate(), parse_gate("C[1,2]", 3).elaborate()
    assert compose(t, c) == p


def test_boolean_maps():
    assert parse_gate("G[1,2,3]", 3).boolean_map() == "(x1^1, x2^x1, x3^x1x2)"
    assert parse_gate("T[1,2,3]", 3).boolean_map() == "(x1, x2, x3^x1x2)"
    assert parse_gate("P[1,2,3]", 3).boolean_map() == "(x1, x2^x1, x3^x1x2)"


@pytest.mark.parametrize("term", [
    "X[1]", "N[4]", "N[1,2]", "C[1,1]", "T[1,2]", "F[1,2]", "G[1]", "N[]", "N1", "G[1,a]",
])
def test_invalid_gates(term):
    with pytest.raises(InvalidGate):
        parse_gate(term, 3)


def test_parse_gate_list_respects_brackets():
    gates = parse_gates("G[1,2,3], G[2,1,3]", 3)
    assert [str(g) for g in gates] == ["G[1,2,3]", "G[2,1,3]"]
    with pytest.raises(InvalidGate):
        parse_gates("G[1,2,3", 3)


@pytest.mark.parametrize("name,n,size", [
    ("N", 3, 3), ("C", 3, 6), ("T", 3, 3), ("F", 3, 3), ("P", 3, 6),
    ("NCT", 3, 12), ("NCPF", 3, 18), ("G", 3, 6), ("G", 4, 24), ("GT", 4, 32),
])
def test_library_sizes(name, n, size):
    assert len(standard_library(name, n)) == size


def test_library_names_and_order():
    lib = standard_library("NCT", 3)
    assert lib.name == "NCT"
    assert [str(g) for g in lib][:4] == ["N[1]", "N[2]", "N[3]", "C[1,2]"]
    assert standard_library("G", 3).name == "G3"
    assert standard_library("GT", 5).name == "GT5"


def test_library_errors():
    with pytest.raises(UnknownLibrary):
        standard_library("XYZ", 3)
    with pytest.raises(UnsupportedWidth):
        standard_library("NCP", 4)
    with pytest.raises(UnsupportedWidth):
        standard_library("G", 1)
    with pytest.raises(InvalidGate):
        GateLibrary.from_terms("N[1],N[1]", 3)


@pytest.mark.parametrize("n", range(1, 9))
def test_gt_size_matches_enumeration(n):
    assert gt_library_size(n) == len(standard_library("GT", n)) == n * 2 ** (n - 1)


def test_gt_sizes():
    assert [gt_library_size(n) for n in (4, 5, 6)] == [32, 80, 192]


def test_gate_equality_and_hash():
    assert Gate("G", (1, 2, 3), 3) == parse_gate("g[1, 2, 3]", 3)
    assert len({parse_gate("N[1]", 3), Gate("N", (1,), 3)}) == 1
