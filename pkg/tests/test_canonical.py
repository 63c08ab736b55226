"""Layer sweep, canonical forms, and the two text formats."""

import random

import pytest

from tcanon.canonical import (
    CanonicalForm,
    ParseError,
    TLayer,
    TLayerCircuit,
    WidthMismatchError,
    canonicalize_depth_d,
    canonicalize_depth_one,
    channel_of_circuit,
    channel_of_decomposition,
    equals,
    parse_circuit,
    parse_form,
    quarter_exponential_tableau,
)
from tcanon.channel import channel_of_canonical
from tcanon.clifford import CliffordTableau, from_gate_word
from tcanon.census import random_gate_word
from tcanon.oracle import dense_of_pauli, dense_of_quarter_exponential
from tcanon.pauli import PauliOperator, PauliSet, parse_pauli, validate_set

ID1 = CliffordTableau.identity(1)
ID2 = CliffordTableau.identity(2)


def random_circuit(n, depth, rng):
    cliffords = [from_gate_word(random_gate_word(n, rng), n)
                 for _ in range(depth + 1)]
    layers = []
    for _ in range(depth):
        qubits = [q for q in range(n) if rng.random() < 0.7] or [rng.randrange(n)]
        tdg = [q for q in qubits if rng.random() < 0.5]
        t = [q for q in qubits if q not in tdg]
        layers.append(TLayer(n, t=t, tdg=tdg))
    return TLayerCircuit(cliffords, layers)


class TestLayerAndCircuitValidation:
    def test_tlayer_marked_is_sorted(self):
        layer = TLayer(3, t=[2, 0], tdg=[1])
        assert layer.marked == [(0, False), (1, True), (2, False)]
        assert layer.n == 3

    def test_tlayer_rejects_bad_input(self):
        with pytest.raises(ValueError):
            TLayer(2, t=[2])
        with pytest.raises(ValueError):
            TLayer(2, t=[0], tdg=[0])
        with pytest.raises(ValueError):
            TLayer(2)

    def test_circuit_needs_one_more_clifford(self):
        with pytest.raises(ValueError):
            TLayerCircuit([ID1], [TLayer(1, t=[0])])
        circ = TLayerCircuit([ID1, ID1], [TLayer(1, t=[0])])
        assert circ.depth == 1
        assert circ.n == 1

    def test_circuit_rejects_mixed_widths(self):
        with pytest.raises(WidthMismatchError):
            TLayerCircuit([ID1, ID2], [TLayer(1, t=[0])])
        with pytest.raises(WidthMismatchError):
            TLayerCircuit([ID2, ID2], [TLayer(1, t=[0])])

    def test_form_rejects_mixed_widths(self):
        with pytest.raises(WidthMismatchError):
            CanonicalForm(PauliSet.empty(2), ID1)


class TestDepthOne:
    def test_single_t_gives_z_and_s(self):
        form = canonicalize_depth_one(ID1, TLayer(1, t=[0]), ID1)
        assert form.m == 1
        assert form.paulis.elements == (parse_pauli("Z"),)
        assert form.clifford == from_gate_word("S 0", 1)
        assert form.render() == "P: +Z | C: +Y, +Z"

    def test_single_tdg_gives_z_and_identity(self):
        form = canonicalize_depth_one(ID1, TLayer(1, tdg=[0]), ID1)
        assert form.paulis.elements == (parse_pauli("Z"),)
        assert form.clifford == ID1
        assert form.render() == "P: +Z | C: id"

    def test_left_clifford_conjugates_the_factors(self):
        h = from_gate_word("H 0", 1)
        form = canonicalize_depth_one(h, TLayer(1, tdg=[0]), ID1)
        # H Z H' = X, positive, so the set is {X} and the tail is just H
        assert form.paulis.elements == (parse_pauli("X"),)
        assert form.clifford == h

    def test_negative_image_gets_folded_into_the_tail(self):
        x = from_gate_word("X 0", 1)
        # X Z X' = -Z, so a Tdg behind X needs a quarter correction
        form = canonicalize_depth_one(x, TLayer(1, tdg=[0]), ID1)
        assert form.paulis.elements == (parse_pauli("Z"),)
        assert channel_of_canonical(form) == channel_of_circuit(
            TLayerCircuit([x, ID1], [TLayer(1, tdg=[0])]))

    def test_width_mismatch_raises(self):
        with pytest.raises(WidthMismatchError):
            canonicalize_depth_one(ID1, TLayer(2, t=[0]), ID2)

    def test_channel_equality_on_random_circuits(self):
        rng = random.Random(8001)
        for _ in range(15):
            circ = random_circuit(2, 1, rng)
            form = canonicalize_depth_one(circ.cliffords[0], circ.layers[0],
                                          circ.cliffords[1])
            assert form.m == len(circ.layers[0].marked)
            assert channel_of_canonical(form) == channel_of_circuit(circ)


class TestDepthD:
    def test_depth_zero_passes_the_clifford_through(self):
        c = from_gate_word("H 0; S 0", 1)
        sets, tail = canonicalize_depth_d(TLayerCircuit([c], []))
        assert sets == ()
        assert tail == c

    def test_depth_three_channel_equality(self):
        rng = random.Random(8002)
        for _ in range(8):
            circ = random_circuit(2, 3, rng)
            sets, tail = canonicalize_depth_d(circ)
            assert len(sets) == 3
            for s, layer in zip(sets, circ.layers):
                assert len(s) == len(layer.marked)
                validate_set(list(s))  # positive, commuting, independent
            assert channel_of_decomposition(sets, tail) == channel_of_circuit(circ)

    def test_single_set_decomposition_matches_canonical_channel(self):
        rng = random.Random(8003)
        circ = random_circuit(2, 1, rng)
        sets, tail = canonicalize_depth_d(circ)
        form = CanonicalForm(sets[0], tail)
        assert channel_of_decomposition(sets, tail) == channel_of_canonical(form)


def test_quarter_exponential_matches_dense_conjugation():
    for n in (1, 2):
        for label in range(1, 1 << (2 * n)):
            p = PauliOperator.from_label(n, label)
            for sign in (1, -1):
                tab = quarter_exponential_tableau(p, sign=sign)
                u = dense_of_quarter_exponential(p, sign=sign)
                udag = u.dagger()
                for glabel in range(1, 1 << (2 * n)):
                    g = PauliOperator.from_label(n, glabel)
                    got = dense_of_pauli(tab.conjugate_pauli(g))
                    assert got == u.multiply(dense_of_pauli(g)).multiply(udag)


def test_equals_requires_matching_width():
    a = CanonicalForm(validate_set([parse_pauli("Z")]), ID1)
    b = CanonicalForm(validate_set([parse_pauli("ZI")]), ID2)
    with pytest.raises(ValueError):
        equals(a, b)
    assert equals(a, a)
    assert not equals(a, CanonicalForm(validate_set([parse_pauli("X")]), ID1))


class TestFormText:
    def test_round_trip(self):
        rng = random.Random(8004)
        for _ in range(10):
            circ = random_circuit(2, 1, rng)
            form = canonicalize_depth_one(circ.cliffords[0], circ.layers[0],
                                          circ.cliffords[1])
            assert parse_form(form.render()) == form

    def test_identity_clifford_spelling(self):
        form = parse_form("P: +Z | C: id")
        assert form.clifford == ID1
        assert form.m == 1

    def test_empty_set_renders_as_dash(self):
        form = CanonicalForm(PauliSet.empty(1), from_gate_word("H 0", 1))
        assert form.render() == "P: - | C: +Z, +X"
        assert parse_form(form.render()) == form

    @pytest.mark.parametrize(
        "text",
        [
            "P: +Z  C: id",           # missing separator
            "+Z | C: id",             # missing P:
            "P: +Z | id",             # missing C:
            "P: +Q | C: id",          # bad letter
            "P: +X, +Z | C: id",      # anticommuting set
            "P: +ZI, +IZ, +ZZ | C: id",  # dependent set
            "P: +iZ | C: id",         # non-Hermitian factor
            "P: - | C: id",           # width cannot be inferred
            "P: +ZZ | C: +Y, +Z",     # width mismatch
            "P: , | C: id",           # empty element
        ],
    )
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            parse_form(text)

    def test_error_carries_an_offset(self):
        text = "P: +Z, +Q | C: id"
        with pytest.raises(ParseError) as info:
            parse_form(text)
        assert info.value.position == text.index("+Q")
        assert "offset" in str(info.value)


class TestCircuitText:
    def test_parse_with_comments_and_widths(self):
        text = """
        # one T sandwiched between Cliffords
        QUBITS: 2
        CLIFFORD: H 0
        TLAYER: t=0 tdg=1
        CLIFFORD:   # identity tail
        """
        circ = parse_circuit(text)
        assert circ.n == 2
        assert circ.depth == 1
        assert circ.cliffords[0] == from_gate_word("H 0", 2)
        assert circ.layers[0] == TLayer(2, t=[0], tdg=[1])
        assert circ.cliffords[1] == ID2

    def test_width_inference_uses_the_largest_index(self):
        circ = parse_circuit("CLIFFORD: CX 0 2\nTLAYER: t=1\nCLIFFORD:")
        assert circ.n == 3

    def test_explicit_width_argument_wins_over_inference(self):
        circ = parse_circuit("CLIFFORD:\nTLAYER: t=0\nCLIFFORD:", n=3)
        assert circ.n == 3

    def test_comma_lists_in_layers(self):
        circ = parse_circuit("CLIFFORD:\nTLAYER: t=0,2 tdg=1\nCLIFFORD:")
        assert circ.layers[0] == TLayer(3, t=[0, 2], tdg=[1])

    @pytest.mark.parametrize(
        "text",
        [
            "",                                          # empty
            "TLAYER: t=0",                               # must start with CLIFFORD
            "CLIFFORD:\nTLAYER: t=0",                    # must end with CLIFFORD
            "CLIFFORD:\nCLIFFORD:",                      # no alternation
            "CLIFFORD:\nTLAYER: t=0\nTLAYER: t=0\nCLIFFORD:",
            "CLIFFORD:\nQUBITS: 2\nTLAYER: t=0\nCLIFFORD:",  # QUBITS not first
            "QUBITS: two\nCLIFFORD:",                    # bad width value
            "HELLO: 1",                                  # unknown line
            "CLIFFORD: Q 0\nTLAYER: t=0\nCLIFFORD:",     # bad gate
            "CLIFFORD:\nTLAYER: s=0\nCLIFFORD:",         # bad layer key
            "CLIFFORD:\nTLAYER: t=0 tdg=0\nCLIFFORD:",   # doubly marked qubit
            "CLIFFORD:\nTLAYER:\nCLIFFORD:",             # empty layer
        ],
    )
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            parse_circuit(text)

    def test_depth_zero_line(self):
        circ = parse_circuit("CLIFFORD: S 0; S 0", n=1)
        assert circ.depth == 0
        assert circ.cliffords[0] == from_gate_word("S 0; S 0", 1)

    def test_channel_of_parsed_circuit(self):
        text = "QUBITS: 1\nCLIFFORD:\nTLAYER: t=0\nCLIFFORD:"
        circ = parse_circuit(text)
        form = canonicalize_depth_one(circ.cliffords[0], circ.layers[0],
                                      circ.cliffords[1])
        assert channel_of_canonical(form) == channel_of_circuit(circ)
