"""Exact Pauli-transfer matrices and the spectrum-based T-count reader."""

import itertools
import random

import pytest

from tcanon.canonical import CanonicalForm
from tcanon.channel import (
    ChannelRep,
    SpectrumMismatchError,
    channel_of_canonical,
    channel_of_clifford,
    channel_of_exponential,
    exponential_transfer_is_signed_permutation,
    infer_t_count,
    reference_spectrum,
)
from tcanon.clifford import CliffordTableau, from_gate_word
from tcanon.census import random_gate_word, random_pauli_set
from tcanon.exactnum import DYADIC_ONE, DYADIC_ZERO, DyadicSqrt2Scalar
from tcanon.pauli import PauliOperator, PauliSet, commutant, parse_pauli, validate_set

R = DyadicSqrt2Scalar(0, 1, 1)  # 1/sqrt2
ONE = DYADIC_ONE
ZERO = DYADIC_ZERO


def entries(rep):
    return [[rep.entry(i, j) for j in range(rep.dim)] for i in range(rep.dim)]


def test_identity_channel():
    rep = ChannelRep.identity(1)
    assert rep.is_identity()
    assert rep.is_orthogonal()
    assert rep.is_signed_permutation()
    assert rep.unit_rows() == [0, 1, 2, 3]


def test_hadamard_channel_fixture():
    # label order I, Z, X, Y; H swaps X and Z and negates Y
    rep = channel_of_clifford(from_gate_word("H 0", 1))
    want = [
        [ONE, ZERO, ZERO, ZERO],
        [ZERO, ZERO, ONE, ZERO],
        [ZERO, ONE, ZERO, ZERO],
        [ZERO, ZERO, ZERO, -ONE],
    ]
    assert entries(rep) == want
    assert rep.is_signed_permutation()


def test_exponential_channel_fixture():
    # exp(+i*pi*Z/8): X -> (X - Y)/sqrt2, Y -> (X + Y)/sqrt2
    rep = channel_of_exponential(PauliOperator.single(1, 0, "Z"))
    want = [
        [ONE, ZERO, ZERO, ZERO],
        [ZERO, ONE, ZERO, ZERO],
        [ZERO, ZERO, R, R],
        [ZERO, ZERO, -R, R],
    ]
    assert entries(rep) == want
    assert rep.is_orthogonal()
    assert not rep.is_signed_permutation()


def test_inverse_exponential_is_the_transpose():
    p = parse_pauli("XY")
    fwd = channel_of_exponential(p)
    bck = channel_of_exponential(p, inverse=True)
    assert bck == fwd.transpose()
    assert fwd.multiply(bck).is_identity()


def test_clifford_channel_functoriality():
    rng = random.Random(52)
    for _ in range(10):
        wa = random_gate_word(2, rng)
        wb = random_gate_word(2, rng)
        a = from_gate_word(wa, 2)
        b = from_gate_word(wb, 2)
        lhs = channel_of_clifford(a.compose(b))
        rhs = channel_of_clifford(a).multiply(channel_of_clifford(b))
        assert lhs == rhs


def test_clifford_channel_transpose_is_inverse():
    rng = random.Random(53)
    for _ in range(10):
        c = from_gate_word(random_gate_word(2, rng), 2)
        rep = channel_of_clifford(c)
        assert rep.transpose() == channel_of_clifford(c.inverse())
        assert rep.is_signed_permutation()
        assert rep.is_orthogonal()


def test_channel_of_canonical_splits_into_factors():
    s = validate_set([parse_pauli("ZI"), parse_pauli("IZ")])
    c = from_gate_word("H 0; CX 0 1", 2)
    form = CanonicalForm(s, c)
    rep = channel_of_canonical(form)
    acc = channel_of_clifford(c)
    for p in reversed(s.elements):
        acc = channel_of_exponential(p).multiply(acc)
    assert rep == acc


def test_unit_rows_equal_commutant_labels():
    s = validate_set([parse_pauli("Z")])
    form = CanonicalForm(s, CliffordTableau.identity(1))
    rep = channel_of_canonical(form)
    assert rep.unit_rows() == [0, 1]
    assert rep.unit_rows() == commutant(s)

    rng = random.Random(54)
    s = random_pauli_set(3, 2, rng)
    form = CanonicalForm(s, CliffordTableau.identity(3))
    rep = channel_of_canonical(form)
    assert rep.unit_rows() == commutant(s)
    assert len(rep.unit_rows()) == 1 << (2 * 3 - 2)


def test_pauli_spectrum_counts_magnitudes():
    rep = channel_of_exponential(PauliOperator.single(1, 0, "Z"))
    spec = rep.pauli_spectrum()
    assert spec[ONE] == 2
    assert spec[ZERO] == 10
    assert spec[R] == 4
    assert reference_spectrum(1, 1) == spec


def test_infer_t_count_on_reference_forms():
    for n in (1, 2, 3):
        for m in range(n + 1):
            s = (PauliSet.empty(n) if m == 0 else
                 validate_set([PauliOperator.single(n, j, "Z") for j in range(m)]))
            form = CanonicalForm(s, CliffordTableau.identity(n))
            assert infer_t_count(channel_of_canonical(form)) == m


def test_infer_t_count_ignores_the_clifford_tail():
    rng = random.Random(55)
    s = random_pauli_set(2, 2, rng)
    c = from_gate_word(random_gate_word(2, rng), 2)
    rep = channel_of_canonical(CanonicalForm(s, c))
    assert infer_t_count(rep) == 2


def test_infer_t_count_rejects_foreign_spectra():
    # all-zero matrix
    dim = 4
    zero_rows = [[ZERO] * dim for _ in range(dim)]
    with pytest.raises(SpectrumMismatchError):
        infer_t_count(ChannelRep(1, zero_rows))
    # a lone 1/2 entry is not a power of 1/sqrt2 times anything reachable
    half = DyadicSqrt2Scalar(1, 0, 1)
    rows = [[ZERO] * dim for _ in range(dim)]
    rows[0][0] = half
    with pytest.raises(SpectrumMismatchError):
        infer_t_count(ChannelRep(1, rows))
    # right minimum magnitude, wrong multiset
    rows = [[ZERO] * dim for _ in range(dim)]
    for i in range(dim):
        rows[i][i] = R
    with pytest.raises(SpectrumMismatchError):
        infer_t_count(ChannelRep(1, rows))


def test_transfer_signed_permutation_on_equal_sets():
    for labels in [("Z",), ("X",), ("Y",), ("XX", "ZZ")]:
        s = validate_set([parse_pauli(t) for t in labels])
        assert exponential_transfer_is_signed_permutation(s, s)


def test_transfer_not_signed_permutation_on_distinct_sets():
    a = validate_set([parse_pauli("X")])
    b = validate_set([parse_pauli("Z")])
    assert not exponential_transfer_is_signed_permutation(a, b)


def test_transfer_agrees_with_dense_product_on_one_qubit():
    for la, lb in itertools.product(["X", "Y", "Z"], repeat=2):
        a = validate_set([parse_pauli(la)])
        b = validate_set([parse_pauli(lb)])
        dense = channel_of_exponential(a.elements[0]).transpose().multiply(
            channel_of_exponential(b.elements[0]))
        got = exponential_transfer_is_signed_permutation(a, b)
        assert got == dense.is_signed_permutation()
        assert got == (la == lb)


def test_transfer_agrees_with_dense_product_on_two_qubits():
    rng = random.Random(56)
    for _ in range(10):
        a = random_pauli_set(2, rng.randint(1, 2), rng)
        b = random_pauli_set(2, rng.randint(1, 2), rng)
        fa = CanonicalForm(a, CliffordTableau.identity(2))
        fb = CanonicalForm(b, CliffordTableau.identity(2))
        dense = channel_of_canonical(fa).transpose().multiply(channel_of_canonical(fb))
        assert (exponential_transfer_is_signed_permutation(a, b)
                == dense.is_signed_permutation())


def test_to_tsv_header_and_shape():
    text = channel_of_clifford(CliffordTableau.identity(1)).to_tsv()
    lines = text.rstrip("\n").split("\n")
    assert lines[0] == "\tI\tZ\tX\tY"
    assert len(lines) == 5
    assert lines[1].split("\t") == ["I", "1", "0", "0", "0"]
