"""Brute-force oracle over dense exact matrices.

Everything here recomputes unitaries as full 2^n x 2^n matrices with
entries in Z[zeta, 1/2], zeta = exp(i*pi/8), sharing nothing with the
tableau or channel machinery beyond the gate-word tokenizer.  That makes
it slow and size-limited but trustworthy: agreement between a structured
channel and channel_bruteforce checks the fast path end to end.

Matrices above three qubits are refused unless allow_large=True; at 16
dimensions and beyond the quadratic-in-entries trace loops stop being
interactive.
"""

from __future__ import annotations

from .canonical import TLayer
from .channel import ChannelRep
from .clifford import parse_gate_word
from .exactnum import (CYC_I, CYC_INV_SQRT2, CYC_ONE, CYC_ZERO,
                       Cyclotomic16Scalar)
from .pauli import PauliOperator


class SizeRefusalError(ValueError):
    pass


class NonRealEntryError(ValueError):
    pass


_SIZE_CAP = 3

# (zeta - zeta^7)/2 = cos(pi/8), (zeta + zeta^7)/2 = i*sin(pi/8)
_COS_PI_8 = Cyclotomic16Scalar((0, 1, 0, 0, 0, 0, 0, -1), 1)
_I_SIN_PI_8 = Cyclotomic16Scalar((0, 1, 0, 0, 0, 0, 0, 1), 1)
_ZETA2 = Cyclotomic16Scalar.zeta_power(2)       # exp(+i*pi/4), the T phase
_ZETA2_CONJ = Cyclotomic16Scalar.zeta_power(2).conjugate()


def _guard(n: int, allow_large: bool) -> None:
    if n > _SIZE_CAP and not allow_large:
        raise SizeRefusalError(
            f"dense oracle capped at {_SIZE_CAP} qubits; pass allow_large=True "
            f"to force n={n}")


class DenseUnitary:
    """Row-major 2^n x 2^n matrix of Cyclotomic16Scalar."""

    __slots__ = ("n", "mat")

    def __init__(self, n: int, mat: list):
        self.n = n
        self.mat = mat

    @classmethod
    def identity(cls, n: int) -> "DenseUnitary":
        dim = 1 << n
        mat = [[CYC_ZERO] * dim for _ in range(dim)]
        for i in range(dim):
            mat[i][i] = CYC_ONE
        return cls(n, mat)

    @property
    def dim(self) -> int:
        return 1 << self.n

    def multiply(self, other: "DenseUnitary") -> "DenseUnitary":
        if self.n != other.n:
            raise ValueError(f"qubit counts differ: {self.n} vs {other.n}")
        dim = self.dim
        b = other.mat
        out = []
        for i in range(dim):
            arow = self.mat[i]
            row = [CYC_ZERO] * dim
            for k in range(dim):
                a = arow[k]
                if a.is_zero():
                    continue
                brow = b[k]
                for j in range(dim):
                    v = brow[j]
                    if not v.is_zero():
                        row[j] = row[j] + a * v
            out.append(row)
        return DenseUnitary(self.n, out)

    def dagger(self) -> "DenseUnitary":
        dim = self.dim
        mat = self.mat
        return DenseUnitary(
            self.n,
            [[mat[j][i].conjugate() for j in range(dim)] for i in range(dim)])

    def scale(self, s: Cyclotomic16Scalar) -> "DenseUnitary":
        return DenseUnitary(self.n, [[s * v for v in row] for row in self.mat])

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseUnitary):
            return NotImplemented
        return self.n == other.n and self.mat == other.mat

    def is_unitary(self) -> bool:
        prod = self.multiply(self.dagger())
        dim = self.dim
        for i in range(dim):
            for j in range(dim):
                v = prod.mat[i][j]
                if i == j:
                    if v != CYC_ONE:
                        return False
                elif not v.is_zero():
                    return False
        return True

    def __repr__(self):
        return f"<DenseUnitary n={self.n}>"


def dense_of_pauli(p: PauliOperator, allow_large: bool = False) -> DenseUnitary:
    """Matrix of i^phase * (Hermitian representative of (x, z))."""
    _guard(p.n, allow_large)
    n = p.n
    dim = 1 << n
    base = p.phase + bin(p.x & p.z).count("1")
    mat = [[CYC_ZERO] * dim for _ in range(dim)]
    for c in range(dim):
        t = (base + 2 * bin(p.z & c).count("1")) & 3
        mat[c ^ p.x][c] = Cyclotomic16Scalar.zeta_power(4 * t)
    return DenseUnitary(n, mat)


def dense_of_exponential(p: PauliOperator, sign: int = 1,
                         allow_large: bool = False) -> DenseUnitary:
    """exp(sign * i*pi*P/8) = cos(pi/8) I + sign i sin(pi/8) P."""
    assert sign in (1, -1)
    if p.x == 0 and p.z == 0:
        raise ValueError("exponential of the identity label")
    if not p.is_positive():
        raise ValueError(f"need a positive Pauli, got {p!r}")
    _guard(p.n, allow_large)
    ph = dense_of_pauli(p, allow_large)
    dim = ph.dim
    sin_term = _I_SIN_PI_8 if sign > 0 else -_I_SIN_PI_8
    mat = []
    for r in range(dim):
        prow = ph.mat[r]
        row = []
        for c in range(dim):
            v = sin_term * prow[c] if not prow[c].is_zero() else CYC_ZERO
            if r == c:
                v = v + _COS_PI_8
            row.append(v)
        mat.append(row)
    return DenseUnitary(p.n, mat)


def dense_of_quarter_exponential(p: PauliOperator, sign: int = 1,
                                 allow_large: bool = False) -> DenseUnitary:
    """exp(sign * i*pi*P/4) = (I + sign i P) / sqrt2."""
    assert sign in (1, -1)
    if p.x == 0 and p.z == 0:
        raise ValueError("exponential of the identity label")
    if not p.is_positive():
        raise ValueError(f"need a positive Pauli, got {p!r}")
    _guard(p.n, allow_large)
    ph = dense_of_pauli(p, allow_large)
    dim = ph.dim
    ip = CYC_I if sign > 0 else -CYC_I
    mat = []
    for r in range(dim):
        prow = ph.mat[r]
        row = []
        for c in range(dim):
            v = ip * prow[c] if not prow[c].is_zero() else CYC_ZERO
            if r == c:
                v = v + CYC_ONE
            row.append(CYC_INV_SQRT2 * v)
        mat.append(row)
    return DenseUnitary(p.n, mat)


def _qubit_mask(n: int, q: int) -> int:
    return 1 << (n - 1 - q)


def _dense_gate(name: str, qubits: tuple, n: int) -> DenseUnitary:
    dim = 1 << n
    mat = [[CYC_ZERO] * dim for _ in range(dim)]
    if name == "H":
        m = _qubit_mask(n, qubits[0])
        for c in range(dim):
            mat[c & ~m][c] = CYC_INV_SQRT2
            v = CYC_INV_SQRT2 if not (c & m) else -CYC_INV_SQRT2
            mat[c | m][c] = v
    elif name == "S":
        m = _qubit_mask(n, qubits[0])
        for c in range(dim):
            mat[c][c] = CYC_I if c & m else CYC_ONE
    elif name == "X":
        m = _qubit_mask(n, qubits[0])
        for c in range(dim):
            mat[c ^ m][c] = CYC_ONE
    elif name == "Z":
        m = _qubit_mask(n, qubits[0])
        for c in range(dim):
            mat[c][c] = -CYC_ONE if c & m else CYC_ONE
    elif name == "CX":
        cm = _qubit_mask(n, qubits[0])
        tm = _qubit_mask(n, qubits[1])
        for c in range(dim):
            mat[c ^ tm if c & cm else c][c] = CYC_ONE
    elif name == "CZ":
        am = _qubit_mask(n, qubits[0])
        bm = _qubit_mask(n, qubits[1])
        for c in range(dim):
            neg = (c & am) and (c & bm)
            mat[c][c] = -CYC_ONE if neg else CYC_ONE
    elif name == "SWAP":
        am = _qubit_mask(n, qubits[0])
        bm = _qubit_mask(n, qubits[1])
        for c in range(dim):
            a_bit = 1 if c & am else 0
            b_bit = 1 if c & bm else 0
            r = c
            if a_bit != b_bit:
                r = c ^ am ^ bm
            mat[r][c] = CYC_ONE
    else:
        raise AssertionError(f"unhandled gate {name}")
    return DenseUnitary(n, mat)


def dense_of_gate_word(text: str, n: int,
                       allow_large: bool = False) -> DenseUnitary:
    """Matrix of a gate word, leftmost factor applied last (product order)."""
    _guard(n, allow_large)
    acc = DenseUnitary.identity(n)
    for name, qubits in parse_gate_word(text, n):
        acc = acc.multiply(_dense_gate(name, qubits, n))
    return acc


def dense_of_t_layer(layer: TLayer, allow_large: bool = False) -> DenseUnitary:
    """Diagonal matrix of a parallel T / Tdg layer (true gates, with phase)."""
    _guard(layer.n, allow_large)
    n = layer.n
    dim = 1 << n
    mat = [[CYC_ZERO] * dim for _ in range(dim)]
    for b in range(dim):
        v = CYC_ONE
        for q, is_tdg in layer.marked:
            if b & _qubit_mask(n, q):
                v = v * (_ZETA2_CONJ if is_tdg else _ZETA2)
        mat[b][b] = v
    return DenseUnitary(n, mat)


def pauli_expand(u: DenseUnitary) -> dict:
    """Nonzero coefficients of M = sum_P m_P P over positive Pauli labels.

    m_P = Tr(P M) / 2^n, exact in the cyclotomic ring.
    """
    n = u.n
    dim = 1 << n
    out = {}
    for label in range(1 << (2 * n)):
        p = PauliOperator.from_label(n, label)
        ph = dense_of_pauli(p, allow_large=True)
        acc = CYC_ZERO
        for r in range(dim):
            a = ph.mat[r][r ^ p.x]
            b = u.mat[r ^ p.x][r]
            if not (a.is_zero() or b.is_zero()):
                acc = acc + a * b
        if not acc.is_zero():
            out[label] = Cyclotomic16Scalar(acc.c, acc.k + n)
    return out


def channel_bruteforce(u: DenseUnitary, allow_large: bool = False) -> ChannelRep:
    """Channel matrix by raw traces: entry[P, Q] = Tr(P U Q U') / 2^n.

    Raises NonRealEntryError if any trace falls outside the real dyadic
    sqrt2 ring, which cannot happen for an actual unitary's channel.
    """
    _guard(u.n, allow_large)
    n = u.n
    dim = 1 << n
    labels = 1 << (2 * n)
    ud = u.dagger()
    paulis = [PauliOperator.from_label(n, l) for l in range(labels)]
    dense = [dense_of_pauli(p, allow_large=True) for p in paulis]
    rows: list = [[None] * labels for _ in range(labels)]
    for q in range(labels):
        m = u.multiply(dense[q]).multiply(ud)
        for p in range(labels):
            pp = paulis[p]
            ph = dense[p]
            acc = CYC_ZERO
            for r in range(dim):
                a = ph.mat[r][r ^ pp.x]
                b = m.mat[r ^ pp.x][r]
                if not (a.is_zero() or b.is_zero()):
                    acc = acc + a * b
            scaled = Cyclotomic16Scalar(acc.c, acc.k + n)
            try:
                rows[p][q] = scaled.to_dyadic()
            except ValueError:
                raise NonRealEntryError(
                    f"entry ({p}, {q}) is not real dyadic: {scaled!r}") from None
    return ChannelRep(n, rows)


def equal_up_to_phase(u: DenseUnitary, v: DenseUnitary) -> bool:
    """Exact proportionality test; for unitaries the ratio is a phase."""
    if u.n != v.n:
        raise ValueError(f"qubit counts differ: {u.n} vs {v.n}")
    dim = u.dim
    anchor = None
    for r in range(dim):
        for c in range(dim):
            if not u.mat[r][c].is_zero():
                anchor = (r, c)
                break
        if anchor:
            break
    if anchor is None:
        return all(v.mat[r][c].is_zero() for r in range(dim) for c in range(dim))
    ar, ac = anchor
    ua = u.mat[ar][ac]
    va = v.mat[ar][ac]
    if va.is_zero():
        return False
    for r in range(dim):
        for c in range(dim):
            if u.mat[r][c] * va != v.mat[r][c] * ua:
                return False
    return True
