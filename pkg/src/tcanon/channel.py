"""Pauli-transfer matrices with exact dyadic sqrt2 entries.

The channel of a unitary U on n qubits is the 4^n x 4^n real matrix
U_hat[P, Q] = Tr(P U Q U-dagger) / 2^n over unsigned Pauli labels.  It is
insensitive to global phase and faithful on the quotient, which makes it
the equality arbiter for canonical forms.  Channels are orthogonal, the
channel of a product is the product of the channels, and a channel is a
signed permutation exactly when the unitary is Clifford.

Exponentials exp(i*pi*P/8) act on a channel as plane rotations: a column
labeled Q commuting with P is fixed; an anticommuting column picks up
1/sqrt2 at row Q and +-1/sqrt2 at the row of i*P*Q.  Building a canonical
form's channel therefore costs a signed permutation plus m sparse row
updates, never a dense product.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from .clifford import CliffordTableau
from .exactnum import (DYADIC_MINUS_ONE, DYADIC_ONE, DYADIC_ZERO,
                       DyadicSqrt2Scalar)
from .pauli import PauliOperator, PauliSet


class IdentityPauliError(ValueError):
    pass


class NonPositivePauliError(ValueError):
    pass


class SpectrumMismatchError(ValueError):
    pass


class ChannelRep:
    """Dense 4^n x 4^n matrix of DyadicSqrt2Scalar, row-major.

    Completed instances are treated as immutable; construction helpers
    build the row lists in place before wrapping.
    """

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: list):
        self.n = n
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "ChannelRep":
        dim = 1 << (2 * n)
        rows = [[DYADIC_ZERO] * dim for _ in range(dim)]
        for i in range(dim):
            rows[i][i] = DYADIC_ONE
        return cls(n, rows)

    @property
    def dim(self) -> int:
        return 1 << (2 * self.n)

    def entry(self, p_label: int, q_label: int) -> DyadicSqrt2Scalar:
        return self.rows[p_label][q_label]

    def transpose(self) -> "ChannelRep":
        dim = self.dim
        rows = self.rows
        return ChannelRep(self.n, [[rows[j][i] for j in range(dim)] for i in range(dim)])

    def multiply(self, other: "ChannelRep") -> "ChannelRep":
        """Matrix product, skipping zero entries on both sides."""
        if self.n != other.n:
            raise ValueError(f"qubit counts differ: {self.n} vs {other.n}")
        dim = self.dim
        b_nz = [[(j, v) for j, v in enumerate(row) if not v.is_zero()]
                for row in other.rows]
        out = []
        for i in range(dim):
            arow = self.rows[i]
            acc: dict[int, DyadicSqrt2Scalar] = {}
            for k in range(dim):
                a = arow[k]
                if a.is_zero():
                    continue
                for j, v in b_nz[k]:
                    prod = a * v
                    cur = acc.get(j)
                    acc[j] = prod if cur is None else cur + prod
            row = [DYADIC_ZERO] * dim
            for j, v in acc.items():
                row[j] = v
            out.append(row)
        return ChannelRep(self.n, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChannelRep):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def is_identity(self) -> bool:
        dim = self.dim
        for i in range(dim):
            row = self.rows[i]
            for j in range(dim):
                v = row[j]
                if i == j:
                    if v != DYADIC_ONE:
                        return False
                elif not v.is_zero():
                    return False
        return True

    def is_orthogonal(self) -> bool:
        """Exact check of U_hat * U_hat^T = I."""
        return self.multiply(self.transpose()).is_identity()

    def is_signed_permutation(self) -> bool:
        dim = self.dim
        cols_seen = 0
        for row in self.rows:
            hit = -1
            for j, v in enumerate(row):
                if v.is_zero():
                    continue
                if hit >= 0 or (v != DYADIC_ONE and v != DYADIC_MINUS_ONE):
                    return False
                hit = j
            if hit < 0 or (cols_seen >> hit) & 1:
                return False
            cols_seen |= 1 << hit
        return cols_seen == (1 << dim) - 1

    def unit_rows(self) -> list[int]:
        """Row labels holding a +-1 entry, ascending."""
        out = []
        for i, row in enumerate(self.rows):
            for v in row:
                if v == DYADIC_ONE or v == DYADIC_MINUS_ONE:
                    out.append(i)
                    break
        return out

    def pauli_spectrum(self) -> Counter:
        """Multiset of entry magnitudes over the whole matrix."""
        spec: Counter = Counter()
        for row in self.rows:
            for v in row:
                spec[abs(v)] += 1
        return spec

    def to_tsv(self) -> str:
        """Exact text dump with Pauli-string row and column headers."""
        n = self.n
        labels = [PauliOperator.from_label(n, l).to_string().lstrip("+")
                  for l in range(self.dim)]
        lines = ["\t".join([""] + labels)]
        for i, row in enumerate(self.rows):
            lines.append("\t".join([labels[i]] + [v.render() for v in row]))
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"<ChannelRep n={self.n}>"


def channel_of_clifford(c: CliffordTableau) -> ChannelRep:
    """Signed permutation matrix: column Q carries +-1 at row label(CQC')."""
    n = c.n
    dim = 1 << (2 * n)
    rows = [[DYADIC_ZERO] * dim for _ in range(dim)]
    for q in range(dim):
        img = c.conjugate_pauli(PauliOperator.from_label(n, q))
        rows[img.label][q] = DYADIC_ONE if img.phase == 0 else DYADIC_MINUS_ONE
    return ChannelRep(n, rows)


def _exp_pairs(p: PauliOperator):
    """Anticommuting label pairs (q, r, sigma) with q < r and i*P*Q = sigma*R."""
    n = p.n
    dim = 1 << (2 * n)
    for q in range(dim):
        qp = PauliOperator.from_label(n, q)
        if qp.commutes_with(p):
            continue
        prod = (p * qp).mul_i()
        r = prod.label
        if r < q:
            continue
        yield q, r, (1 if prod.phase == 0 else -1)


def _apply_exponential_left(rows: list, p: PauliOperator, inverse: bool) -> None:
    """rows <- channel(exp(+-i*pi*P/8)) * rows, as in-place plane rotations."""
    sgn = -1 if inverse else 1
    for q, r, sigma in _exp_pairs(p):
        sigma *= sgn
        rq = rows[q]
        rr = rows[r]
        for c in range(len(rq)):
            a = rq[c]
            b = rr[c]
            az = a.is_zero()
            bz = b.is_zero()
            if az and bz:
                continue
            if az:
                new_q = -b if sigma > 0 else b
                new_r = b
            elif bz:
                new_q = a
                new_r = a if sigma > 0 else -a
            else:
                new_q = a - b if sigma > 0 else a + b
                new_r = a + b if sigma > 0 else b - a
            rq[c] = new_q.times_inv_sqrt2()
            rr[c] = new_r.times_inv_sqrt2()


def channel_of_exponential(p: PauliOperator, inverse: bool = False) -> ChannelRep:
    """Channel of exp(i*pi*P/8) for positive non-identity P (or its inverse)."""
    if p.x == 0 and p.z == 0:
        raise IdentityPauliError("exponential of the identity label")
    if not p.is_positive():
        raise NonPositivePauliError(f"need a positive Pauli, got {p!r}")
    rep = ChannelRep.identity(p.n)
    _apply_exponential_left(rep.rows, p, inverse)
    return rep


def _apply_clifford_left(rows: list, c: CliffordTableau) -> list:
    """channel(C) * rows: permute and sign rows by the conjugation action."""
    n = c.n
    dim = 1 << (2 * n)
    out: list = [None] * dim
    for r in range(dim):
        img = c.conjugate_pauli(PauliOperator.from_label(n, r))
        if img.phase == 0:
            out[img.label] = rows[r]
        else:
            out[img.label] = [-v for v in rows[r]]
    return out


def _canonical_rows(paulis, tableau: CliffordTableau) -> list:
    rows = channel_of_clifford(tableau).rows
    elems = list(paulis)
    for p in reversed(elems):
        if p.x == 0 and p.z == 0:
            raise IdentityPauliError("exponential of the identity label")
        if not p.is_positive():
            raise NonPositivePauliError(f"need a positive Pauli, got {p!r}")
        _apply_exponential_left(rows, p, inverse=False)
    return rows


def channel_of_canonical(form) -> ChannelRep:
    """Channel of exp(i*pi*P_1/8) ... exp(i*pi*P_m/8) * C.

    form needs .paulis (a PauliSet) and .clifford (a CliffordTableau); the
    exponential factors commute, so their order never changes the result.
    """
    return ChannelRep(form.clifford.n, _canonical_rows(form.paulis, form.clifford))


@lru_cache(maxsize=None)
def reference_spectrum(n: int, m: int) -> Counter:
    """Spectrum of the form ({Z on the first m qubits}, identity)."""
    assert 0 <= m <= n
    zs = [PauliOperator.single(n, j, "Z") for j in range(m)]
    rows = _canonical_rows(zs, CliffordTableau.identity(n))
    return ChannelRep(n, rows).pauli_spectrum()


def infer_t_count(rep: ChannelRep) -> int:
    """Read the T-count off the channel spectrum.

    The minimum nonzero magnitude of a T-depth-one channel is (1/sqrt2)^m
    and the full multiset matches the reference form with m factors; any
    deviation raises SpectrumMismatchError.
    """
    spec = rep.pauli_spectrum()
    nonzero = [v for v in spec if not v.is_zero()]
    if not nonzero:
        raise SpectrumMismatchError("all entries vanish")
    mn = min(nonzero)
    probe = DYADIC_ONE
    m = 0
    while probe != mn:
        probe = probe.times_inv_sqrt2()
        m += 1
        if m > 2 * rep.n:
            raise SpectrumMismatchError(
                f"minimum magnitude {mn.render()} is not a power of 1/sqrt2")
    if m > rep.n or spec != reference_spectrum(rep.n, m):
        raise SpectrumMismatchError(
            f"spectrum does not match any T-depth-one form (candidate m={m})")
    return m


def _sparse_apply_exponential(vec: dict, p: PauliOperator, inverse: bool) -> dict:
    """Left-multiply a sparse column by channel(exp(+-i*pi*P/8))."""
    n = p.n
    sgn = -1 if inverse else 1
    out: dict[int, DyadicSqrt2Scalar] = {}
    for r, val in vec.items():
        rp = PauliOperator.from_label(n, r)
        if rp.commutes_with(p):
            cur = out.get(r)
            out[r] = val if cur is None else cur + val
            continue
        prod = (p * rp).mul_i()
        s = prod.label
        sigma = (1 if prod.phase == 0 else -1) * sgn
        half = val.times_inv_sqrt2()
        cur = out.get(r)
        out[r] = half if cur is None else cur + half
        shalf = half if sigma > 0 else -half
        cur = out.get(s)
        out[s] = shalf if cur is None else cur + shalf
    return out


def exponential_transfer_is_signed_permutation(set_a: PauliSet,
                                               set_b: PauliSet) -> bool:
    """Whether channel(A)^T channel(B) is a signed permutation, for the
    exponential products A and B of two Pauli sets (identity Cliffords).

    Columns are evaluated lazily with an early exit, so no dense matrix is
    ever built; the product is orthogonal, so checking that every column
    is a signed unit vector is a complete test.
    """
    if set_a.n != set_b.n:
        raise ValueError(f"qubit counts differ: {set_a.n} vs {set_b.n}")
    n = set_a.n
    dim = 1 << (2 * n)
    for q in range(dim):
        col = {q: DYADIC_ONE}
        for p in reversed(set_b.elements):
            col = _sparse_apply_exponential(col, p, inverse=False)
        # channel(A)^T = transpose of exp factors applied in reverse order:
        # (E1...Em)^T = Em^T ... E1^T, and each transpose is the inverse
        # rotation
        for p in set_a.elements:
            col = _sparse_apply_exponential(col, p, inverse=True)
        support = [(r, v) for r, v in col.items() if not v.is_zero()]
        if len(support) != 1:
            return False
        v = support[0][1]
        if v != DYADIC_ONE and v != DYADIC_MINUS_ONE:
            return False
    return True
