"""Signed n-qubit Pauli operators and commuting independent sets.

Encoding: an operator is i^phase * W_1 (x) ... (x) W_n where W_j is picked
by the qubit's (x, z) bit pair: (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y, with
the convention Y = i*X*Z.  x and z are packed into machine ints with qubit
0 at the highest bit of the n-bit field, so the unsigned label
(x << n) | z sorts the way the string form reads.
"""

from __future__ import annotations

from typing import Iterable

from . import gf2


class DependentSetError(ValueError):
    pass


class NonCommutingSetError(ValueError):
    pass


class NonHermitianInputError(ValueError):
    pass


_LETTER = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {v: k for k, v in _LETTER.items()}
_SIGN_OF_PHASE = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_PHASE_OF_SIGN = {v: k for k, v in _SIGN_OF_PHASE.items()}


class PauliOperator:
    """One signed Pauli; immutable.  phase is the exponent of i, mod 4."""

    __slots__ = ("n", "x", "z", "phase")

    def __init__(self, n: int, x: int, z: int, phase: int = 0):
        self.n = n
        self.x = x
        self.z = z
        self.phase = phase & 3

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        assert n >= 1
        return cls(n, 0, 0, 0)

    @classmethod
    def from_label(cls, n: int, label: int) -> "PauliOperator":
        assert 0 <= label < 1 << (2 * n)
        return cls(n, label >> n, label & ((1 << n) - 1), 0)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliOperator":
        """X, Y or Z on one qubit, identity elsewhere."""
        assert 0 <= qubit < n
        xb, zb = _BITS[letter]
        bit = 1 << (n - 1 - qubit)
        return cls(n, xb * bit, zb * bit, 0)

    @property
    def label(self) -> int:
        """Unsigned label (x << n) | z; ignores the phase."""
        return (self.x << self.n) | self.z

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0 and self.phase == 0

    def is_hermitian(self) -> bool:
        return not self.phase & 1

    def is_positive(self) -> bool:
        return self.phase == 0

    def sign(self) -> int:
        assert self.is_hermitian()
        return 1 if self.phase == 0 else -1

    def positive(self) -> "PauliOperator":
        return PauliOperator(self.n, self.x, self.z, 0)

    def __neg__(self) -> "PauliOperator":
        return PauliOperator(self.n, self.x, self.z, self.phase + 2)

    def mul_i(self) -> "PauliOperator":
        return PauliOperator(self.n, self.x, self.z, self.phase + 1)

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        if self.n != other.n:
            raise ValueError(f"qubit counts differ: {self.n} vs {other.n}")
        # write each factor as i^(phase + |x&z|) X^x Z^z, push X's left past
        # Z's picking up (-1)^(z1.x2), and convert back
        x1, z1, x2, z2 = self.x, self.z, other.x, other.z
        x, z = x1 ^ x2, z1 ^ z2
        t = (self.phase + other.phase
             + (x1 & z1).bit_count() + (x2 & z2).bit_count()
             + 2 * (z1 & x2).bit_count()
             - (x & z).bit_count())
        return PauliOperator(self.n, x, z, t)

    def commutes_with(self, other: "PauliOperator") -> bool:
        if self.n != other.n:
            raise ValueError(f"qubit counts differ: {self.n} vs {other.n}")
        return not (((self.x & other.z).bit_count()
                     ^ (self.z & other.x).bit_count()) & 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return (self.n == other.n and self.x == other.x
                and self.z == other.z and self.phase == other.phase)

    def __hash__(self):
        return hash((self.n, self.x, self.z, self.phase))

    def to_string(self) -> str:
        body = []
        for j in range(self.n):
            bit = 1 << (self.n - 1 - j)
            body.append(_LETTER[(1 if self.x & bit else 0, 1 if self.z & bit else 0)])
        return _SIGN_OF_PHASE[self.phase] + "".join(body)

    def __repr__(self):
        return f"<Pauli {self.to_string()}>"


def parse_pauli(text: str) -> PauliOperator:
    """Parse "+ZIZ" style text: optional +, -, +i, -i then I/X/Y/Z letters."""
    s = text.strip()
    phase = 0
    for prefix in ("+i", "-i", "+", "-"):
        if s.startswith(prefix):
            phase = _PHASE_OF_SIGN[prefix]
            s = s[len(prefix):]
            break
    if not s:
        raise ValueError(f"empty Pauli body in {text!r}")
    n = len(s)
    x = z = 0
    for ch in s:
        if ch not in _BITS:
            raise ValueError(f"bad Pauli letter {ch!r} in {text!r}")
        xb, zb = _BITS[ch]
        x = (x << 1) | xb
        z = (z << 1) | zb
    return PauliOperator(n, x, z, phase)


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    return p * q


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    return p.commutes_with(q)


def z_power(bits) -> PauliOperator:
    """Diagonal Pauli Z^a from a bit string "101" or a 0/1 sequence."""
    if isinstance(bits, str):
        vals = []
        for ch in bits:
            if ch not in "01":
                raise ValueError(f"bad bit {ch!r} in {bits!r}")
            vals.append(int(ch))
    else:
        vals = [int(bool(v)) for v in bits]
    if not vals:
        raise ValueError("empty bit string")
    z = 0
    for v in vals:
        z = (z << 1) | v
    return PauliOperator(len(vals), 0, z, 0)


def label_commutes(a: int, b: int, n: int) -> bool:
    """Symplectic test on unsigned labels, avoiding object construction."""
    mask = (1 << n) - 1
    return not ((((a >> n) & (b & mask)).bit_count()
                 ^ ((a & mask) & (b >> n)).bit_count()) & 1)


def _swap_halves(label: int, n: int) -> int:
    mask = (1 << n) - 1
    return ((label & mask) << n) | (label >> n)


class PauliSet:
    """Commuting, independent, positive Paulis sorted ascending by label.

    Construct through validate_set; the raw constructor trusts its input.
    The empty set is allowed here (a canonical form may carry no
    exponential factors) even though validate_set requires at least one
    candidate.
    """

    __slots__ = ("n", "elements")

    def __init__(self, n: int, elements: tuple):
        self.n = n
        self.elements = elements

    @classmethod
    def empty(cls, n: int) -> "PauliSet":
        return cls(n, ())

    @classmethod
    def from_labels(cls, n: int, labels) -> "PauliSet":
        """Fast trusted path used by the enumerator; labels must already be
        sorted, commuting and independent."""
        mask = (1 << n) - 1
        return cls(n, tuple(PauliOperator(n, l >> n, l & mask, 0) for l in labels))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def labels(self) -> tuple:
        return tuple(p.label for p in self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliSet):
            return NotImplemented
        return self.n == other.n and self.elements == other.elements

    def __hash__(self):
        return hash((self.n, self.elements))

    def __repr__(self):
        inner = ", ".join(p.to_string() for p in self.elements)
        return f"<PauliSet n={self.n} {{{inner}}}>"


def validate_set(candidates: Iterable[PauliOperator]) -> PauliSet:
    """Check and normalize a generating family.

    Accepts Hermitian inputs (signs are stripped; they belong to the
    Clifford part upstream), requires pairwise commutation and GF(2)
    independence, and returns the sorted positive set.
    """
    cands = list(candidates)
    if not cands:
        raise ValueError("empty candidate family")
    n = cands[0].n
    for p in cands:
        if p.n != n:
            raise ValueError(f"qubit counts differ: {p.n} vs {n}")
        if not p.is_hermitian():
            raise NonHermitianInputError(f"non-Hermitian candidate {p!r}")
    pos = [p.positive() for p in cands]
    for i in range(len(pos)):
        for j in range(i + 1, len(pos)):
            if not pos[i].commutes_with(pos[j]):
                raise NonCommutingSetError(
                    f"{pos[i]!r} and {pos[j]!r} anticommute")
    if gf2.rank(p.label for p in pos) != len(pos):
        raise DependentSetError("candidates are dependent over GF(2)")
    pos.sort(key=lambda p: p.label)
    return PauliSet(n, tuple(pos))


def commutant(s: PauliSet) -> list[int]:
    """Unsigned labels commuting with every set element, ascending.

    The result always has exactly 2^(2n - m) labels: the constraints are
    independent linear functionals on the 2n-dimensional label space.
    """
    n = s.n
    dim = 2 * n
    basis = gf2.nullspace((_swap_halves(p.label, n) for p in s.elements), dim)
    out = []
    for combo in range(1 << len(basis)):
        v = 0
        c = combo
        i = 0
        while c:
            if c & 1:
                v ^= basis[i]
            c >>= 1
            i += 1
        out.append(v)
    out.sort()
    return out
