"""Clifford group elements as stabilizer tableaux with exact signs.

A tableau stores the images of the generators X_1..X_n and Z_1..Z_n under
conjugation, each a Hermitian PauliOperator (phase 0 or 2).  Two unitaries
equal up to global phase give the same tableau, so tableau equality is
equality in the quotient group.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from . import gf2
from .pauli import PauliOperator, PauliSet, parse_pauli


class GateWordError(ValueError):
    pass


class BadTokenError(GateWordError):
    pass


class IndexOutOfRangeError(GateWordError):
    pass


class InvalidSetError(ValueError):
    pass


def group_order(n: int) -> int:
    """Number of tableaux on n qubits: 2^(n^2 + 2n) * prod_j (4^j - 1)."""
    assert n >= 1
    r = 1 << (n * n + 2 * n)
    for j in range(1, n + 1):
        r *= (1 << (2 * j)) - 1
    return r


class CliffordTableau:
    __slots__ = ("n", "xim", "zim")

    def __init__(self, n: int, xim: tuple, zim: tuple):
        # trusted constructor; go through from_images for validation
        self.n = n
        self.xim = xim
        self.zim = zim

    @classmethod
    def identity(cls, n: int) -> "CliffordTableau":
        assert n >= 1
        xim = tuple(PauliOperator.single(n, j, "X") for j in range(n))
        zim = tuple(PauliOperator.single(n, j, "Z") for j in range(n))
        return cls(n, xim, zim)

    @classmethod
    def from_images(cls, xim: Sequence[PauliOperator],
                    zim: Sequence[PauliOperator]) -> "CliffordTableau":
        """Validated constructor: images must satisfy the generator
        commutation pattern and be Hermitian."""
        n = len(xim)
        if len(zim) != n or n == 0:
            raise ValueError("need n X-images and n Z-images")
        imgs = list(xim) + list(zim)
        for p in imgs:
            if p.n != n:
                raise ValueError(f"qubit counts differ: {p.n} vs {n}")
            if not p.is_hermitian():
                raise ValueError(f"non-Hermitian image {p!r}")
        for i in range(2 * n):
            for j in range(i + 1, 2 * n):
                anti = (j == i + n)
                if imgs[i].commutes_with(imgs[j]) == anti:
                    raise ValueError("images do not satisfy the symplectic relations")
        return cls(n, tuple(xim), tuple(zim))

    def x_image(self, j: int) -> PauliOperator:
        return self.xim[j]

    def z_image(self, j: int) -> PauliOperator:
        return self.zim[j]

    def conjugate_pauli(self, p: PauliOperator) -> PauliOperator:
        """Image of p under conjugation, with the exact sign.

        Uses p = i^(phase + |x&z|) * prod_j X_j^{x_j} * prod_j Z_j^{z_j}
        and substitutes generator images factor by factor.
        """
        if p.n != self.n:
            raise ValueError(f"qubit counts differ: {p.n} vs {self.n}")
        n = self.n
        acc = PauliOperator(n, 0, 0, p.phase + (p.x & p.z).bit_count())
        x = p.x
        while x:
            low = x & -x
            x ^= low
            acc = acc * self.xim[n - low.bit_length()]
        z = p.z
        while z:
            low = z & -z
            z ^= low
            acc = acc * self.zim[n - low.bit_length()]
        return acc

    def compose(self, other: "CliffordTableau") -> "CliffordTableau":
        """Tableau of self times other (self applied after other)."""
        if self.n != other.n:
            raise ValueError(f"qubit counts differ: {self.n} vs {other.n}")
        xim = tuple(self.conjugate_pauli(p) for p in other.xim)
        zim = tuple(self.conjugate_pauli(p) for p in other.zim)
        return CliffordTableau(self.n, xim, zim)

    def inverse(self) -> "CliffordTableau":
        """Tableau of the inverse unitary.

        The unsigned part is the inverse of the symplectic bit matrix;
        each sign is then fixed so the round trip lands on +generator.
        """
        n = self.n
        dim = 2 * n
        rows = [0] * dim
        for j in range(n):
            rows[2 * n - 1 - j] = self.xim[j].label
            rows[n - 1 - j] = self.zim[j].label
        inv = gf2.invert(rows, dim)
        assert inv is not None
        mask = (1 << n) - 1

        def preimage(bit: int) -> PauliOperator:
            lab = inv[bit]
            cand = PauliOperator(n, lab >> n, lab & mask, 0)
            back = self.conjugate_pauli(cand)
            # back is +-(the generator for this bit); flip cand to make it +
            return cand if back.phase == 0 else -cand

        xim = tuple(preimage(2 * n - 1 - j) for j in range(n))
        zim = tuple(preimage(n - 1 - j) for j in range(n))
        return CliffordTableau(n, xim, zim)

    def is_z_diagonal(self) -> bool:
        """True when every Z_j maps to +Z_j (diagonal in the Z basis)."""
        return all(self.zim[j] == PauliOperator.single(self.n, j, "Z")
                   for j in range(self.n))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliffordTableau):
            return NotImplemented
        return self.n == other.n and self.xim == other.xim and self.zim == other.zim

    def __hash__(self):
        return hash((self.n, self.xim, self.zim))

    def to_strings(self) -> list[str]:
        """2n signed Pauli strings: X_1..X_n images then Z_1..Z_n images."""
        return [p.to_string() for p in self.xim + self.zim]

    @classmethod
    def from_strings(cls, strings: Iterable[str]) -> "CliffordTableau":
        imgs = [parse_pauli(s) for s in strings]
        if len(imgs) % 2:
            raise ValueError("need an even number of image strings")
        n = len(imgs) // 2
        return cls.from_images(imgs[:n], imgs[n:])

    def __repr__(self):
        return f"<CliffordTableau n={self.n} {self.to_strings()}>"


GATE_ARITY = {"H": 1, "S": 1, "X": 1, "Z": 1, "CX": 2, "CZ": 2, "SWAP": 2}


def _gate_tableau(name: str, qubits: tuple, n: int) -> CliffordTableau:
    t = CliffordTableau.identity(n)
    xim = list(t.xim)
    zim = list(t.zim)
    if name == "H":
        q = qubits[0]
        xim[q] = PauliOperator.single(n, q, "Z")
        zim[q] = PauliOperator.single(n, q, "X")
    elif name == "S":
        q = qubits[0]
        xim[q] = PauliOperator.single(n, q, "Y")
    elif name == "X":
        q = qubits[0]
        zim[q] = -zim[q]
    elif name == "Z":
        q = qubits[0]
        xim[q] = -xim[q]
    elif name == "CX":
        c, tq = qubits
        xim[c] = xim[c] * xim[tq]
        zim[tq] = zim[c] * zim[tq]
    elif name == "CZ":
        a, b = qubits
        xim[a] = xim[a] * zim[b]
        xim[b] = zim[a] * xim[b]
    elif name == "SWAP":
        a, b = qubits
        xim[a], xim[b] = xim[b], xim[a]
        zim[a], zim[b] = zim[b], zim[a]
    else:
        raise BadTokenError(f"unknown gate {name!r}")
    return CliffordTableau(n, tuple(xim), tuple(zim))


def parse_gate_word(text: str, n: int) -> list[tuple[str, tuple]]:
    """Tokenize a gate word: tokens split on ';' or newlines, each a gate
    name followed by qubit indices, e.g. "H 0; CX 0 1".  Empty text is the
    identity word."""
    tokens = []
    for raw in text.replace("\n", ";").split(";"):
        parts = raw.split()
        if not parts:
            continue
        name = parts[0].upper()
        if name not in GATE_ARITY:
            raise BadTokenError(f"unknown gate {parts[0]!r}")
        arity = GATE_ARITY[name]
        if len(parts) - 1 != arity:
            raise BadTokenError(f"gate {name} expects {arity} qubit(s): {raw.strip()!r}")
        try:
            qubits = tuple(int(p) for p in parts[1:])
        except ValueError:
            raise BadTokenError(f"bad qubit index in {raw.strip()!r}") from None
        for q in qubits:
            if not 0 <= q < n:
                raise IndexOutOfRangeError(f"qubit {q} out of range for n={n}")
        if arity == 2 and qubits[0] == qubits[1]:
            raise BadTokenError(f"repeated qubit in {raw.strip()!r}")
        tokens.append((name, qubits))
    return tokens


def from_gate_word(text: str, n: int) -> CliffordTableau:
    """Tableau of a gate word; the leftmost factor is applied last."""
    assert n >= 1
    c = CliffordTableau.identity(n)
    for name, qubits in reversed(parse_gate_word(text, n)):
        c = _gate_tableau(name, qubits, n).compose(c)
    return c


def _label_pauli(n: int, label: int) -> PauliOperator:
    return PauliOperator(n, label >> n, label & ((1 << n) - 1), 0)


def synthesize_mapping(s: PauliSet) -> CliffordTableau:
    """A Clifford carrying the k-th set element (sorted order) to +Z_k.

    Completes the set to a full symplectic basis with deterministic
    lowest-label pivots, inverts, and fixes the signs with X gates.
    """
    if not isinstance(s, PauliSet):
        raise InvalidSetError("expected a PauliSet")
    n = s.n
    m = len(s)
    if m > n:
        raise InvalidSetError("set larger than qubit count")
    dim = 1 << (2 * n)
    ps = list(s.labels)
    qs: list[int] = []
    for lab in ps:
        if not 0 < lab < dim:
            raise InvalidSetError(f"bad label {lab}")

    def first_label(anti_with: int, commute_with: list[int], exclude_span=None) -> int:
        # lowest label anticommuting with anti_with (0 means no such
        # constraint) and commuting with everything in commute_with
        for v in range(1, dim):
            if anti_with and not pauli_label_anticommutes(v, anti_with, n):
                continue
            if any(pauli_label_anticommutes(v, w, n) for w in commute_with):
                continue
            if exclude_span is not None and gf2.in_span(exclude_span, v):
                continue
            return v
        raise AssertionError("no symplectic completion found")

    # phase one: a destabilizer partner for each given element
    for k in range(m):
        others = [p for i, p in enumerate(ps) if i != k] + qs
        qs.append(first_label(ps[k], others))
    # phase two: complete the remaining symplectic pairs
    while len(ps) < n:
        chosen = ps + qs
        p_new = first_label(0, chosen, exclude_span=gf2.row_basis(chosen))
        ps.append(p_new)
        qs.append(first_label(p_new, chosen))

    inv_tab = CliffordTableau(
        n,
        tuple(_label_pauli(n, qs[k]) for k in range(n)),
        tuple(_label_pauli(n, ps[k]) for k in range(n)),
    )
    c = inv_tab.inverse()
    for k, p in enumerate(s.elements):
        img = c.conjugate_pauli(p)
        assert img.x == 0 and img.z == PauliOperator.single(n, k, "Z").z
        if img.phase == 2:
            c = _gate_tableau("X", (k,), n).compose(c)
    return c


def pauli_label_anticommutes(a: int, b: int, n: int) -> bool:
    mask = (1 << n) - 1
    return bool((((a >> n) & (b & mask)).bit_count()
                 ^ ((a & mask) & (b >> n)).bit_count()) & 1)


def random_clifford(n: int, seed=None) -> CliffordTableau:
    """Uniformly random tableau.

    Symplectic pairs are drawn one at a time: the j-th X-image uniformly
    from the nonzero vectors commuting with all earlier pairs, the j-th
    Z-image uniformly from the affine set anticommuting with it; all 2n
    signs are then independent fair bits.  The choice counts multiply to
    group_order(n), so the draw is exactly uniform.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    dim = 2 * n
    mask = (1 << n) - 1
    chosen: list[int] = []  # alternating p_1, q_1, p_2, q_2, ...

    def sample_solution(target: int | None) -> int:
        # constraints: commute with every chosen label, and if target is
        # given, anticommute with it
        eqs = [(_swap(lab), 0) for lab in chosen]
        if target is not None:
            eqs.append((_swap(target), 1))
        solved = gf2.solve_affine(eqs, dim)
        assert solved is not None
        part, basis = solved
        while True:
            v = part
            bits = rng.getrandbits(len(basis)) if basis else 0
            i = 0
            while bits:
                if bits & 1:
                    v ^= basis[i]
                bits >>= 1
                i += 1
            if target is not None or v:
                return v

    def _swap(label: int) -> int:
        return ((label & mask) << n) | (label >> n)

    pairs = []
    for _ in range(n):
        p = sample_solution(None)
        q = sample_solution(p)
        chosen.append(p)
        chosen.append(q)
        pairs.append((p, q))

    xim = []
    zim = []
    for p, q in pairs:
        xim.append(PauliOperator(n, p >> n, p & mask, 2 * rng.getrandbits(1)))
        zim.append(PauliOperator(n, q >> n, q & mask, 2 * rng.getrandbits(1)))
    return CliffordTableau(n, tuple(xim), tuple(zim))
