"""Canonical forms for circuits whose T gates sit in parallel layers.

A T-depth-one circuit C1 * (layer of T / Tdg gates) * C2 equals, up to
global phase, a product exp(i*pi*P_1/8) ... exp(i*pi*P_m/8) * C with the
P_j a commuting independent set of positive Paulis and C Clifford.  Up to
phase T is exp(-i*pi*Z/8) and Tdg is exp(+i*pi*Z/8); conjugating each
factor through the left Clifford and flipping any negative exponents with
the Clifford identity exp(-i*pi*P/8) = exp(-i*pi*P/4) * exp(i*pi*P/8)
yields the form constructively.  Deeper circuits get one set per layer by
the same sweep with an accumulated Clifford prefix.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import channel as channel_mod
from .channel import ChannelRep, _apply_clifford_left, _apply_exponential_left
from .clifford import CliffordTableau
from .pauli import PauliOperator, PauliSet, validate_set


class WidthMismatchError(ValueError):
    pass


class ParseError(ValueError):
    """Bad canonical-form or circuit text; position is a character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class TLayer:
    """One parallel layer of T and Tdg gates; at least one qubit is marked."""

    __slots__ = ("n", "t_qubits", "tdg_qubits")

    def __init__(self, n: int, t: Iterable[int] = (), tdg: Iterable[int] = ()):
        t_set = frozenset(t)
        tdg_set = frozenset(tdg)
        for q in t_set | tdg_set:
            if not 0 <= q < n:
                raise ValueError(f"qubit {q} out of range for n={n}")
        if t_set & tdg_set:
            raise ValueError(f"qubits marked both t and tdg: {sorted(t_set & tdg_set)}")
        if not (t_set or tdg_set):
            raise ValueError("a T layer needs at least one marked qubit")
        self.n = n
        self.t_qubits = t_set
        self.tdg_qubits = tdg_set

    @property
    def marked(self) -> list[tuple[int, bool]]:
        """(qubit, is_tdg) pairs, ascending by qubit."""
        out = [(q, False) for q in self.t_qubits]
        out += [(q, True) for q in self.tdg_qubits]
        out.sort()
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TLayer):
            return NotImplemented
        return (self.n == other.n and self.t_qubits == other.t_qubits
                and self.tdg_qubits == other.tdg_qubits)

    def __repr__(self):
        return (f"<TLayer n={self.n} t={sorted(self.t_qubits)} "
                f"tdg={sorted(self.tdg_qubits)}>")


class TLayerCircuit:
    """Alternating word C_0, L_1, C_1, ..., L_d, C_d of uniform width."""

    __slots__ = ("cliffords", "layers")

    def __init__(self, cliffords: Sequence[CliffordTableau],
                 layers: Sequence[TLayer]):
        cliffords = tuple(cliffords)
        layers = tuple(layers)
        if len(cliffords) != len(layers) + 1:
            raise ValueError("need exactly one more Clifford than T layers")
        n = cliffords[0].n
        for c in cliffords:
            if c.n != n:
                raise WidthMismatchError(f"Clifford width {c.n} != {n}")
        for l in layers:
            if l.n != n:
                raise WidthMismatchError(f"T layer width {l.n} != {n}")
        self.cliffords = cliffords
        self.layers = layers

    @property
    def n(self) -> int:
        return self.cliffords[0].n

    @property
    def depth(self) -> int:
        return len(self.layers)


class CanonicalForm:
    """A PauliSet of exponential factors and a trailing Clifford."""

    __slots__ = ("paulis", "clifford")

    def __init__(self, paulis: PauliSet, clifford: CliffordTableau):
        if paulis.n != clifford.n:
            raise WidthMismatchError(
                f"set width {paulis.n} != Clifford width {clifford.n}")
        self.paulis = paulis
        self.clifford = clifford

    @property
    def n(self) -> int:
        return self.clifford.n

    @property
    def m(self) -> int:
        return len(self.paulis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.paulis == other.paulis and self.clifford == other.clifford

    def __hash__(self):
        return hash((self.paulis, self.clifford))

    def render(self) -> str:
        """Text form "P: +ZZ | C: id"; an empty set renders as "-" and the
        Clifford as its 2n image strings unless it is the identity."""
        if len(self.paulis):
            left = ", ".join(p.to_string() for p in self.paulis)
        else:
            left = "-"
        if self.clifford == CliffordTableau.identity(self.n):
            right = "id"
        else:
            right = ", ".join(self.clifford.to_strings())
        return f"P: {left} | C: {right}"

    def __repr__(self):
        return f"<CanonicalForm {self.render()}>"


def equals(a: CanonicalForm, b: CanonicalForm) -> bool:
    """Exact equality of forms; the widths must agree."""
    if a.n != b.n:
        raise ValueError(f"qubit counts differ: {a.n} vs {b.n}")
    return a == b


def quarter_exponential_tableau(p: PauliOperator, sign: int = -1) -> CliffordTableau:
    """Tableau of the Clifford exp(sign * i*pi*P/4) for positive P.

    Conjugation fixes commuting Paulis and sends an anticommuting Q to
    sign * i * P * Q.
    """
    assert p.is_positive() and (p.x or p.z)
    assert sign in (1, -1)
    n = p.n
    extra = 1 if sign > 0 else 3  # multiply by +-i

    def image(g: PauliOperator) -> PauliOperator:
        if g.commutes_with(p):
            return g
        out = p * g
        return PauliOperator(n, out.x, out.z, out.phase + extra)

    xim = tuple(image(PauliOperator.single(n, j, "X")) for j in range(n))
    zim = tuple(image(PauliOperator.single(n, j, "Z")) for j in range(n))
    return CliffordTableau(n, xim, zim)


def _sweep(cliffords: Sequence[CliffordTableau],
           layers: Sequence[TLayer]) -> tuple[tuple[PauliSet, ...], CliffordTableau]:
    prefix = cliffords[0]
    n = prefix.n
    sets = []
    for layer, tail in zip(layers, cliffords[1:]):
        factors = []
        corrections = []
        for qubit, is_tdg in layer.marked:
            # T contributes exp(-i*pi*Z/8), Tdg exp(+i*pi*Z/8), up to phase
            exponent_sign = 1 if is_tdg else -1
            image = prefix.conjugate_pauli(PauliOperator.single(n, qubit, "Z"))
            effective = exponent_sign * image.sign()
            base = image.positive()
            factors.append(base)
            if effective < 0:
                corrections.append(base)
        sets.append(validate_set(factors))
        for base in corrections:
            prefix = quarter_exponential_tableau(base, sign=-1).compose(prefix)
        prefix = prefix.compose(tail)
    return tuple(sets), prefix


def canonicalize_depth_one(c1: CliffordTableau, layer: TLayer,
                           c2: CliffordTableau) -> CanonicalForm:
    """Canonical form of C1 * layer * C2, exact up to global phase."""
    if not (c1.n == layer.n == c2.n):
        raise WidthMismatchError(
            f"widths differ: {c1.n}, {layer.n}, {c2.n}")
    sets, tail = _sweep((c1, c2), (layer,))
    return CanonicalForm(sets[0], tail)


def canonicalize_depth_d(circ: TLayerCircuit) -> tuple[tuple[PauliSet, ...], CliffordTableau]:
    """One Pauli set per layer plus a trailing Clifford.

    Each layer's Z factors are conjugated through the accumulated prefix
    (initial Cliffords and any sign-flip corrections absorbed so far), so
    the result multiplies back to the input up to global phase.
    """
    return _sweep(circ.cliffords, circ.layers)


def channel_of_decomposition(sets: Sequence[PauliSet],
                             tail: CliffordTableau) -> ChannelRep:
    """Channel of (exp factors of set 1) ... (exp factors of set d) * tail,
    the product canonicalize_depth_d decomposes a circuit into."""
    rows = channel_mod.channel_of_clifford(tail).rows
    for s in reversed(list(sets)):
        for p in reversed(list(s)):
            _apply_exponential_left(rows, p, inverse=False)
    return ChannelRep(tail.n, rows)


def channel_of_circuit(circ: TLayerCircuit) -> ChannelRep:
    """Exact channel of the alternating word, built right to left."""
    n = circ.n
    rows = channel_mod.channel_of_clifford(circ.cliffords[-1]).rows
    for k in range(circ.depth - 1, -1, -1):
        layer = circ.layers[k]
        for qubit, is_tdg in layer.marked:
            z = PauliOperator.single(n, qubit, "Z")
            _apply_exponential_left(rows, z, inverse=not is_tdg)
        rows = _apply_clifford_left(rows, circ.cliffords[k])
    return ChannelRep(n, rows)


def _split_top(text: str):
    bar = text.find("|")
    if bar < 0:
        raise ParseError("missing '|' separator", len(text))
    left = text[:bar]
    right = text[bar + 1:]
    lp = left.find("P:")
    if lp < 0:
        raise ParseError("missing 'P:' section", 0)
    rp = right.find("C:")
    if rp < 0:
        raise ParseError("missing 'C:' section", bar + 1)
    return left[lp + 2:], lp + 2, right[rp + 2:], bar + 1 + rp + 2


def parse_form(text: str) -> CanonicalForm:
    """Inverse of CanonicalForm.render; raises ParseError with an offset."""
    from .pauli import parse_pauli

    set_text, set_off, cl_text, cl_off = _split_top(text)
    body = set_text.strip()
    if body == "-" or body == "":
        elems = []
    else:
        elems = []
        pos = 0
        for piece in set_text.split(","):
            stripped = piece.strip()
            at = set_off + pos + piece.find(stripped[:1]) if stripped else set_off + pos
            if not stripped:
                raise ParseError("empty set element", at)
            try:
                elems.append(parse_pauli(stripped))
            except ValueError as e:
                raise ParseError(str(e), at) from None
            pos += len(piece) + 1
    cl_body = cl_text.strip()
    if cl_body == "id":
        if not elems:
            raise ParseError("cannot infer width of an identity Clifford "
                             "from an empty set", cl_off)
        tableau = CliffordTableau.identity(elems[0].n)
    else:
        strings = [s.strip() for s in cl_text.split(",")]
        try:
            tableau = CliffordTableau.from_strings(strings)
        except ValueError as e:
            raise ParseError(str(e), cl_off) from None
    if elems:
        try:
            pset = validate_set(elems)
        except ValueError as e:
            raise ParseError(str(e), set_off) from None
    else:
        pset = PauliSet.empty(tableau.n)
    try:
        return CanonicalForm(pset, tableau)
    except WidthMismatchError as e:
        raise ParseError(str(e), set_off) from None


def parse_circuit(text: str, n: int | None = None) -> TLayerCircuit:
    """Parse the line-oriented circuit format.

    Lines (after stripping '#' comments) alternate strictly:

        QUBITS: 2            optional first line; otherwise the width is
                             inferred from the largest index used
        CLIFFORD: H 0; CX 0 1
        TLAYER: t=0 tdg=1
        CLIFFORD:

    The word starts and ends with a CLIFFORD line; an empty gate word is
    the identity.
    """
    from .clifford import from_gate_word

    entries = []  # (kind, payload, offset)
    declared = n
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        at = offset + line.find(stripped[:1]) if stripped else offset
        offset += len(raw)
        if not stripped:
            continue
        if stripped.upper().startswith("QUBITS:"):
            if entries:
                raise ParseError("QUBITS must come first", at)
            try:
                declared = int(stripped.split(":", 1)[1])
            except ValueError:
                raise ParseError("bad QUBITS value", at) from None
            continue
        if stripped.upper().startswith("CLIFFORD:"):
            entries.append(("c", stripped.split(":", 1)[1], at))
        elif stripped.upper().startswith("TLAYER:"):
            entries.append(("t", stripped.split(":", 1)[1], at))
        else:
            raise ParseError(f"unrecognized line {stripped!r}", at)
    if not entries:
        raise ParseError("empty circuit", 0)
    kinds = [k for k, _, _ in entries]
    if kinds[0] != "c" or kinds[-1] != "c":
        raise ParseError("circuit must start and end with CLIFFORD lines",
                         entries[0][2] if kinds[0] != "c" else entries[-1][2])
    for i in range(1, len(kinds)):
        if kinds[i] == kinds[i - 1]:
            raise ParseError("CLIFFORD and TLAYER lines must alternate",
                             entries[i][2])

    if declared is None:
        declared = _infer_width(entries)

    cliffords = []
    layers = []
    for kind, payload, at in entries:
        if kind == "c":
            try:
                cliffords.append(from_gate_word(payload, declared))
            except ValueError as e:
                raise ParseError(str(e), at) from None
        else:
            try:
                layers.append(_parse_tlayer(payload, declared))
            except ValueError as e:
                raise ParseError(str(e), at) from None
    return TLayerCircuit(cliffords, layers)


def _parse_tlayer(payload: str, n: int) -> TLayer:
    t: list[int] = []
    tdg: list[int] = []
    for item in payload.split():
        key, _, val = item.partition("=")
        key = key.lower()
        if key not in ("t", "tdg"):
            raise ValueError(f"bad T layer key {key!r}")
        qubits = [int(v) for v in val.split(",") if v.strip() != ""]
        (t if key == "t" else tdg).extend(qubits)
    return TLayer(n, t=t, tdg=tdg)


def _infer_width(entries) -> int:
    from .clifford import GATE_ARITY

    top = -1
    for kind, payload, _ in entries:
        if kind == "c":
            for tok in payload.replace("\n", ";").split(";"):
                parts = tok.split()
                if len(parts) > 1 and parts[0].upper() in GATE_ARITY:
                    for p in parts[1:]:
                        try:
                            top = max(top, int(p))
                        except ValueError:
                            pass
        else:
            for item in payload.split():
                _, _, val = item.partition("=")
                for v in val.split(","):
                    try:
                        top = max(top, int(v))
                    except ValueError:
                        pass
    if top < 0:
        raise ParseError("cannot infer width; add a QUBITS line", 0)
    return top + 1
