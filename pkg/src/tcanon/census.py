"""Counting formulas, set enumeration, and lemma verification.

The number of T-depth-one unitaries on n qubits factors as g_n times the
Clifford group order, where g_n counts commuting independent sets of
positive Paulis:

    tuples(n, m)  = prod_{k=0}^{m-1} (2^{2n-k} - 2^k)
    sets(n, m)    = tuples(n, m) / m!
    g_n           = sum_{m=1}^{n} sets(n, m)

Enumeration walks label-ascending extensions with precomputed commutation
bitmasks, so the stream both reproduces the formula and feeds the lemma
checks: distinctness of forms, unit rows vs commutant, Pauli-support
growth under diagonal exponentials, spectral T-count, and agreement of
the structured channels with the dense-trace oracle.
"""

from __future__ import annotations

import math
import multiprocessing
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from . import gf2
from .canonical import CanonicalForm
from .channel import (channel_of_canonical, channel_of_clifford,
                      channel_of_exponential, infer_t_count,
                      exponential_transfer_is_signed_permutation)
from .clifford import (CliffordTableau, from_gate_word, group_order,
                       random_clifford)
from .oracle import (DenseUnitary, channel_bruteforce, dense_of_exponential,
                     dense_of_gate_word, dense_of_pauli, pauli_expand)
from .pauli import PauliOperator, PauliSet, commutant

DEFAULT_SEED = 1729


class FeasibilityRefusalError(ValueError):
    pass


def _check_nm(n: int, m: int) -> None:
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")


def count_tuples(n: int, m: int) -> int:
    """Ordered m-tuples of commuting independent positive Paulis."""
    _check_nm(n, m)
    out = 1
    for k in range(m):
        out *= (1 << (2 * n - k)) - (1 << k)
    return out


def count_sets(n: int, m: int) -> int:
    """Unordered sets; the tuple count is always divisible by m!."""
    tuples = count_tuples(n, m)
    fact = math.factorial(m)
    assert tuples % fact == 0
    return tuples // fact


def count_tdepth_one(n: int) -> tuple[int, int]:
    """(g_n, g_n * Clifford order): class count and unitary count."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    g = sum(count_sets(n, m) for m in range(1, n + 1))
    return g, g * group_order(n)


@dataclass(frozen=True)
class CensusRow:
    n: int
    m: int
    tuple_count: int
    set_count: int
    clifford_order: int
    unitary_count: int


def census_rows(n: int) -> list[CensusRow]:
    order = group_order(n)
    return [CensusRow(n, m, count_tuples(n, m), count_sets(n, m), order,
                      count_sets(n, m) * order)
            for m in range(1, n + 1)]


def emit_table(n_max: int) -> str:
    """TSV of per-size counts: Clifford order, per-T-count multipliers of
    the Clifford order, their sum, and the absolute unitary count."""
    if n_max < 1:
        raise ValueError(f"need n_max >= 1, got {n_max}")
    header = ["n", "clifford_order"]
    header += [f"tcount_{m}" for m in range(1, n_max + 1)]
    header += ["total_classes", "total_unitaries"]
    lines = ["\t".join(header)]
    for n in range(1, n_max + 1):
        g, total = count_tdepth_one(n)
        cells = [str(n), str(group_order(n))]
        cells += [str(count_sets(n, m)) for m in range(1, n + 1)]
        cells += ["-"] * (n_max - n)
        cells += [str(g), str(total)]
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- enumeration

_ENUM_CAP = 4


@lru_cache(maxsize=None)
def _commute_masks(n: int) -> tuple:
    """mask[a] has bit b set iff unsigned labels a, b commute."""
    dim = 1 << (2 * n)
    low = (1 << n) - 1
    xs = [l >> n for l in range(dim)]
    zs = [l & low for l in range(dim)]
    masks = []
    for a in range(dim):
        xa, za = xs[a], zs[a]
        m = 0
        for b in range(dim):
            anti = (bin(xa & zs[b]).count("1") + bin(za & xs[b]).count("1")) & 1
            if not anti:
                m |= 1 << b
        masks.append(m)
    return tuple(masks)


def _iter_label_tuples(n: int, m: int, first: int | None = None) -> Iterator[tuple]:
    """Strictly ascending label tuples, pairwise commuting, independent.

    Independence is tracked as a span bitmask over labels (the subgroup
    generated so far), so candidate filtering is pure bit arithmetic.
    """
    dim = 1 << (2 * n)
    full = (1 << dim) - 1
    cmask = _commute_masks(n)

    def above(label: int) -> int:
        return full & ~((1 << (label + 1)) - 1)

    def extend(chosen: list, allowed: int, span: int) -> Iterator[tuple]:
        want = m - len(chosen)
        if want == 1:
            a = allowed
            while a:
                low = a & -a
                a ^= low
                yield (*chosen, low.bit_length() - 1)
            return
        a = allowed
        while a:
            low = a & -a
            a ^= low
            b = low.bit_length() - 1
            new_span = span
            s = span
            while s:
                sl = s & -s
                s ^= sl
                new_span |= 1 << ((sl.bit_length() - 1) ^ b)
            child = allowed & cmask[b] & ~new_span & above(b)
            # a quick capacity cut: not enough labels left to finish
            if bin(child).count("1") >= want - 1:
                chosen.append(b)
                yield from extend(chosen, child, new_span)
                chosen.pop()

    if first is None:
        start = full & ~1  # skip the identity label
        yield from extend([], start, 1)
    else:
        new_span = 1 | (1 << first)
        child = cmask[first] & ~new_span & above(first)
        if m == 1:
            yield (first,)
        else:
            yield from extend([first], child, new_span)


def _enum_chunk(args: tuple) -> list:
    n, m, first = args
    return list(_iter_label_tuples(n, m, first))


def enumerate_sets(n: int, m: int, allow_large: bool = False,
                   workers: int = 1) -> Iterator[PauliSet]:
    """Every commuting independent positive m-set exactly once, in
    lexicographic label order; stream length equals count_sets(n, m).

    workers > 1 partitions on the first element's label; the merged
    stream order is identical to the single-worker order.
    """
    _check_nm(n, m)
    if n > _ENUM_CAP and not allow_large:
        raise FeasibilityRefusalError(
            f"enumeration capped at {_ENUM_CAP} qubits "
            f"({count_sets(n, m)} sets at n={n}, m={m}); "
            "pass allow_large=True to force")
    if workers <= 1:
        for labels in _iter_label_tuples(n, m):
            yield PauliSet.from_labels(n, labels)
        return
    dim = 1 << (2 * n)
    firsts = [(n, m, f) for f in range(1, dim)]
    with multiprocessing.Pool(workers) as pool:
        for chunk in pool.imap(_enum_chunk, firsts, chunksize=8):
            for labels in chunk:
                yield PauliSet.from_labels(n, labels)


# ------------------------------------------------------------------ sampling

def random_pauli_set(n: int, m: int, rng) -> PauliSet:
    """Uniform over commuting independent positive m-sets.

    Element k is uniform over (commutant of the prefix) minus its span;
    the choice counts multiply to count_tuples, so tuples are uniform and
    the sorted sets inherit uniformity.
    """
    _check_nm(n, m)
    dim = 2 * n
    chosen: list[int] = []
    span = 1
    while len(chosen) < m:
        basis = gf2.nullspace([_swap_halves(l, n) for l in chosen], dim)
        while True:
            v = 0
            for b in basis:
                if rng.getrandbits(1):
                    v ^= b
            if not (span >> v) & 1:
                break
        s = span
        while s:
            sl = s & -s
            s ^= sl
            span |= 1 << ((sl.bit_length() - 1) ^ v)
        chosen.append(v)
    return PauliSet.from_labels(n, sorted(chosen))


def _swap_halves(label: int, n: int) -> int:
    low = (1 << n) - 1
    return ((label & low) << n) | (label >> n)


_GATE_POOL = ("H", "S", "X", "Z", "CX", "CZ", "SWAP")


def random_gate_word(n: int, rng, length: int = 24) -> str:
    """A uniformly random word over the gate alphabet (not a uniform
    Clifford, but well scrambled; used where a dense matrix must be
    built from the same description)."""
    tokens = []
    pool = _GATE_POOL if n > 1 else _GATE_POOL[:4]
    for _ in range(length):
        name = pool[rng.randrange(len(pool))]
        if name in ("CX", "CZ", "SWAP"):
            a = rng.randrange(n)
            b = rng.randrange(n - 1)
            if b >= a:
                b += 1
            tokens.append(f"{name} {a} {b}")
        else:
            tokens.append(f"{name} {rng.randrange(n)}")
    return "; ".join(tokens)


# ------------------------------------------------------------------- reports

@dataclass
class VerificationReport:
    check: str
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    elapsed: float = 0.0
    seed: int | None = None
    mode: str | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "check": self.check,
            "passed": self.passed,
            "counts": dict(self.counts),
            "failures": list(self.failures),
            "seed": self.seed,
            "mode": self.mode,
            "elapsed_seconds": self.elapsed,
        }

    def summary(self) -> str:
        state = "pass" if self.passed else f"FAIL ({len(self.failures)})"
        counts = ", ".join(f"{k}={v}" for k, v in self.counts.items())
        return f"{self.check}: {state} [{counts}] in {self.elapsed:.2f}s"


def _all_sets(n: int) -> list[PauliSet]:
    out: list[PauliSet] = []
    for m in range(1, n + 1):
        out.extend(enumerate_sets(n, m))
    return out


def verify_distinctness(n: int, mode: str = "exhaustive", trials: int = 1000,
                        seed: int = DEFAULT_SEED) -> VerificationReport:
    """No two distinct sets of exponential factors differ by a Clifford.

    channel(A)^T channel(B) is a signed permutation iff some Cliffords
    reconcile the two forms, so the check never quantifies over the
    Clifford group.  Exhaustive mode also runs every self-pair, which
    must reconcile (by the identity), as a sanity arm on the tester.
    """
    t0 = time.perf_counter()
    report = VerificationReport("distinctness", mode=mode)
    if mode == "exhaustive":
        if n > 2:
            raise FeasibilityRefusalError(
                f"exhaustive distinctness needs n <= 2, got {n}")
        sets = _all_sets(n)
        pairs = 0
        for i in range(len(sets)):
            if not exponential_transfer_is_signed_permutation(sets[i], sets[i]):
                report.failures.append(
                    f"self-pair not reconciled: {sets[i]!r}")
            for j in range(i + 1, len(sets)):
                pairs += 1
                if exponential_transfer_is_signed_permutation(sets[i], sets[j]):
                    report.failures.append(
                        f"reconciled distinct pair: {sets[i]!r} vs {sets[j]!r}")
        report.counts = {"forms": len(sets), "pairs": pairs,
                         "self_pairs": len(sets)}
    elif mode == "sampled":
        if n > 4:
            raise FeasibilityRefusalError(
                f"sampled distinctness capped at 4 qubits, got {n}")
        import random as _random
        rng = _random.Random(seed)
        report.seed = seed
        pairs = 0
        while pairs < trials:
            a = random_pauli_set(n, rng.randint(1, n), rng)
            b = random_pauli_set(n, rng.randint(1, n), rng)
            if a == b:
                continue
            pairs += 1
            if exponential_transfer_is_signed_permutation(a, b):
                report.failures.append(
                    f"reconciled distinct pair: {a!r} vs {b!r}")
        report.counts = {"pairs": pairs}
    else:
        raise ValueError(f"unknown mode {mode!r}")
    report.elapsed = time.perf_counter() - t0
    return report


def verify_unit_rows(n: int, trials: int = 100,
                     seed: int = DEFAULT_SEED) -> VerificationReport:
    """Rows of a form's channel holding a +-1 entry = commutant of the set."""
    import random as _random
    t0 = time.perf_counter()
    rng = _random.Random(seed)
    report = VerificationReport("unit-rows", seed=seed)
    for trial in range(trials):
        m = 0 if trial == 0 else rng.randint(1, n)  # one m=0 edge case
        s = (PauliSet.empty(n) if m == 0
             else random_pauli_set(n, m, rng))
        c = random_clifford(n, rng)
        rep = channel_of_canonical(CanonicalForm(s, c))
        got = rep.unit_rows()
        want = commutant(s)
        if got != want:
            report.failures.append(
                f"unit rows {got} != commutant {want} for {s!r}")
        elif len(got) != 1 << (2 * n - m):
            report.failures.append(
                f"commutant size {len(got)} != 2^{2 * n - m} for {s!r}")
    report.counts = {"trials": trials}
    report.elapsed = time.perf_counter() - t0
    return report


def _independent_families(n: int, k_max: int) -> Iterator[tuple]:
    """Ascending tuples of linearly independent nonzero n-bit strings."""
    top = 1 << n

    def extend(chosen: list, span: int, start: int) -> Iterator[tuple]:
        if chosen:
            yield tuple(chosen)
        if len(chosen) == k_max:
            return
        for v in range(start, top):
            if (span >> v) & 1:
                continue
            new_span = span
            s = span
            while s:
                sl = s & -s
                s ^= sl
                new_span |= 1 << ((sl.bit_length() - 1) ^ v)
            chosen.append(v)
            yield from extend(chosen, new_span, v + 1)
            chosen.pop()

    yield from extend([], 1, 1)


def verify_hamming_weight(n: int, k_max: int = 3,
                          allow_large: bool = False) -> VerificationReport:
    """Pauli support of E X_j E' is exactly 2^w.

    E is the product of exp(i*pi*Z^a/8) over an independent family of
    bit-strings and w counts the family members with bit j set.  Runs the
    dense oracle exhaustively over every family of size <= k_max.
    """
    if n > 3 and not allow_large:
        raise FeasibilityRefusalError(
            f"dense Hamming-weight sweep capped at 3 qubits, got {n}")
    t0 = time.perf_counter()
    report = VerificationReport("hamming-weight")
    families = 0
    instances = 0
    for family in _independent_families(n, min(k_max, n)):
        families += 1
        e = DenseUnitary.identity(n)
        for a in family:
            p = PauliOperator(n, 0, a, 0)
            e = e.multiply(dense_of_exponential(p, 1, allow_large=True))
        ed = e.dagger()
        for j in range(n):
            instances += 1
            xj = dense_of_pauli(PauliOperator.single(n, j, "X"),
                                allow_large=True)
            m_mat = e.multiply(xj).multiply(ed)
            support = len(pauli_expand(m_mat))
            bit = 1 << (n - 1 - j)
            w = sum(1 for a in family if a & bit)
            if support != 1 << w:
                report.failures.append(
                    f"support {support} != 2^{w} for family "
                    f"{[bin(a) for a in family]}, qubit {j}")
    report.counts = {"families": families, "instances": instances}
    report.elapsed = time.perf_counter() - t0
    return report


def verify_spectrum(n: int, mode: str = "exhaustive", trials: int = 500,
                    seed: int = DEFAULT_SEED) -> VerificationReport:
    """infer_t_count reads m back off the channel of every form."""
    t0 = time.perf_counter()
    report = VerificationReport("spectrum", mode=mode)
    checked = 0
    if mode == "exhaustive":
        if n > 2:
            raise FeasibilityRefusalError(
                f"exhaustive spectrum needs n <= 2, got {n}")
        ident = CliffordTableau.identity(n)
        for m in range(1, n + 1):
            for s in enumerate_sets(n, m):
                checked += 1
                got = infer_t_count(channel_of_canonical(CanonicalForm(s, ident)))
                if got != m:
                    report.failures.append(f"t-count {got} != {m} for {s!r}")
    elif mode == "sampled":
        if n > 4:
            raise FeasibilityRefusalError(
                f"sampled spectrum capped at 4 qubits, got {n}")
        import random as _random
        rng = _random.Random(seed)
        report.seed = seed
        for _ in range(trials):
            m = rng.randint(1, n)
            s = random_pauli_set(n, m, rng)
            c = random_clifford(n, rng)
            checked += 1
            got = infer_t_count(channel_of_canonical(CanonicalForm(s, c)))
            if got != m:
                report.failures.append(f"t-count {got} != {m} for {s!r}")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    report.counts = {"forms": checked}
    report.elapsed = time.perf_counter() - t0
    return report


def _generator_words(n: int) -> list[str]:
    words = []
    for q in range(n):
        words += [f"H {q}", f"S {q}", f"X {q}", f"Z {q}"]
    for a in range(n):
        for b in range(n):
            if a != b:
                words.append(f"CX {a} {b}")
    for a in range(n):
        for b in range(a + 1, n):
            words += [f"CZ {a} {b}", f"SWAP {a} {b}"]
    return words


def verify_oracle(n: int, trials: int = 100,
                  seed: int = DEFAULT_SEED) -> VerificationReport:
    """Structured channels match dense-trace channels exactly.

    Covers every gate generator, every single-Pauli exponential, and
    random forms whose Clifford part is built twice from one gate word
    (tableau path vs dense path).
    """
    if n > 3:
        raise FeasibilityRefusalError(
            f"oracle agreement capped at 3 qubits, got {n}")
    import random as _random
    t0 = time.perf_counter()
    rng = _random.Random(seed)
    report = VerificationReport("oracle", seed=seed)
    generators = 0
    for word in _generator_words(n):
        generators += 1
        structured = channel_of_clifford(from_gate_word(word, n))
        brute = channel_bruteforce(dense_of_gate_word(word, n))
        if structured != brute:
            report.failures.append(f"gate {word!r} channel mismatch")
    for label in range(1, 1 << (2 * n)):
        generators += 1
        p = PauliOperator.from_label(n, label)
        structured = channel_of_exponential(p)
        brute = channel_bruteforce(dense_of_exponential(p, 1))
        if structured != brute:
            report.failures.append(f"exponential {p!r} channel mismatch")
    for _ in range(trials):
        m = rng.randint(1, n)
        s = random_pauli_set(n, m, rng)
        word = random_gate_word(n, rng)
        tableau = from_gate_word(word, n)
        structured = channel_of_canonical(CanonicalForm(s, tableau))
        dense = dense_of_gate_word(word, n)
        for p in reversed(s.elements):
            dense = dense_of_exponential(p, 1).multiply(dense)
        brute = channel_bruteforce(dense)
        if structured != brute:
            report.failures.append(
                f"form ({s!r}, word {word!r}) channel mismatch")
    report.counts = {"generators": generators, "forms": trials}
    report.elapsed = time.perf_counter() - t0
    return report


def growth_check(n_max: int = 16) -> VerificationReport:
    """g_n >= 2^(n^2) for n up to n_max, by big-integer comparison."""
    if n_max > 64:
        raise ValueError(f"growth check capped at 64 qubits, got {n_max}")
    t0 = time.perf_counter()
    report = VerificationReport("growth")
    for n in range(1, n_max + 1):
        g, _ = count_tdepth_one(n)
        if g < 1 << (n * n):
            report.failures.append(f"g_{n} = {g} < 2^{n * n}")
    report.counts = {"max_qubits": n_max}
    report.elapsed = time.perf_counter() - t0
    return report
