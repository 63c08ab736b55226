"""GF(2) linear algebra on int-encoded bit vectors.

A vector is a Python int; bit i is coordinate i.  A matrix is a list of
row ints, and the image of v is the XOR of the rows selected by the set
bits of v (row-vector convention).
"""

from __future__ import annotations


def dot(u: int, v: int) -> int:
    """Inner product of two bit vectors, in {0, 1}."""
    return (u & v).bit_count() & 1


def pivot_bit(v: int) -> int:
    # highest set bit; v must be nonzero
    return v.bit_length() - 1


def reduce_vector(basis: list[int], v: int) -> int:
    """Reduce v against an echelon basis; 0 means v lies in the span."""
    for b in basis:
        if (v >> pivot_bit(b)) & 1:
            v ^= b
    return v


def row_basis(vectors) -> list[int]:
    """Echelon basis (descending pivots) of the span of the inputs."""
    basis: list[int] = []
    for v in vectors:
        v = reduce_vector(basis, v)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def rank(vectors) -> int:
    return len(row_basis(vectors))


def in_span(basis: list[int], v: int) -> bool:
    return reduce_vector(basis, v) == 0


def solve_affine(equations, dim: int):
    """Solve the system dot(v, u_i) = b_i over GF(2).

    equations is an iterable of (u_i, b_i) pairs.  Returns a pair
    (particular, nullspace_basis), or None when inconsistent.  The full
    solution set is particular XOR any combination of basis vectors.
    """
    pivots: dict[int, tuple[int, int]] = {}
    for vec, rhs in equations:
        for p, (pvec, prhs) in pivots.items():
            if (vec >> p) & 1:
                vec ^= pvec
                rhs ^= prhs
        if vec == 0:
            if rhs:
                return None
            continue
        p = pivot_bit(vec)
        # keep rows mutually reduced so every pivot column is exclusive
        for q in list(pivots):
            qvec, qrhs = pivots[q]
            if (qvec >> p) & 1:
                pivots[q] = (qvec ^ vec, qrhs ^ rhs)
        pivots[p] = (vec, rhs)
    particular = 0
    for p, (_vec, rhs) in pivots.items():
        if rhs:
            particular |= 1 << p
    basis = []
    for f in range(dim):
        if f in pivots:
            continue
        v = 1 << f
        for p, (pvec, _rhs) in pivots.items():
            if (pvec >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return particular, basis


def nullspace(vectors, dim: int) -> list[int]:
    """Basis of {v : dot(v, u) = 0 for every u in vectors}."""
    solved = solve_affine(((u, 0) for u in vectors), dim)
    assert solved is not None
    return solved[1]


def invert(rows: list[int], dim: int):
    """Inverse of a square bit matrix in row convention, or None if singular."""
    work = [(rows[i], 1 << i) for i in range(dim)]
    pivots: dict[int, tuple[int, int]] = {}
    for vec, img in work:
        for p, (pvec, pimg) in pivots.items():
            if (vec >> p) & 1:
                vec ^= pvec
                img ^= pimg
        if vec == 0:
            return None
        p = pivot_bit(vec)
        for q in list(pivots):
            qvec, qimg = pivots[q]
            if (qvec >> p) & 1:
                pivots[q] = (qvec ^ vec, qimg ^ img)
        pivots[p] = (vec, img)
    # after full reduction each pivot row is a unit vector
    out = [0] * dim
    for p, (vec, img) in pivots.items():
        assert vec == 1 << p
        out[p] = img
    return out
