"""Exact scalar arithmetic underneath every matrix in this package.

Two rings cover all values that ever appear:

* ``DyadicSqrt2Scalar`` holds real numbers (a + b*sqrt2) / 2^k with integer
  a, b and k >= 0.  Channel (Pauli-transfer) matrices have all entries here,
  so orthogonality, spectra and signed-permutation tests are exact.

* ``Cyclotomic16Scalar`` holds sums of powers of zeta = exp(i*pi/8), a
  primitive 16th root of unity (zeta^8 = -1), divided by 2^k.  Dense gate
  matrices and the exponentials exp(i*pi*P/8) live here; sqrt2 embeds as
  zeta^2 - zeta^6.

There is no floating point anywhere in the arithmetic.  ``to_float`` and
``to_complex`` exist for display only and never feed back into results.
"""

from __future__ import annotations

import math


class DyadicSqrt2Scalar:
    """(a + b*sqrt2) / 2^k, normalized so k = 0 or a, b are not both even.

    Zero is the unique triple (0, 0, 0).  Instances are immutable value
    objects; all operations return new instances.
    """

    __slots__ = ("a", "b", "k")

    def __init__(self, a: int, b: int = 0, k: int = 0):
        if k < 0:
            a <<= -k
            b <<= -k
            k = 0
        while k and not ((a | b) & 1):
            a >>= 1
            b >>= 1
            k -= 1
        self.a = a
        self.b = b
        self.k = k

    def __add__(self, other: "DyadicSqrt2Scalar") -> "DyadicSqrt2Scalar":
        ka, kb = self.k, other.k
        if ka >= kb:
            s = ka - kb
            return DyadicSqrt2Scalar(self.a + (other.a << s), self.b + (other.b << s), ka)
        s = kb - ka
        return DyadicSqrt2Scalar((self.a << s) + other.a, (self.b << s) + other.b, kb)

    def __neg__(self) -> "DyadicSqrt2Scalar":
        return DyadicSqrt2Scalar(-self.a, -self.b, self.k)

    def __sub__(self, other: "DyadicSqrt2Scalar") -> "DyadicSqrt2Scalar":
        return self + (-other)

    def __mul__(self, other: "DyadicSqrt2Scalar") -> "DyadicSqrt2Scalar":
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return DyadicSqrt2Scalar(a1 * a2 + 2 * b1 * b2, a1 * b2 + b1 * a2, self.k + other.k)

    def conjugate(self) -> "DyadicSqrt2Scalar":
        """Complex conjugation; the identity on this real ring."""
        return self

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        """Sign of the real value, decided by integer arithmetic only."""
        a, b = self.a, self.b
        if a == 0 and b == 0:
            return 0
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        # mixed signs: compare a^2 against 2*b^2 (sqrt2 is irrational, so
        # equality with nonzero parts cannot happen)
        lhs, rhs = a * a, 2 * b * b
        assert lhs != rhs
        if a > 0:
            return 1 if lhs > rhs else -1
        return -1 if lhs > rhs else 1

    def __abs__(self) -> "DyadicSqrt2Scalar":
        return -self if self.sign() < 0 else self

    def times_inv_sqrt2(self) -> "DyadicSqrt2Scalar":
        """Divide by sqrt2 exactly: (a + b*sqrt2)/2^k -> (2b + a*sqrt2)/2^(k+1)."""
        return DyadicSqrt2Scalar(2 * self.b, self.a, self.k + 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DyadicSqrt2Scalar):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.k == other.k

    def __hash__(self):
        return hash((self.a, self.b, self.k))

    def __lt__(self, other: "DyadicSqrt2Scalar") -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: "DyadicSqrt2Scalar") -> bool:
        return (self - other).sign() <= 0

    def to_float(self) -> float:
        return (self.a + self.b * math.sqrt(2.0)) / (1 << self.k)

    def render(self) -> str:
        """Exact text form, e.g. "1", "-sqrt2", "(1 + sqrt2)/2", "3/2^2"."""
        a, b, k = self.a, self.b, self.k
        if a == 0 and b == 0:
            return "0"
        terms = []
        if a != 0:
            terms.append(str(a))
        if b != 0:
            if b == 1:
                root = "sqrt2"
            elif b == -1:
                root = "-sqrt2"
            else:
                root = f"{b}*sqrt2"
            if terms and b > 0:
                terms.append(f"+ {root}")
            elif terms:
                terms.append(f"- {root.lstrip('-')}")
            else:
                terms.append(root)
        body = " ".join(terms)
        if k == 0:
            return body
        den = "2" if k == 1 else f"2^{k}"
        if len(terms) > 1:
            return f"({body})/{den}"
        return f"{body}/{den}"

    def __repr__(self):
        return f"DyadicSqrt2Scalar({self.a}, {self.b}, {self.k})"

    def __str__(self):
        return self.render()


DYADIC_ZERO = DyadicSqrt2Scalar(0)
DYADIC_ONE = DyadicSqrt2Scalar(1)
DYADIC_MINUS_ONE = DyadicSqrt2Scalar(-1)
DYADIC_SQRT2 = DyadicSqrt2Scalar(0, 1)
DYADIC_INV_SQRT2 = DyadicSqrt2Scalar(0, 1, 1)


def compare_real(x: DyadicSqrt2Scalar, y: DyadicSqrt2Scalar) -> int:
    """Total order on the ring: -1, 0 or +1 as x <, ==, > y."""
    return (x - y).sign()


class Cyclotomic16Scalar:
    """sum_j c_j * zeta^j / 2^k with zeta = exp(i*pi/8), zeta^8 = -1.

    Coefficients are an 8-tuple of integers; k = 0 or not all c_j even.
    """

    __slots__ = ("c", "k")

    def __init__(self, c, k: int = 0):
        c = list(c)
        assert len(c) == 8
        if k < 0:
            c = [v << -k for v in c]
            k = 0
        acc = 0
        for v in c:
            acc |= v
        while k and not (acc & 1):
            c = [v >> 1 for v in c]
            acc >>= 1
            k -= 1
        self.c = tuple(c)
        self.k = k

    @classmethod
    def from_int(cls, v: int) -> "Cyclotomic16Scalar":
        return cls((v, 0, 0, 0, 0, 0, 0, 0))

    @classmethod
    def zeta_power(cls, j: int) -> "Cyclotomic16Scalar":
        """zeta^j for any integer j, reduced via zeta^8 = -1."""
        j %= 16
        c = [0] * 8
        if j < 8:
            c[j] = 1
        else:
            c[j - 8] = -1
        return cls(c)

    def __add__(self, other: "Cyclotomic16Scalar") -> "Cyclotomic16Scalar":
        ka, kb = self.k, other.k
        if ka >= kb:
            s = ka - kb
            return Cyclotomic16Scalar(
                [x + (y << s) for x, y in zip(self.c, other.c)], ka)
        s = kb - ka
        return Cyclotomic16Scalar(
            [(x << s) + y for x, y in zip(self.c, other.c)], kb)

    def __neg__(self) -> "Cyclotomic16Scalar":
        return Cyclotomic16Scalar([-v for v in self.c], self.k)

    def __sub__(self, other: "Cyclotomic16Scalar") -> "Cyclotomic16Scalar":
        return self + (-other)

    def __mul__(self, other: "Cyclotomic16Scalar") -> "Cyclotomic16Scalar":
        out = [0] * 8
        cb = other.c
        for i, ai in enumerate(self.c):
            if not ai:
                continue
            for j, bj in enumerate(cb):
                if not bj:
                    continue
                idx = i + j
                if idx >= 8:
                    out[idx - 8] -= ai * bj
                else:
                    out[idx] += ai * bj
        return Cyclotomic16Scalar(out, self.k + other.k)

    def conjugate(self) -> "Cyclotomic16Scalar":
        # zeta^j -> zeta^(-j) = -zeta^(8-j) for j >= 1; zeta^0 is fixed
        c = self.c
        return Cyclotomic16Scalar(
            (c[0], -c[7], -c[6], -c[5], -c[4], -c[3], -c[2], -c[1]), self.k)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.c)

    def is_real(self) -> bool:
        return self == self.conjugate()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cyclotomic16Scalar):
            return NotImplemented
        return self.c == other.c and self.k == other.k

    def __hash__(self):
        return hash((self.c, self.k))

    def to_dyadic(self) -> DyadicSqrt2Scalar:
        """Inverse of the sqrt2 embedding.

        Real elements of the form (a + b*(zeta^2 - zeta^6))/2^k convert;
        anything else (imaginary parts, or real values outside the dyadic
        sqrt2 ring such as 2*cos(pi/8)) raises ValueError.
        """
        c = self.c
        if c[4] != 0 or c[1] or c[3] or c[5] or c[7]:
            raise ValueError(f"not in the dyadic sqrt2 ring: {self!r}")
        if c[6] != -c[2]:
            raise ValueError(f"not in the dyadic sqrt2 ring: {self!r}")
        return DyadicSqrt2Scalar(c[0], c[2], self.k)

    def to_complex(self) -> complex:
        z = complex(0.0)
        for j, v in enumerate(self.c):
            if v:
                z += v * complex(math.cos(j * math.pi / 8), math.sin(j * math.pi / 8))
        return z / (1 << self.k)

    def __repr__(self):
        return f"Cyclotomic16Scalar({self.c}, {self.k})"


CYC_ZERO = Cyclotomic16Scalar.from_int(0)
CYC_ONE = Cyclotomic16Scalar.from_int(1)
CYC_I = Cyclotomic16Scalar.zeta_power(4)
# sqrt2 = zeta^2 - zeta^6, hence 1/sqrt2 = (zeta^2 - zeta^6)/2
CYC_SQRT2 = Cyclotomic16Scalar((0, 0, 1, 0, 0, 0, -1, 0))
CYC_INV_SQRT2 = Cyclotomic16Scalar((0, 0, 1, 0, 0, 0, -1, 0), 1)


def embed_dyadic_in_cyclotomic(x: DyadicSqrt2Scalar) -> Cyclotomic16Scalar:
    """Ring embedding sending sqrt2 to zeta^2 - zeta^6."""
    return Cyclotomic16Scalar((x.a, 0, x.b, 0, 0, 0, -x.b, 0), x.k)
