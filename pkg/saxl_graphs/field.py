"""Finite fields GF(p^f) with table arithmetic.

An element is encoded by the integer Σ c_i p^i of its coefficient vector
over the polynomial basis 1, x, …, x^{f−1}. Multiplication goes through
exponent/logarithm tables with respect to a stored primitive element.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Iterator

from sympy import factorint, isprime, primitive_root

import saxl_graphs.exceptions as sx_e

logger = logging.getLogger(__name__)

ADDITION_TABLE_LIMIT = 256


class FiniteField:
    """GF(p^f).

    Attributes:
        p (int): Characteristic.
        f (int): Degree over the prime field.
        q (int): Field size p^f.
        modulus (tuple[int, ...]): Monic modulus coefficients c_0, …, c_f (c_f = 1); (−μ, 1) for prime fields.
        primitive_element (int): Code of the stored generator of the multiplicative group.
    """

    def __init__(self, p: int, f: int, modulus: tuple[int, ...], exp: list[int]):
        self.p = p
        self.f = f
        self.q = p**f
        self.modulus = modulus
        self._exp = exp
        self._log = [0] * self.q
        for i, a in enumerate(exp):
            self._log[a] = i
        self.primitive_element = exp[1] if self.q > 2 else 1
        self._add_table: list[list[int]] | None = None
        if self.q <= ADDITION_TABLE_LIMIT:
            self._add_table = [[self._add_digits(a, b) for b in range(self.q)] for a in range(self.q)]

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.f})" if self.f > 1 else f"GF({self.p})"

    def __len__(self) -> int:
        return self.q

    # ======================================================================
    # Encoding

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.f):
            a, c = divmod(a, self.p)
            out.append(c)
        return out

    def from_digits(self, digits: list[int]) -> int:
        code = 0
        for c in reversed(digits):
            code = code * self.p + (c % self.p)
        return code

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    def nonzero(self) -> Iterator[int]:
        return iter(range(1, self.q))

    def format(self, a: int) -> str:
        if self.f == 1:
            return str(a)
        terms = []
        for i, c in reversed(list(enumerate(self.digits(a)))):
            if not c:
                continue
            power = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coeff = "" if c == 1 and i > 0 else str(c)
            terms.append(f"{coeff}{power}")
        return "+".join(terms) or "0"

    # ======================================================================
    # Arithmetic

    def _add_digits(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def add(self, a: int, b: int) -> int:
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.from_digits([-c for c in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def exp(self, n: int) -> int:
        """μ^n for the stored primitive element μ."""
        return self._exp[n % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("log of 0")
        return self._log[a]

    def frobenius(self, a: int, times: int = 1) -> int:
        """a ↦ a^(p^times)."""
        if a == 0:
            return 0
        return self._exp[(self._log[a] * self.p**times) % (self.q - 1)]

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        order = self.q - 1
        for prime, multiplicity in factorint(self.q - 1).items():
            for _ in range(multiplicity):
                if self.power(a, order // prime) == 1:
                    order //= prime
                else:
                    break
        return order

    def is_square(self, a: int) -> bool:
        return a == 0 or self.p == 2 or self._log[a] % 2 == 0

    def subfield(self, f0: int) -> list[int]:
        """Elements of the subfield GF(p^f0), sorted by code.

        Raises:
            UnsupportedVariant: If f0 does not divide f.
        """
        if f0 < 1 or self.f % f0:
            raise sx_e.UnsupportedVariant(f"GF({self.p}^{f0}) is not a subfield of {self!r}")
        step = (self.q - 1) // (self.p**f0 - 1)
        return sorted({0} | {self._exp[i] for i in range(0, self.q - 1, step)})

    def additive_basis(self) -> list[int]:
        """The polynomial basis 1, x, …, x^{f−1} as codes."""
        return [self.p**i for i in range(self.f)]


def _times_x(code: int, p: int, f: int, tail: list[int]) -> int:
    digits = []
    for _ in range(f):
        code, c = divmod(code, p)
        digits.append(c)
    top = digits[-1]
    shifted = [0] + digits[:-1]
    out = 0
    for i in reversed(range(f)):
        out = out * p + (shifted[i] - top * tail[i]) % p
    return out


def _power_cycle(p: int, f: int, tail: list[int]) -> list[int] | None:
    """Powers 1, x, x², … modulo x^f + Σ tail[i] x^i, or None if x does not have order p^f − 1."""
    q = p**f
    powers = [1]
    seen = {1}
    current = 1
    for _ in range(q - 2):
        current = _times_x(current, p, f, tail)
        if current in seen or current == 0:
            return None
        seen.add(current)
        powers.append(current)
    if _times_x(current, p, f, tail) != 1:
        return None
    return powers


@lru_cache(maxsize=None)
def make_field(p: int, f: int = 1) -> FiniteField:
    """Build GF(p^f).

    For f > 1 the modulus is the least monic primitive polynomial of degree f,
    with coefficient vectors compared from c_{f−1} down to c_0, so x is the
    primitive element. For f = 1 the primitive element is the least
    primitive root.

    Raises:
        NotPrime: If p is not prime.
        UnsupportedVariant: If f < 1.
    """
    if not isprime(p):
        raise sx_e.NotPrime(f"{p} is not prime")
    if f < 1:
        raise sx_e.UnsupportedVariant(f"Field degree must be at least 1, got {f}")

    if f == 1:
        mu = 1 if p == 2 else int(primitive_root(p))
        exp = [1]
        for _ in range(p - 2):
            exp.append(exp[-1] * mu % p)
        field = FiniteField(p, 1, ((-mu) % p, 1), exp)
        logger.debug("Built %r with primitive element %d", field, mu)
        return field

    q = p**f
    for code in range(1, q):
        tail = []
        rest = code
        for _ in range(f):
            rest, c = divmod(rest, p)
            tail.append(c)
        if tail[0] == 0:
            continue
        powers = _power_cycle(p, f, tail)
        if powers is not None:
            field = FiniteField(p, f, tuple(tail) + (1,), powers)
            logger.debug("Built %r with modulus coefficients %s", field, field.modulus)
            return field
    raise sx_e.InvariantBreach(f"No primitive polynomial of degree {f} over GF({p})")


def field_of_order(q: int) -> FiniteField:
    """GF(q) for a prime power q.

    Raises:
        NotPrime: If q is not a prime power.
    """
    factors = factorint(q)
    if len(factors) != 1:
        raise sx_e.NotPrime(f"{q} is not a prime power")
    ((p, f),) = factors.items()
    return make_field(int(p), int(f))


Matrix = list[list[int]]


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(field: FiniteField, a: Matrix, b: Matrix) -> Matrix:
    n, m = len(a), len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        row = a[i]
        for j in range(m):
            acc = 0
            for k, a_ik in enumerate(row):
                if a_ik and b[k][j]:
                    acc = field.add(acc, field.mul(a_ik, b[k][j]))
            out[i][j] = acc
    return out


def vec_mat(field: FiniteField, v: list[int], a: Matrix) -> list[int]:
    """Row vector times matrix."""
    out = [0] * len(a[0])
    for k, v_k in enumerate(v):
        if not v_k:
            continue
        row = a[k]
        for j, a_kj in enumerate(row):
            if a_kj:
                out[j] = field.add(out[j], field.mul(v_k, a_kj))
    return out


def mat_inv(field: FiniteField, a: Matrix) -> Matrix:
    """Gauss–Jordan inverse.

    Raises:
        SingularMatrix: If the matrix is not invertible.
    """
    n = len(a)
    work = [list(row) + identity_matrix(n)[i] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise sx_e.SingularMatrix(f"Matrix {a} is singular over {field!r}")
        work[col], work[pivot] = work[pivot], work[col]
        scale = field.inv(work[col][col])
        work[col] = [field.mul(scale, x) for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [field.sub(x, field.mul(factor, y)) for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


def mat_det(field: FiniteField, a: Matrix) -> int:
    n = len(a)
    work = [list(row) for row in a]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = field.neg(det)
        det = field.mul(det, work[col][col])
        scale = field.inv(work[col][col])
        for r in range(col + 1, n):
            if work[r][col]:
                factor = field.mul(work[r][col], scale)
                work[r] = [field.sub(x, field.mul(factor, y)) for x, y in zip(work[r], work[col])]
    return det


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]
